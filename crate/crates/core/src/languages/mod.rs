//! Matrix languages over a Dyck automaton.
//!
//! Entry `(p, q)` of a language matrix is a set of words labeling admissible
//! paths from `p` to `q`: Dyck words (`D`), prime Dyck words (`C`), single
//! call or return letters (`Mc`, `Mr`) and the composites built from them.
//! The series forms live in [`matrices`] (path-counting recurrences) and
//! [`classes`] (words grouped by their membership pattern); this module holds
//! the word-level membership oracle and the enumerator used to test both.

mod circularity;
mod classes;
mod matrices;
mod pairset;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automaton::{DyckAutomaton, RunConfiguration};
use crate::series::SeriesError;
use crate::words::{is_dyck, is_prime_dyck, Letter, LetterClass, PushdownAlphabet, Word};

pub use circularity::{circularity_check, circularity_check_words, CircularityReport, CircularityWitness};
pub use classes::{
    pattern_counts, pattern_counts_by_enumeration, pattern_series, pattern_series_by_enumeration,
    pattern_series_limited, DEFAULT_MAX_TERMS,
};
pub use matrices::{dyck_and_prime_matrices, h_matrix, letter_matrix};
pub use pairset::{subsets, MembershipPattern, PairSet, MAX_STATES};

#[derive(Debug, Error)]
pub enum LanguageError {
    #[error("automaton has {0} states; pattern computations support at most {MAX_STATES}")]
    TooManyStates(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{kind} pattern series exceeded {limit} terms")]
    TermLimit { kind: HKind, limit: usize },
    #[error("total length {0} is too large for the circularity checker (at most 63)")]
    LengthTooLarge(usize),
}

/// The matrix languages: `C`, `D`, `M_c`, `M_r`, `C*M_c`, `M_r+C`, `M_c+C`, `M_rC*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HKind {
    C,
    D,
    Mc,
    Mr,
    CStarMc,
    MrPlusC,
    McPlusC,
    MrCStar,
}

impl HKind {
    pub const ALL: [HKind; 8] = [
        HKind::C,
        HKind::D,
        HKind::Mc,
        HKind::Mr,
        HKind::CStarMc,
        HKind::MrPlusC,
        HKind::McPlusC,
        HKind::MrCStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HKind::C => "C",
            HKind::D => "D",
            HKind::Mc => "Mc",
            HKind::Mr => "Mr",
            HKind::CStarMc => "CStarMc",
            HKind::MrPlusC => "MrPlusC",
            HKind::McPlusC => "McPlusC",
            HKind::MrCStar => "MrCStar",
        }
    }
}

impl fmt::Display for HKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown matrix kind `{0}` (expected one of C, D, Mc, Mr, CStarMc, MrPlusC, McPlusC, MrCStar)")]
pub struct ParseHKindError(String);

impl FromStr for HKind {
    type Err = ParseHKindError;

    /// Accepts the canonical names case-insensitively, plus `C*Mc`, `Mr+C`, `C+Mr`, `Mc+C`, `MrC*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        let kind = match key.as_str() {
            "c" => HKind::C,
            "d" => HKind::D,
            "mc" => HKind::Mc,
            "mr" => HKind::Mr,
            "cstarmc" | "c*mc" => HKind::CStarMc,
            "mrplusc" | "mr+c" | "c+mr" => HKind::MrPlusC,
            "mcplusc" | "mc+c" | "c+mc" => HKind::McPlusC,
            "mrcstar" | "mrc*" => HKind::MrCStar,
            _ => return Err(ParseHKindError(s.to_string())),
        };
        Ok(kind)
    }
}

fn single_of(alphabet: &PushdownAlphabet, u: &[Letter], class: LetterClass) -> bool {
    u.len() == 1 && alphabet.class(u[0]) == class
}

/// Whether `u` has the word shape of the `kind` language, ignoring the automaton.
pub fn has_shape(alphabet: &PushdownAlphabet, u: &[Letter], kind: HKind) -> bool {
    use LetterClass::*;
    match kind {
        HKind::C => is_prime_dyck(alphabet, u),
        HKind::D => !u.is_empty() && is_dyck(alphabet, u),
        HKind::Mc => single_of(alphabet, u, Call),
        HKind::Mr => single_of(alphabet, u, Return),
        HKind::CStarMc => match u.split_last() {
            Some((&last, w)) => alphabet.class(last) == Call && is_dyck(alphabet, w),
            None => false,
        },
        HKind::MrPlusC => single_of(alphabet, u, Return) || is_prime_dyck(alphabet, u),
        HKind::McPlusC => single_of(alphabet, u, Call) || is_prime_dyck(alphabet, u),
        HKind::MrCStar => match u.split_first() {
            Some((&first, w)) => alphabet.class(first) == Return && is_dyck(alphabet, w),
            None => false,
        },
    }
}

/// Whether some extension of `prefix` (possibly `prefix` itself) can have the shape of `kind`.
fn shape_viable(alphabet: &PushdownAlphabet, prefix: &[Letter], kind: HKind) -> bool {
    let Some(&first) = prefix.first() else {
        return true;
    };
    let starts_with_return = alphabet.class(first) == LetterClass::Return;
    // the balance-checked body, and whether it must be prime
    let (body, prime) = match kind {
        HKind::Mc | HKind::Mr => return prefix.len() == 1,
        HKind::MrCStar => {
            if !starts_with_return {
                return false;
            }
            (&prefix[1..], false)
        }
        HKind::MrPlusC | HKind::McPlusC if starts_with_return => {
            return kind == HKind::MrPlusC && prefix.len() == 1;
        }
        HKind::C | HKind::MrPlusC | HKind::McPlusC => (prefix, true),
        HKind::D | HKind::CStarMc => (prefix, false),
    };
    let mut bal = 0i64;
    for (k, &l) in body.iter().enumerate() {
        bal += alphabet.weight(l);
        if bal < 0 {
            return false;
        }
        if prime && bal == 0 && k + 1 < body.len() {
            return false;
        }
    }
    true
}

/// Pairs `(p, q)` with `u ∈ H_pq`, without the state-count limit of [`PairSet`].
pub fn membership_pairs(a: &DyckAutomaton, u: &[Letter], kind: HKind) -> BTreeSet<(usize, usize)> {
    if !has_shape(a.alphabet(), u, kind) {
        return BTreeSet::new();
    }
    a.run_endpoints(u)
}

/// The membership pattern of `u` for `kind`. Empty for words outside every `H_pq`.
pub fn membership(a: &DyckAutomaton, u: &[Letter], kind: HKind) -> Result<MembershipPattern, LanguageError> {
    check_states(a)?;
    Ok(PairSet::from_pairs(a.state_count(), membership_pairs(a, u, kind)))
}

pub(crate) fn check_states(a: &DyckAutomaton) -> Result<(), LanguageError> {
    if a.state_count() > MAX_STATES {
        Err(LanguageError::TooManyStates(a.state_count()))
    } else {
        Ok(())
    }
}

/// Calls `f` on every word of length `1..=max_len` in some `H_pq`, in
/// depth-first lexicographic order, together with its membership pairs.
pub fn for_each_h_word(
    a: &DyckAutomaton,
    kind: HKind,
    max_len: usize,
    mut f: impl FnMut(&[Letter], &BTreeSet<(usize, usize)>),
) {
    let start: Vec<(usize, RunConfiguration)> = a
        .initial_configs()
        .into_iter()
        .map(|c| (c.state, c))
        .collect();
    let mut prefix = Vec::new();
    walk(a, kind, max_len, &start, &mut prefix, &mut f);
}

fn walk(
    a: &DyckAutomaton,
    kind: HKind,
    max_len: usize,
    configs: &[(usize, RunConfiguration)],
    prefix: &mut Vec<Letter>,
    f: &mut impl FnMut(&[Letter], &BTreeSet<(usize, usize)>),
) {
    if prefix.len() == max_len {
        return;
    }
    for letter in a.alphabet().letters() {
        prefix.push(letter);
        if shape_viable(a.alphabet(), prefix, kind) {
            let mut next = Vec::new();
            for (start, cfg) in configs {
                a.step_config(cfg, letter, |c| next.push((*start, c)));
            }
            next.sort_unstable();
            next.dedup();
            if !next.is_empty() {
                if has_shape(a.alphabet(), prefix, kind) {
                    let pairs: BTreeSet<(usize, usize)> = next.iter().map(|(s, c)| (*s, c.state)).collect();
                    f(prefix, &pairs);
                }
                walk(a, kind, max_len, &next, prefix, f);
            }
        }
        prefix.pop();
    }
}

/// All words of length `1..=max_len` in some `H_pq` with their patterns,
/// sorted by length and then lexicographically.
pub fn h_words(a: &DyckAutomaton, kind: HKind, max_len: usize) -> Result<Vec<(Word, PairSet)>, LanguageError> {
    check_states(a)?;
    let n = a.state_count();
    let mut out = Vec::new();
    for_each_h_word(a, kind, max_len, |u, pairs| {
        out.push((Word(u.to_vec()), PairSet::from_pairs(n, pairs.iter().copied())));
    });
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    Ok(out)
}
