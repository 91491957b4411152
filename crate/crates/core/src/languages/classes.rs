//! Words of a matrix language grouped by membership pattern.
//!
//! The pattern of a Dyck word is the relation "labels an admissible path
//! from p to q". After a Dyck word the stack is back where it started, so
//! the relation of a concatenation of Dyck words is the composition of their
//! relations, and the relation of `a·w·b` depends only on the relation of
//! `w` and the matched pairs labeled `(a, b)`. Prime factorization is unique,
//! so summing over factorizations counts every word once:
//!
//! ```text
//! Prime[R] = Σ_{i: E_i = R} i + Σ_{a,b} Σ_{wrap_ab(R') = R} a·Dyck[R']·b
//! Dyck[R]  = [R = Id] + Σ_{R1∘R2 = R} Prime[R1]·Dyck[R2]
//! ```

use std::collections::BTreeMap;

use super::{check_states, h_words, HKind, LanguageError, PairSet};
use crate::automaton::DyckAutomaton;
use crate::series::{LetterSeries, Series, TruncatedSeries};
use crate::words::{Letter, LetterClass};

/// Upper bound on the stored terms of any single class series.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

type Classes<S> = BTreeMap<PairSet, S>;

fn add_class<S: Series>(map: &mut Classes<S>, key: PairSet, s: S) {
    if key.is_empty() || s.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(v) => {
            *v = v.plus(&s);
            if v.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, s);
        }
    }
}

fn letter_relation(a: &DyckAutomaton, l: Letter) -> PairSet {
    PairSet::from_pairs(
        a.state_count(),
        a.edges().iter().filter(|e| e.label == l).map(|e| (e.from, e.to)),
    )
}

struct Wrap {
    call: Letter,
    ret: Letter,
    // (call.from, call.to, ret.from, ret.to) for each matched pair with these labels
    pairs: Vec<(usize, usize, usize, usize)>,
}

impl Wrap {
    fn apply(&self, n: usize, inner: &PairSet) -> PairSet {
        PairSet::from_pairs(
            n,
            self.pairs
                .iter()
                .filter(|(_, q, r, _)| inner.contains(*q, *r))
                .map(|(p, _, _, s)| (*p, *s)),
        )
    }
}

fn wraps(a: &DyckAutomaton) -> Vec<Wrap> {
    let mut grouped: BTreeMap<(Letter, Letter), Vec<(usize, usize, usize, usize)>> = BTreeMap::new();
    for &(c, r) in a.matched_pairs() {
        let (ce, re) = (&a.edges()[c], &a.edges()[r]);
        grouped
            .entry((ce.label, re.label))
            .or_default()
            .push((ce.from, ce.to, re.from, re.to));
    }
    grouped
        .into_iter()
        .map(|((call, ret), pairs)| Wrap { call, ret, pairs })
        .collect()
}

fn check_terms<S: Series>(map: &Classes<S>, kind: HKind, limit: usize) -> Result<(), LanguageError> {
    if map.values().any(|s| s.term_count() > limit) {
        Err(LanguageError::TermLimit { kind, limit })
    } else {
        Ok(())
    }
}

/// The Dyck and prime Dyck words grouped by relation, up to `cap`.
fn dyck_classes<S: LetterSeries>(
    a: &DyckAutomaton,
    cap: usize,
    kind: HKind,
    limit: usize,
) -> Result<(Classes<S>, Classes<S>), LanguageError> {
    let n = a.state_count();
    let alphabet = a.alphabet();
    let weight = |l: Letter| S::letter(alphabet.token(l), cap);
    let mut internal = Classes::new();
    for l in alphabet.internal_letters() {
        add_class(&mut internal, letter_relation(a, l), weight(l));
    }
    let wraps = wraps(a);
    let prime_of = |dyck: &Classes<S>| {
        let mut prime = internal.clone();
        for w in &wraps {
            let ab = weight(w.call).times(&weight(w.ret));
            for (r, s) in dyck {
                add_class(&mut prime, w.apply(n, r), ab.times(s));
            }
        }
        prime
    };
    let mut dyck: Classes<S> = Classes::new();
    add_class(&mut dyck, PairSet::identity(n), S::one(cap));
    let mut prime = prime_of(&dyck);
    for _ in 0..=cap {
        let mut next: Classes<S> = Classes::new();
        add_class(&mut next, PairSet::identity(n), S::one(cap));
        for (r1, p) in &prime {
            for (r2, d) in &dyck {
                add_class(&mut next, r1.compose(r2), p.times(d));
            }
        }
        check_terms(&next, kind, limit)?;
        if next == dyck {
            break;
        }
        dyck = next;
        prime = prime_of(&dyck);
    }
    Ok((dyck, prime))
}

/// The series of `V_{H,S}` for every nonempty pattern `S` whose series is
/// nonzero up to `cap`: the sum of the weights of the words with pattern `S`.
pub fn pattern_series<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    cap: usize,
) -> Result<BTreeMap<PairSet, S>, LanguageError> {
    pattern_series_limited(a, kind, cap, DEFAULT_MAX_TERMS)
}

pub fn pattern_series_limited<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    cap: usize,
    max_terms: usize,
) -> Result<BTreeMap<PairSet, S>, LanguageError> {
    check_states(a)?;
    let n = a.state_count();
    let alphabet = a.alphabet();
    let weight = |l: Letter| S::letter(alphabet.token(l), cap);
    let single = |class: LetterClass| {
        let mut out = Classes::new();
        for l in alphabet.letters().filter(|&l| alphabet.class(l) == class) {
            add_class(&mut out, letter_relation(a, l), weight(l));
        }
        out
    };
    let merge = |mut x: Classes<S>, y: Classes<S>| {
        for (k, v) in y {
            add_class(&mut x, k, v);
        }
        x
    };
    let out = match kind {
        HKind::Mc => single(LetterClass::Call),
        HKind::Mr => single(LetterClass::Return),
        _ => {
            let (mut dyck, prime) = dyck_classes::<S>(a, cap, kind, max_terms)?;
            match kind {
                HKind::C => prime,
                HKind::D => {
                    add_class(&mut dyck, PairSet::identity(n), S::from_int(-1, cap));
                    dyck
                }
                HKind::MrPlusC => merge(single(LetterClass::Return), prime),
                HKind::McPlusC => merge(single(LetterClass::Call), prime),
                HKind::CStarMc => {
                    let mut out = Classes::new();
                    for l in alphabet.call_letters() {
                        let e = letter_relation(a, l);
                        for (r, s) in &dyck {
                            add_class(&mut out, r.compose(&e), s.times(&weight(l)));
                        }
                    }
                    out
                }
                HKind::MrCStar => {
                    let mut out = Classes::new();
                    for l in alphabet.return_letters() {
                        let e = letter_relation(a, l);
                        for (r, s) in &dyck {
                            add_class(&mut out, e.compose(r), weight(l).times(s));
                        }
                    }
                    out
                }
                HKind::Mc | HKind::Mr => unreachable!(),
            }
        }
    };
    check_terms(&out, kind, max_terms)?;
    Ok(out)
}

/// Univariate [`pattern_series`]: `[z^n]` counts the words of length `n` with each pattern.
pub fn pattern_counts(
    a: &DyckAutomaton,
    kind: HKind,
    cap: usize,
) -> Result<BTreeMap<PairSet, TruncatedSeries>, LanguageError> {
    pattern_series::<TruncatedSeries>(a, kind, cap)
}

/// [`pattern_series`] by enumerating every word up to `cap`. Exponential; for tests.
pub fn pattern_series_by_enumeration<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    cap: usize,
) -> Result<BTreeMap<PairSet, S>, LanguageError> {
    let mut out = Classes::new();
    for (w, pattern) in h_words(a, kind, cap)? {
        let mono = w
            .iter()
            .fold(S::one(cap), |acc, &l| acc.times(&S::letter(a.alphabet().token(l), cap)));
        add_class(&mut out, pattern, mono);
    }
    Ok(out)
}

pub fn pattern_counts_by_enumeration(
    a: &DyckAutomaton,
    kind: HKind,
    cap: usize,
) -> Result<BTreeMap<PairSet, TruncatedSeries>, LanguageError> {
    pattern_series_by_enumeration::<TruncatedSeries>(a, kind, cap)
}
