//! Bounded circularity check.
//!
//! A sequence of matrix-language words `x_1 ⋯ x_n` is closed when some state
//! path `p_0 → p_1 → ⋯ → p_n = p_0` has `x_k ∈ H_{p_{k-1} p_k}`. A closed
//! sequence puts cuts at the positions of the cyclic word `x_1 ⋯ x_n` where
//! factors begin. The matrix is circular when every cyclic word has at most
//! one set of cuts arising this way. The checker records the linear cut set
//! of every closed sequence up to the length bound and then, for each word
//! `v`, collects the cut sets of all rotations of `v` shifted back onto `v`.

use std::collections::HashMap;

use super::{h_words, HKind, LanguageError, PairSet};
use crate::automaton::DyckAutomaton;
use crate::words::{Letter, Word};

const MAX_TOTAL_LEN: usize = 63;

/// One cyclic word with two different factorizations into closed sequences.
/// Both factor lists start at their first cut and read `word` cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularityWitness {
    pub word: Word,
    pub first: Vec<Word>,
    pub second: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularityReport {
    pub max_total_len: usize,
    /// Number of closed sequences examined.
    pub sequences: usize,
    pub witness: Option<CircularityWitness>,
}

impl CircularityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn circularity_check(a: &DyckAutomaton, kind: HKind, max_total_len: usize) -> Result<CircularityReport, LanguageError> {
    if max_total_len > MAX_TOTAL_LEN {
        return Err(LanguageError::LengthTooLarge(max_total_len));
    }
    let words = h_words(a, kind, max_total_len)?;
    circularity_check_words(a.state_count(), &words, max_total_len)
}

/// The check for an arbitrary finite family of words with their relations
/// over `n_states` states.
pub fn circularity_check_words(
    n_states: usize,
    words: &[(Word, PairSet)],
    max_total_len: usize,
) -> Result<CircularityReport, LanguageError> {
    if max_total_len > MAX_TOTAL_LEN {
        return Err(LanguageError::LengthTooLarge(max_total_len));
    }
    let words: Vec<&(Word, PairSet)> = words
        .iter()
        .filter(|(w, r)| !w.is_empty() && w.len() <= max_total_len && !r.is_empty())
        .collect();
    let id = PairSet::identity(n_states);
    let mut closed: HashMap<Vec<Letter>, Vec<u64>> = HashMap::new();
    let mut sequences = 0usize;
    let mut concat = Vec::new();
    extend(&words, &id, PairSet::identity(n_states), 0, &mut concat, max_total_len, &mut |v, cuts| {
        sequences += 1;
        let entry = closed.entry(v.to_vec()).or_default();
        if !entry.contains(&cuts) {
            entry.push(cuts);
        }
    });

    let mut keys: Vec<&Vec<Letter>> = closed.keys().collect();
    keys.sort_by(|x, y| (x.len(), *x).cmp(&(y.len(), *y)));
    for v in keys {
        let n = v.len();
        let mut cyclic: Vec<u64> = Vec::new();
        for k in 0..n {
            let rot: Vec<Letter> = v[k..].iter().chain(&v[..k]).copied().collect();
            if let Some(list) = closed.get(&rot) {
                for &cuts in list {
                    let shifted = rotate_mask(cuts, k, n);
                    if !cyclic.contains(&shifted) {
                        cyclic.push(shifted);
                    }
                }
            }
        }
        if cyclic.len() > 1 {
            cyclic.sort_unstable_by_key(|m| cut_positions(*m, n));
            return Ok(CircularityReport {
                max_total_len,
                sequences,
                witness: Some(CircularityWitness {
                    word: Word(v.clone()),
                    first: factors(v, cyclic[0]),
                    second: factors(v, cyclic[1]),
                }),
            });
        }
    }
    Ok(CircularityReport {
        max_total_len,
        sequences,
        witness: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    words: &[&(Word, PairSet)],
    id: &PairSet,
    rel: PairSet,
    cuts: u64,
    concat: &mut Vec<Letter>,
    max_len: usize,
    record: &mut impl FnMut(&[Letter], u64),
) {
    for (w, r) in words {
        if concat.len() + w.len() > max_len {
            continue;
        }
        let next = rel.compose(r);
        if next.is_empty() {
            continue;
        }
        let start = concat.len();
        let next_cuts = cuts | 1 << start;
        concat.extend_from_slice(w);
        if next.bits() & id.bits() != 0 {
            record(concat, next_cuts);
        }
        extend(words, id, next, next_cuts, concat, max_len, record);
        concat.truncate(start);
    }
}

/// Cut positions of a rotation by `k` of an `n`-letter word, moved back onto the word.
fn rotate_mask(mask: u64, k: usize, n: usize) -> u64 {
    let mut out = 0u64;
    for pos in 0..n {
        if mask >> pos & 1 == 1 {
            out |= 1 << ((pos + k) % n);
        }
    }
    out
}

fn cut_positions(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn factors(v: &[Letter], mask: u64) -> Vec<Word> {
    let n = v.len();
    let cuts = cut_positions(mask, n);
    let mut out = Vec::new();
    for (k, &c) in cuts.iter().enumerate() {
        let next = if k + 1 < cuts.len() { cuts[k + 1] } else { cuts[0] + n };
        out.push((c..next).map(|i| v[i % n]).collect());
    }
    out
}
