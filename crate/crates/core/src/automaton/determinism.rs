//! H-determinism and H-codeterminism by exhaustive search over short words.

use std::fmt;

use super::DyckAutomaton;
use crate::languages::{for_each_h_word, HKind};
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeterminismProperty {
    HDeterministic,
    HCodeterministic,
}

impl fmt::Display for DeterminismProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeterminismProperty::HDeterministic => "H-deterministic",
            DeterminismProperty::HCodeterministic => "H-codeterministic",
        })
    }
}

/// A word with two distinct H-paths sharing their start (resp. end). The
/// endpoint pairs coincide when the two paths differ only in their edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminismWitness {
    pub word: Word,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminismReport {
    pub property: DeterminismProperty,
    pub kind: HKind,
    pub max_length_checked: usize,
    pub witness: Option<DeterminismWitness>,
}

impl DeterminismReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn check_h_determinism(a: &DyckAutomaton, kind: HKind, max_len: usize) -> DeterminismReport {
    check(a, kind, max_len, DeterminismProperty::HDeterministic)
}

pub fn check_h_codeterminism(a: &DyckAutomaton, kind: HKind, max_len: usize) -> DeterminismReport {
    check(a, kind, max_len, DeterminismProperty::HCodeterministic)
}

fn check(a: &DyckAutomaton, kind: HKind, max_len: usize, property: DeterminismProperty) -> DeterminismReport {
    let forward = property == DeterminismProperty::HDeterministic;
    let mut witness = None;
    for_each_h_word(a, kind, max_len, |u, pairs| {
        if witness.is_some() {
            return;
        }
        for &(p, q) in pairs {
            // another endpoint on the free side
            let other = pairs
                .iter()
                .find(|&&(p2, q2)| if forward { p2 == p && q2 != q } else { q2 == q && p2 != p });
            if let Some(&second) = other {
                witness = Some(DeterminismWitness {
                    word: Word(u.to_vec()),
                    first: (p, q),
                    second,
                });
                return;
            }
            if a.count_runs(u, p, q) > 1 {
                witness = Some(DeterminismWitness {
                    word: Word(u.to_vec()),
                    first: (p, q),
                    second: (p, q),
                });
                return;
            }
        }
    });
    DeterminismReport {
        property,
        kind,
        max_length_checked: max_len,
        witness,
    }
}
