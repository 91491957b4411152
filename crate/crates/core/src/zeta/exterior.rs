//! Exterior powers of matrix languages.
//!
//! When every word of `H` has at most one run from each source (forward) or
//! into each target (reverse), the `(P, Q)` entry of the `ℓ`-th exterior
//! power is `Σ_S minor_S(P, Q) · V_{H,S}`, summed over membership patterns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Orientation, ZetaError};
use crate::automaton::DyckAutomaton;
use crate::languages::{h_words, pattern_series, subsets, HKind, PairSet};
use crate::series::{LetterSeries, SeriesMatrix};

/// `{1,2}` for the subset `[0, 1]` of states named `1`, `2`.
pub fn subset_label(states: &[String], subset: &[usize]) -> String {
    let names: Vec<&str> = subset.iter().map(|&i| states[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn check_pattern(kind: HKind, pattern: &PairSet, orientation: Orientation) -> Result<(), ZetaError> {
    let ok = match orientation {
        Orientation::Forward => pattern.is_functional(),
        Orientation::Reverse => pattern.is_cofunctional(),
    };
    if ok {
        Ok(())
    } else {
        Err(ZetaError::Ambiguous {
            kind,
            pattern: *pattern,
            side: match orientation {
                Orientation::Forward => "source",
                Orientation::Reverse => "target",
            },
        })
    }
}

/// The `ℓ`-th exterior power built from already computed pattern series.
pub fn exterior_from_patterns<S: LetterSeries>(
    states: &[String],
    kind: HKind,
    patterns: &BTreeMap<PairSet, S>,
    l: usize,
    cap: usize,
    orientation: Orientation,
) -> Result<SeriesMatrix<S>, ZetaError> {
    for pattern in patterns.keys() {
        check_pattern(kind, pattern, orientation)?;
    }
    let subs = subsets(states.len(), l);
    let labels = subs.iter().map(|s| subset_label(states, s)).collect();
    let mut m = SeriesMatrix::zero(labels, cap);
    for (i, rows) in subs.iter().enumerate() {
        for (j, cols) in subs.iter().enumerate() {
            let mut acc = S::zero(cap);
            for (pattern, v) in patterns {
                let minor = pattern.minor(rows, cols);
                if minor != 0 {
                    acc = acc.plus(&v.scaled(&BigRational::from_integer(BigInt::from(minor))));
                }
            }
            m.set(i, j, acc);
        }
    }
    Ok(m)
}

/// `H_{⊗ℓ}` up to `cap`. Rows and columns are the `ℓ`-subsets of states in
/// lexicographic order. Fails with [`ZetaError::Ambiguous`] when some word
/// has two runs from one source (forward) or into one target (reverse).
pub fn exterior_power<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    l: usize,
    cap: usize,
    orientation: Orientation,
) -> Result<SeriesMatrix<S>, ZetaError> {
    let patterns = pattern_series::<S>(a, kind, cap)?;
    exterior_from_patterns(a.states(), kind, &patterns, l, cap, orientation)
}

/// [`exterior_power`] summing the minors of every word's membership
/// matrix one word at a time. Exponential; for tests.
pub fn exterior_power_by_enumeration<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    l: usize,
    cap: usize,
    orientation: Orientation,
) -> Result<SeriesMatrix<S>, ZetaError> {
    let words = h_words(a, kind, cap)?;
    let subs = subsets(a.state_count(), l);
    let labels = subs.iter().map(|s| subset_label(a.states(), s)).collect();
    let mut m: SeriesMatrix<S> = SeriesMatrix::zero(labels, cap);
    for (w, pattern) in &words {
        check_pattern(kind, pattern, orientation)?;
        let mono = w
            .iter()
            .fold(S::one(cap), |acc, &x| acc.times(&S::letter(a.alphabet().token(x), cap)));
        for (i, rows) in subs.iter().enumerate() {
            for (j, cols) in subs.iter().enumerate() {
                let minor = pattern.minor(rows, cols);
                if minor != 0 {
                    let next = m.get(i, j).plus(&mono.scaled(&BigRational::from_integer(BigInt::from(minor))));
                    m.set(i, j, next);
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{builtin, AlphabetDocument, AutomatonDocument, EdgeDocument};
    use crate::languages::h_matrix;
    use crate::series::{MultiSeries, Series, TruncatedSeries};

    #[test]
    fn first_power_is_the_matrix() {
        let a = builtin("fig2").unwrap();
        for (kind, o) in [(HKind::CStarMc, Orientation::Forward), (HKind::MrPlusC, Orientation::Reverse)] {
            let ext = exterior_power::<TruncatedSeries>(&a, kind, 1, 7, o).unwrap();
            let h = h_matrix::<TruncatedSeries>(&a, kind, 7);
            assert_eq!(ext.labels(), &["{1}".to_string(), "{2}".to_string()]);
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(ext.get(i, j), h.get(i, j), "{kind} [{i},{j}]");
                }
            }
        }
    }

    #[test]
    fn second_powers_of_fig2() {
        let a = builtin("fig2").unwrap();
        let left = exterior_power::<MultiSeries>(&a, HKind::CStarMc, 2, 8, Orientation::Forward).unwrap();
        assert!(left.get(0, 0).is_zero());
        let right = exterior_power::<MultiSeries>(&a, HKind::MrPlusC, 2, 8, Orientation::Reverse).unwrap();
        assert_eq!(right.get(0, 0), &MultiSeries::var("i", 8).negate());
    }

    #[test]
    fn patterns_match_enumeration() {
        for name in ["fig2", "motzkin-2-1", "dyck-2"] {
            let a = builtin(name).unwrap();
            for l in 1..=a.state_count() {
                let x = exterior_power::<MultiSeries>(&a, HKind::CStarMc, l, 5, Orientation::Forward).unwrap();
                let y = exterior_power_by_enumeration::<MultiSeries>(&a, HKind::CStarMc, l, 5, Orientation::Forward)
                    .unwrap();
                assert_eq!(x, y, "{name} l={l}");
            }
        }
    }

    #[test]
    fn ambiguity_is_reported() {
        // i leads from 1 to both states
        let doc = AutomatonDocument {
            alphabet: AlphabetDocument {
                call: vec![],
                ret: vec![],
                internal: vec!["i".into()],
            },
            states: vec!["1".into(), "2".into()],
            edges: vec![EdgeDocument::new("1", "i", "1"), EdgeDocument::new("1", "i", "2")],
            matched: vec![],
        };
        let a = DyckAutomaton::from_document(&doc).unwrap();
        let err = exterior_power::<TruncatedSeries>(&a, HKind::C, 1, 4, Orientation::Forward);
        assert!(matches!(err, Err(ZetaError::Ambiguous { side: "source", .. })), "{err:?}");
        assert!(exterior_power::<TruncatedSeries>(&a, HKind::C, 1, 4, Orientation::Reverse).is_ok());
    }
}
