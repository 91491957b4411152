use std::collections::BTreeMap;

use super::{exterior::exterior_from_patterns, Orientation, ZetaError};
use crate::automaton::{check_h_codeterminism, check_h_determinism, DyckAutomaton};
use crate::languages::{pattern_counts, pattern_series, HKind, PairSet};
use crate::series::{inverse, LetterSeries, MultiSeries, Series, SeriesMatrix};

/// Word length up to which the route preconditions are checked.
pub const DEFAULT_DETERMINISM_CHECK_LEN: usize = 6;

fn require_determinism(left: &DyckAutomaton, right: &DyckAutomaton) -> Result<(), ZetaError> {
    let l = check_h_determinism(left, HKind::CStarMc, DEFAULT_DETERMINISM_CHECK_LEN);
    if !l.passed() {
        return Err(ZetaError::Precondition(Box::new(l)));
    }
    let r = check_h_codeterminism(right, HKind::MrPlusC, DEFAULT_DETERMINISM_CHECK_LEN);
    if !r.passed() {
        return Err(ZetaError::Precondition(Box::new(r)));
    }
    Ok(())
}

/// `Π_ℓ det(I - M_{⊗ℓ})^{(-1)^ℓ}` for the exterior powers `M_{⊗ℓ}` given by
/// `power(ℓ)`, `ℓ = 1..=n`. Zero powers contribute 1.
fn det_product<S: Series>(
    n: usize,
    cap: usize,
    mut power: impl FnMut(usize) -> Result<SeriesMatrix<S>, ZetaError>,
) -> Result<S, ZetaError> {
    let mut z = S::one(cap);
    for l in 1..=n {
        let m = power(l)?;
        if m.is_zero() {
            continue;
        }
        let d = m.one_minus().det();
        z = if l % 2 == 1 { z.times(&inverse(&d)?) } else { z.times(&d) };
    }
    Ok(z)
}

fn side_by_det<S: LetterSeries>(
    a: &DyckAutomaton,
    kind: HKind,
    orientation: Orientation,
    cap: usize,
) -> Result<S, ZetaError> {
    let patterns = pattern_series::<S>(a, kind, cap)?;
    det_product(a.state_count(), cap, |l| {
        exterior_from_patterns(a.states(), kind, &patterns, l, cap, orientation)
    })
}

/// Zeta function as a product of exterior-power determinants:
/// `C*M_c` of `left` (which must be `C*M_c`-deterministic) times
/// `M_r + C` of `right` (which must be `M_r + C`-codeterministic).
/// Determinism is checked on words up to [`DEFAULT_DETERMINISM_CHECK_LEN`].
pub fn zeta_det_route<S: LetterSeries>(left: &DyckAutomaton, right: &DyckAutomaton, cap: usize) -> Result<S, ZetaError> {
    require_determinism(left, right)?;
    let l = side_by_det::<S>(left, HKind::CStarMc, Orientation::Forward, cap)?;
    let r = side_by_det::<S>(right, HKind::MrPlusC, Orientation::Reverse, cap)?;
    Ok(l.times(&r))
}

/// One letter of a pattern alphabet: the words of `H` with membership
/// pattern `pattern`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternLetter {
    pub token: String,
    pub pattern: PairSet,
}

/// The labeled graph `G_H` on the states: an edge `p → q` labeled `a_S`
/// for every pattern `S` containing `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternAlphabet {
    pub kind: HKind,
    pub states: Vec<String>,
    pub letters: Vec<PatternLetter>,
}

impl PatternAlphabet {
    /// Letters for the given patterns, in pattern order. Tokens read
    /// `CStarMc{(1,1)}`.
    pub fn new(kind: HKind, states: &[String], patterns: impl IntoIterator<Item = PairSet>) -> Self {
        let mut patterns: Vec<PairSet> = patterns.into_iter().filter(|p| !p.is_empty()).collect();
        patterns.sort();
        patterns.dedup();
        let letters = patterns
            .into_iter()
            .map(|pattern| PatternLetter {
                token: format!("{}{}", kind.name(), pattern.render(states)),
                pattern,
            })
            .collect();
        PatternAlphabet {
            kind,
            states: states.to_vec(),
            letters,
        }
    }

    /// Edges `(from, letter index, to)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (k, letter) in self.letters.iter().enumerate() {
            for (p, q) in letter.pattern.pairs() {
                out.push((p, k, q));
            }
        }
        out.sort_unstable();
        out
    }

    /// At most one edge per source and letter.
    pub fn is_deterministic(&self) -> bool {
        self.letters.iter().all(|l| l.pattern.is_functional())
    }

    /// At most one edge per target and letter.
    pub fn is_codeterministic(&self) -> bool {
        self.letters.iter().all(|l| l.pattern.is_cofunctional())
    }

    pub fn token(&self, pattern: &PairSet) -> Option<&str> {
        self.letters
            .iter()
            .find(|l| l.pattern == *pattern)
            .map(|l| l.token.as_str())
    }
}

/// The pattern graph of `H` over the patterns whose words have length at most `cap`.
pub fn pattern_graph(a: &DyckAutomaton, kind: HKind, cap: usize) -> Result<PatternAlphabet, ZetaError> {
    let counts = pattern_counts(a, kind, cap)?;
    Ok(PatternAlphabet::new(kind, a.states(), counts.into_keys()))
}

/// Zeta function of the sofic shift presented by `g`, as a series in its
/// pattern letters: `Π_ℓ det(I - G_{⊗ℓ})^{(-1)^ℓ}`. The graph must be
/// letter-deterministic or letter-codeterministic.
pub fn sofic_zeta(g: &PatternAlphabet, cap: usize) -> Result<MultiSeries, ZetaError> {
    let orientation = if g.is_deterministic() {
        Orientation::Forward
    } else if g.is_codeterministic() {
        Orientation::Reverse
    } else {
        return Err(ZetaError::AmbiguousGraph);
    };
    let patterns: BTreeMap<PairSet, MultiSeries> = g
        .letters
        .iter()
        .map(|l| (l.pattern, MultiSeries::var(&l.token, cap)))
        .collect();
    det_product(g.states.len(), cap, |l| {
        exterior_from_patterns(&g.states, g.kind, &patterns, l, cap, orientation)
    })
}

fn side_by_substitution<S: LetterSeries>(a: &DyckAutomaton, kind: HKind, cap: usize) -> Result<S, ZetaError> {
    let patterns = pattern_series::<S>(a, kind, cap)?;
    let g = PatternAlphabet::new(kind, a.states(), patterns.keys().copied());
    let zeta = sofic_zeta(&g, cap)?;
    let images: BTreeMap<&str, &S> = g
        .letters
        .iter()
        .map(|l| (l.token.as_str(), &patterns[&l.pattern]))
        .collect();
    Ok(zeta.substitute(|t| images.get(t).map(|s| (*s).clone()), cap)?)
}

/// Zeta function through the pattern graphs: the sofic zeta functions of
/// `G_{C*M_c}` (of `left`) and `G_{M_r+C}` (of `right`) with each pattern
/// letter replaced by the series of its words.
pub fn zeta_subst_route<S: LetterSeries>(left: &DyckAutomaton, right: &DyckAutomaton, cap: usize) -> Result<S, ZetaError> {
    require_determinism(left, right)?;
    let l = side_by_substitution::<S>(left, HKind::CStarMc, cap)?;
    let r = side_by_substitution::<S>(right, HKind::MrPlusC, cap)?;
    Ok(l.times(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{builtin, builtin_names};
    use crate::series::TruncatedSeries;
    use crate::zeta::zeta_bruteforce;

    #[test]
    fn fig2_pattern_graphs() {
        let a = builtin("fig2").unwrap();
        let left = pattern_graph(&a, HKind::CStarMc, 6).unwrap();
        let tokens: Vec<&str> = left.letters.iter().map(|l| l.token.as_str()).collect();
        assert_eq!(tokens, vec!["CStarMc{(1,1)}", "CStarMc{(2,1)}"]);
        assert!(left.is_deterministic());
        let right = pattern_graph(&a, HKind::MrPlusC, 6).unwrap();
        assert!(right.is_codeterministic());
        assert_eq!(right.edges().len(), right.letters.iter().map(|l| l.pattern.len()).sum::<usize>());
    }

    #[test]
    fn golden_mean_graph_zeta() {
        // one state, one loop per letter: ζ = 1 / (1 - a)
        let states = vec!["1".to_string()];
        let g = PatternAlphabet::new(HKind::C, &states, [PairSet::identity(1)]);
        let z = sofic_zeta(&g, 4).unwrap();
        let theta = z.theta();
        assert_eq!(theta, TruncatedSeries::from_integers(&[1, 1, 1, 1, 1], 4));
    }

    #[test]
    fn routes_agree_with_bruteforce() {
        for name in builtin_names() {
            let a = builtin(name).unwrap();
            let brute = zeta_bruteforce(&a, 7, 0).unwrap();
            let det = zeta_det_route::<TruncatedSeries>(&a, &a, 7).unwrap();
            let sub = zeta_subst_route::<TruncatedSeries>(&a, &a, 7).unwrap();
            assert_eq!(det, brute, "{name} det");
            assert_eq!(sub, brute, "{name} subst");
        }
    }
}
