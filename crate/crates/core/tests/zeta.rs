use std::collections::BTreeMap;

use num_traits::Signed;

use sofic_dyck::automaton::{builtin, builtin_names, DyckAutomaton};
use sofic_dyck::languages::{pattern_series, HKind};
use sofic_dyck::series::{MultiSeries, Series, TruncatedSeries};
use sofic_dyck::words::Letter;
use sofic_dyck::zeta::{
    counts_from_zeta, decomposition_check, exterior_from_patterns, exterior_power_by_enumeration, periodic_patterns,
    pn_bruteforce, zeta_bruteforce, zeta_det_route, zeta_subst_route, Orientation, PatternAlphabet, ZetaError,
};

#[test]
fn routes_agree_on_every_builtin() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let det = zeta_det_route::<TruncatedSeries>(&a, &a, 16).unwrap();
        let sub = zeta_subst_route::<TruncatedSeries>(&a, &a, 16).unwrap();
        assert_eq!(det.first_difference(&sub), None, "{name}");
        let brute = zeta_bruteforce(&a, 9, 0).unwrap();
        assert_eq!(brute.first_difference(&det.truncated(9)), None, "{name}");
        for c in det.coeffs() {
            assert!(c.is_integer() && !c.is_negative(), "{name}: {det}");
        }
        let table = counts_from_zeta(&det).unwrap();
        table.orbit_counts().unwrap();
    }
}

#[test]
fn multivariate_routes_project_to_univariate() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let cap = 6;
        let multi = zeta_det_route::<MultiSeries>(&a, &a, cap).unwrap();
        let uni = zeta_det_route::<TruncatedSeries>(&a, &a, cap).unwrap();
        assert_eq!(multi.theta(), uni, "{name}");
        let sub = zeta_subst_route::<MultiSeries>(&a, &a, cap).unwrap();
        assert_eq!(sub, multi, "{name}");
    }
}

#[test]
fn substituted_pattern_graph_powers_are_exterior_powers() {
    let cap = 6;
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        for (kind, orientation) in [(HKind::CStarMc, Orientation::Forward), (HKind::MrPlusC, Orientation::Reverse)] {
            let patterns = pattern_series::<TruncatedSeries>(&a, kind, cap).unwrap();
            let g = PatternAlphabet::new(kind, a.states(), patterns.keys().copied());
            let letters: BTreeMap<_, _> = g
                .letters
                .iter()
                .map(|l| (l.pattern, MultiSeries::var(&l.token, cap)))
                .collect();
            let images: BTreeMap<String, TruncatedSeries> = g
                .letters
                .iter()
                .map(|l| (l.token.clone(), patterns[&l.pattern].clone()))
                .collect();
            for l in 1..=a.state_count() {
                let symbolic = exterior_from_patterns(a.states(), kind, &letters, l, cap, orientation).unwrap();
                let direct = exterior_power_by_enumeration::<TruncatedSeries>(&a, kind, l, cap, orientation).unwrap();
                let substituted = symbolic.map(|e| e.substitute(|t| images.get(t).cloned(), cap).unwrap());
                assert_eq!(substituted, direct, "{name} {kind} l={l}");
            }
        }
    }
}

#[test]
fn decomposition_holds_to_length_six() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        let r = decomposition_check(&a, 6).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.violations.first());
    }
}

fn all_words(a: &DyckAutomaton, n: usize) -> Vec<Vec<Letter>> {
    let k = a.alphabet().len();
    (0..k.pow(n as u32))
        .map(|mut index| {
            let mut w = vec![Letter(0); n];
            for slot in w.iter_mut().rev() {
                *slot = Letter((index % k) as u16);
                index /= k;
            }
            w
        })
        .collect()
}

#[test]
fn lyndon_counting_matches_scanning_every_word() {
    for name in builtin_names() {
        let a = builtin(name).unwrap();
        for n in 1..=6 {
            let words = all_words(&a, n);
            let direct = words.iter().filter(|u| a.is_periodic_pattern(u).unwrap()).count() as u128;
            assert_eq!(pn_bruteforce(&a, n).unwrap(), direct, "{name} n={n}");
            let listed = periodic_patterns(&a, n).unwrap();
            assert_eq!(listed.len() as u128, direct);
            assert!(listed.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let a = builtin("motzkin-2-1").unwrap();
    let one = zeta_bruteforce(&a, 8, 1).unwrap();
    for workers in [2, 3, 8] {
        assert_eq!(zeta_bruteforce(&a, 8, workers).unwrap(), one);
    }
}

#[test]
fn routes_reject_ambiguous_presentations() {
    let json = r#"{"alphabet":{"call":["a"],"return":["b"],"internal":[]},
        "states":["1","2"],
        "edges":[{"from":"1","label":"a","to":"1"},{"from":"1","label":"a","to":"2"},{"from":"1","label":"b","to":"1"}],
        "matched":[[0,2]]}"#;
    let a = DyckAutomaton::from_json(json).unwrap();
    let fig2 = builtin("fig2").unwrap();
    let err = zeta_det_route::<TruncatedSeries>(&a, &fig2, 6).unwrap_err();
    assert!(matches!(err, ZetaError::Precondition(_)), "{err}");
    assert!(err.to_string().contains("left-reduced"), "{err}");
    let err = zeta_subst_route::<TruncatedSeries>(&a, &fig2, 6).unwrap_err();
    assert!(matches!(err, ZetaError::Precondition(_)));
}

