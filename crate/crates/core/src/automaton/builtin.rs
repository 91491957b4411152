//! Named example automata.
//!
//! * `dyck-k`: one state, calls `a1..ak`, returns `b1..bk`, loop `aj` matched with loop `bj`.
//! * `motzkin-k-m`: the Dyck shift plus `m` internal loops. Up to four bracket
//!   pairs use `( ) [ ] { } < >`; the single internal letter is `i`.
//! * `fig1-sofic`: two states, bracket loops at state 1, `i` edges between 1 and 2.
//! * `fig2`: the same shape over `{a, a'}`, `{b, b'}`, `{i}`.
//! * `golden-mean`: pure sofic, edges `1-a->1`, `1-b->2`, `2-c->1`.

use super::{AlphabetDocument, AutomatonDocument, AutomatonError, DyckAutomaton, EdgeDocument};

const BRACKETS: [(&str, &str); 4] = [("(", ")"), ("[", "]"), ("{", "}"), ("<", ">")];

pub fn builtin_names() -> Vec<&'static str> {
    vec!["dyck-1", "dyck-2", "motzkin-1-1", "motzkin-2-1", "fig1-sofic", "fig2", "golden-mean"]
}

/// Looks up a builtin by name. `dyck-k` and `motzkin-k-m` accept any
/// positive `k` and `m`; the names listed by [`builtin_names`] are examples.
pub fn builtin(name: &str) -> Result<DyckAutomaton, AutomatonError> {
    let doc = builtin_document(name).ok_or_else(|| AutomatonError::UnknownBuiltin(name.to_string()))?;
    DyckAutomaton::from_document(&doc)
}

fn builtin_document(name: &str) -> Option<AutomatonDocument> {
    match name {
        "fig2" => Some(two_state_loops(["a", "a'"], ["b", "b'"])),
        "fig1-sofic" => Some(two_state_loops(["(", "["], [")", "]"])),
        "golden-mean" => Some(AutomatonDocument {
            alphabet: AlphabetDocument {
                call: vec![],
                ret: vec![],
                internal: strings(&["a", "b", "c"]),
            },
            states: strings(&["1", "2"]),
            edges: vec![
                EdgeDocument::new("1", "a", "1"),
                EdgeDocument::new("1", "b", "2"),
                EdgeDocument::new("2", "c", "1"),
            ],
            matched: vec![],
        }),
        _ => {
            if let Some(k) = name.strip_prefix("dyck-") {
                let k: usize = k.parse().ok().filter(|&k| k > 0)?;
                let calls: Vec<String> = (1..=k).map(|j| format!("a{j}")).collect();
                let rets: Vec<String> = (1..=k).map(|j| format!("b{j}")).collect();
                Some(one_state(calls, rets, vec![]))
            } else if let Some(rest) = name.strip_prefix("motzkin-") {
                let (k, m) = rest.split_once('-')?;
                let k: usize = k.parse().ok().filter(|&k| k > 0)?;
                let m: usize = m.parse().ok().filter(|&m| m > 0)?;
                let (calls, rets) = if k <= BRACKETS.len() {
                    (
                        BRACKETS[..k].iter().map(|p| p.0.to_string()).collect(),
                        BRACKETS[..k].iter().map(|p| p.1.to_string()).collect(),
                    )
                } else {
                    ((1..=k).map(|j| format!("a{j}")).collect(), (1..=k).map(|j| format!("b{j}")).collect())
                };
                let internal = if m == 1 {
                    vec!["i".to_string()]
                } else {
                    (1..=m).map(|j| format!("i{j}")).collect()
                };
                Some(one_state(calls, rets, internal))
            } else {
                None
            }
        }
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn one_state(calls: Vec<String>, rets: Vec<String>, internal: Vec<String>) -> AutomatonDocument {
    let k = calls.len();
    let edges = calls
        .iter()
        .chain(&rets)
        .chain(&internal)
        .map(|l| EdgeDocument::new("1", l, "1"))
        .collect();
    AutomatonDocument {
        alphabet: AlphabetDocument {
            call: calls,
            ret: rets,
            internal,
        },
        states: strings(&["1"]),
        edges,
        matched: (0..k).map(|j| [j, k + j]).collect(),
    }
}

fn two_state_loops(calls: [&str; 2], rets: [&str; 2]) -> AutomatonDocument {
    AutomatonDocument {
        alphabet: AlphabetDocument {
            call: strings(&calls),
            ret: strings(&rets),
            internal: strings(&["i"]),
        },
        states: strings(&["1", "2"]),
        edges: vec![
            EdgeDocument::new("1", calls[0], "1"),
            EdgeDocument::new("1", calls[1], "1"),
            EdgeDocument::new("1", rets[0], "1"),
            EdgeDocument::new("1", rets[1], "1"),
            EdgeDocument::new("1", "i", "2"),
            EdgeDocument::new("2", "i", "1"),
        ],
        matched: vec![[0, 2], [1, 3]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::LetterClass;

    #[test]
    fn motzkin_shape() {
        let a = builtin("motzkin-2-1").unwrap();
        assert_eq!(a.state_count(), 1);
        assert_eq!(a.alphabet().len(), 5);
        assert_eq!(a.matched_pairs().len(), 2);
    }

    #[test]
    fn fig2_shape() {
        let a = builtin("fig2").unwrap();
        assert_eq!(a.states(), ["1", "2"]);
        assert_eq!(a.alphabet().tokens_of(LetterClass::Call), ["a", "a'"]);
        assert_eq!(a.alphabet().tokens_of(LetterClass::Return), ["b", "b'"]);
        for e in &a.edges()[..4] {
            assert_eq!((e.from, e.to), (0, 0));
        }
        assert_eq!((a.edges()[4].from, a.edges()[4].to), (0, 1));
        assert_eq!((a.edges()[5].from, a.edges()[5].to), (1, 0));
    }

    #[test]
    fn golden_mean_shape() {
        let a = builtin("golden-mean").unwrap();
        let pairs: Vec<_> = a.edges().iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 0)]);
        assert!(a.matched_pairs().is_empty());
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(builtin("nope"), Err(AutomatonError::UnknownBuiltin(_))));
        assert!(builtin("dyck-0").is_err());
        assert!(builtin("motzkin-2").is_err());
        assert_eq!(builtin("dyck-3").unwrap().alphabet().len(), 6);
        assert_eq!(builtin("motzkin-5-2").unwrap().alphabet().len(), 12);
    }
}
