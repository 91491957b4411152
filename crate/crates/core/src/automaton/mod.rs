//! Dyck automata and their admissible runs.
//!
//! A run is simulated with a stack of call-edge indices: reading a call edge
//! pushes it, reading a return edge pops the top call edge and requires the
//! pair to be matched, internal edges leave the stack alone. A return read on
//! an empty stack is unconstrained, since its call lies outside the word.

mod builtin;
mod determinism;
mod factor_check;
mod json;
mod periodic;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::words::{AlphabetError, Letter, LetterClass, PushdownAlphabet, Word};

pub use builtin::{builtin, builtin_names};
pub use determinism::{
    check_h_codeterminism, check_h_determinism, DeterminismProperty, DeterminismReport, DeterminismWitness,
};
pub use factor_check::{factor_condition_runs, stack_equivalence_check, StackEquivalenceReport};
pub use json::{AlphabetDocument, AutomatonDocument, Diagnostic, EdgeDocument};
pub use periodic::DEFAULT_MAX_SET_STATES;

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("invalid automaton: {}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("malformed automaton JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("unknown builtin automaton `{name}` (known: {known})", name = .0, known = builtin_names().join(", "))]
    UnknownBuiltin(String),
    #[error("a periodic pattern must be a nonempty word")]
    EmptyPattern,
    #[error("periodicity oracle exceeded {0} configuration sets")]
    OracleOverflow(usize),
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: Letter,
    pub to: usize,
}

/// A labeled graph over a pushdown alphabet together with a set of matched
/// (call edge, return edge) pairs. Edges are identified by their position.
#[derive(Clone, Debug)]
pub struct DyckAutomaton {
    alphabet: PushdownAlphabet,
    states: Vec<String>,
    edges: Vec<Edge>,
    matched: Vec<(usize, usize)>,
    matched_set: HashSet<(usize, usize)>,
    // outgoing[state][letter] -> edge indices
    outgoing: Vec<Vec<Vec<usize>>>,
}

/// A configuration of the stack semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunConfiguration {
    pub state: usize,
    /// Pending call-edge indices, top at the end.
    pub stack: Vec<usize>,
}

/// One admissible run of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub residual_stack: Vec<usize>,
}

impl DyckAutomaton {
    pub fn from_document(doc: &AutomatonDocument) -> Result<Self, AutomatonError> {
        let diagnostics = doc.validate();
        if !diagnostics.is_empty() {
            return Err(AutomatonError::Invalid(diagnostics));
        }
        let alphabet = PushdownAlphabet::new(&doc.alphabet.call, &doc.alphabet.ret, &doc.alphabet.internal)?;
        let state_index: HashMap<&str, usize> =
            doc.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let edges: Vec<Edge> = doc
            .edges
            .iter()
            .map(|e| Edge {
                from: state_index[e.from.as_str()],
                label: alphabet.letter(&e.label).expect("validated label"),
                to: state_index[e.to.as_str()],
            })
            .collect();
        let mut matched: Vec<(usize, usize)> = doc.matched.iter().map(|&[c, r]| (c, r)).collect();
        matched.sort_unstable();
        let matched_set = matched.iter().copied().collect();
        let mut outgoing = vec![vec![Vec::new(); alphabet.len()]; doc.states.len()];
        for (i, e) in edges.iter().enumerate() {
            outgoing[e.from][e.label.index()].push(i);
        }
        Ok(DyckAutomaton {
            alphabet,
            states: doc.states.clone(),
            edges,
            matched,
            matched_set,
            outgoing,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, AutomatonError> {
        Self::from_document(&AutomatonDocument::from_json(text)?)
    }

    pub fn to_document(&self) -> AutomatonDocument {
        let a = &self.alphabet;
        AutomatonDocument {
            alphabet: AlphabetDocument {
                call: a.tokens_of(LetterClass::Call),
                ret: a.tokens_of(LetterClass::Return),
                internal: a.tokens_of(LetterClass::Internal),
            },
            states: self.states.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument::new(&self.states[e.from], a.token(e.label), &self.states[e.to]))
                .collect(),
            matched: self.matched.iter().map(|&(c, r)| [c, r]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    /// Diagnostics for this automaton; always empty for a constructed value.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_document().validate()
    }

    pub fn alphabet(&self) -> &PushdownAlphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, id: &str) -> Option<usize> {
        self.states.iter().position(|s| s == id)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn matched_pairs(&self) -> &[(usize, usize)] {
        &self.matched
    }

    pub fn is_matched(&self, call_edge: usize, return_edge: usize) -> bool {
        self.matched_set.contains(&(call_edge, return_edge))
    }

    pub fn outgoing(&self, state: usize, letter: Letter) -> &[usize] {
        &self.outgoing[state][letter.index()]
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, AutomatonError> {
        Ok(self.alphabet.parse_word(text)?)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        self.alphabet.render(word)
    }

    /// Successor configurations of `config` on `letter`.
    pub(crate) fn step_config(&self, config: &RunConfiguration, letter: Letter, mut emit: impl FnMut(RunConfiguration)) {
        let class = self.alphabet.class(letter);
        for &ei in self.outgoing(config.state, letter) {
            let e = &self.edges[ei];
            match class {
                LetterClass::Internal => emit(RunConfiguration {
                    state: e.to,
                    stack: config.stack.clone(),
                }),
                LetterClass::Call => {
                    let mut stack = config.stack.clone();
                    stack.push(ei);
                    emit(RunConfiguration { state: e.to, stack });
                }
                LetterClass::Return => match config.stack.last() {
                    None => emit(RunConfiguration {
                        state: e.to,
                        stack: Vec::new(),
                    }),
                    Some(&top) => {
                        if self.is_matched(top, ei) {
                            let mut stack = config.stack.clone();
                            stack.pop();
                            emit(RunConfiguration { state: e.to, stack });
                        }
                    }
                },
            }
        }
    }

    /// Path-counting simulation from `start`: configuration -> number of
    /// edge paths reaching it.
    fn simulate_counts(&self, start: usize, u: &[Letter]) -> BTreeMap<RunConfiguration, u128> {
        let mut cur = BTreeMap::new();
        cur.insert(
            RunConfiguration {
                state: start,
                stack: Vec::new(),
            },
            1u128,
        );
        for &l in u {
            let mut next: BTreeMap<RunConfiguration, u128> = BTreeMap::new();
            for (cfg, &n) in &cur {
                self.step_config(cfg, l, |c| *next.entry(c).or_insert(0) += n);
            }
            if next.is_empty() {
                return next;
            }
            cur = next;
        }
        cur
    }

    /// All admissible runs of `u`, one per (start, end, residual stack).
    pub fn admissible_runs(&self, u: &[Letter]) -> BTreeSet<Run> {
        let mut out = BTreeSet::new();
        for start in 0..self.states.len() {
            for cfg in self.simulate_counts(start, u).into_keys() {
                out.insert(Run {
                    start,
                    end: cfg.state,
                    residual_stack: cfg.stack,
                });
            }
        }
        out
    }

    pub fn is_admissible_word(&self, u: &[Letter]) -> bool {
        let mut cur: BTreeSet<RunConfiguration> = (0..self.states.len())
            .map(|state| RunConfiguration { state, stack: Vec::new() })
            .collect();
        for &l in u {
            let mut next = BTreeSet::new();
            for cfg in &cur {
                self.step_config(cfg, l, |c| {
                    next.insert(c);
                });
            }
            if next.is_empty() {
                return false;
            }
            cur = next;
        }
        !cur.is_empty()
    }

    /// Number of admissible edge paths labeled `u` from `p` to `q`.
    pub fn count_runs(&self, u: &[Letter], p: usize, q: usize) -> u128 {
        self.simulate_counts(p, u)
            .into_iter()
            .filter(|(c, _)| c.state == q)
            .map(|(_, n)| n)
            .sum()
    }

    /// Pairs (p, q) such that `u` labels an admissible path from p to q.
    pub fn run_endpoints(&self, u: &[Letter]) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for start in 0..self.states.len() {
            let mut cur: BTreeSet<RunConfiguration> = BTreeSet::new();
            cur.insert(RunConfiguration {
                state: start,
                stack: Vec::new(),
            });
            for &l in u {
                let mut next = BTreeSet::new();
                for cfg in &cur {
                    self.step_config(cfg, l, |c| {
                        next.insert(c);
                    });
                }
                cur = next;
                if cur.is_empty() {
                    break;
                }
            }
            out.extend(cur.into_iter().map(|c| (start, c.state)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motzkin() -> DyckAutomaton {
        builtin("motzkin-2-1").unwrap()
    }

    #[test]
    fn fig1_runs() {
        let a = motzkin();
        let u = a.parse_word("( )").unwrap();
        let runs = a.admissible_runs(&u);
        assert_eq!(runs.len(), 1);
        let r = runs.iter().next().unwrap();
        assert_eq!((r.start, r.end), (0, 0));
        assert!(r.residual_stack.is_empty());

        let bad = a.parse_word("( ]").unwrap();
        assert!(a.admissible_runs(&bad).is_empty());
        assert_eq!(a.count_runs(&bad, 0, 0), 0);
        assert!(!a.is_admissible_word(&bad));
    }

    #[test]
    fn empty_word_has_one_run_per_state() {
        let a = builtin("fig2").unwrap();
        assert_eq!(a.admissible_runs(&[]).len(), 2);
        assert_eq!(a.count_runs(&[], 1, 1), 1);
        assert_eq!(a.count_runs(&[], 0, 1), 0);
    }

    #[test]
    fn fig2_matched_loop() {
        let a = builtin("fig2").unwrap();
        let u = a.parse_word("a i i b").unwrap();
        assert!(a.count_runs(&u, 0, 0) >= 1);
        let v = a.parse_word("a i i b'").unwrap();
        assert_eq!(a.count_runs(&v, 0, 0), 0);
    }

    #[test]
    fn unmatched_return_is_free() {
        let a = motzkin();
        let u = a.parse_word(") ] ( [").unwrap();
        let runs = a.admissible_runs(&u);
        assert_eq!(runs.len(), 1);
        assert_eq!(runs.iter().next().unwrap().residual_stack.len(), 2);
    }

    #[test]
    fn validate_diagnostics() {
        let mut doc = builtin("motzkin-2-1").unwrap().to_document();
        assert!(doc.validate().is_empty());
        // point a matched pair at the internal loop
        let internal = doc.edges.iter().position(|e| e.label == "i").unwrap();
        doc.matched[0][1] = internal;
        let d = doc.validate();
        assert_eq!(d.len(), 1);
        assert!(matches!(d[0], Diagnostic::MatchedNotReturn { .. }));

        let mut doc = builtin("motzkin-2-1").unwrap().to_document();
        doc.edges.push(EdgeDocument::new("1", "z", "1"));
        let d = doc.validate();
        assert_eq!(d, vec![Diagnostic::UnknownLabel { edge: 5, label: "z".into() }]);
        assert!(DyckAutomaton::from_document(&doc).is_err());
    }

    #[test]
    fn json_roundtrip_is_canonical() {
        for name in builtin_names() {
            let a = builtin(name).unwrap();
            let text = a.to_json();
            let b = DyckAutomaton::from_json(&text).unwrap();
            assert_eq!(b.to_json(), text);
        }
        let a = builtin("dyck-1").unwrap();
        assert_eq!(
            a.to_json(),
            r#"{"alphabet":{"call":["a1"],"return":["b1"],"internal":[]},"states":["1"],"edges":[{"from":"1","label":"a1","to":"1"},{"from":"1","label":"b1","to":"1"}],"matched":[[0,1]]}"#
        );
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"alphabet":{"call":[],"return":[],"internal":["i"]},"states":["1"],"edges":[],"matched":[],"extra":1}"#;
        assert!(matches!(DyckAutomaton::from_json(text), Err(AutomatonError::Json(_))));
    }
}
