//! Admissibility straight from the matched-factor condition: every factor
//! `(p, a, q) π (r, b, s)` of a path with `a` a call, `b` a return and the
//! label of `π` a Dyck word must use a matched pair of edges. Enumerates
//! every labeled path, so it is only suitable for short words.

use std::collections::BTreeSet;

use super::{DyckAutomaton, Run};
use crate::words::{is_dyck, Letter, LetterClass, Word};

/// The runs of `u` whose paths satisfy the factor condition.
pub fn factor_condition_runs(a: &DyckAutomaton, u: &[Letter]) -> BTreeSet<Run> {
    let alpha = a.alphabet();
    let mut out = BTreeSet::new();
    if u.is_empty() {
        for s in 0..a.state_count() {
            out.insert(Run {
                start: s,
                end: s,
                residual_stack: Vec::new(),
            });
        }
        return out;
    }
    let mut pairs = Vec::new();
    for i in 0..u.len() {
        if alpha.class(u[i]) != LetterClass::Call {
            continue;
        }
        for j in i + 1..u.len() {
            if alpha.class(u[j]) == LetterClass::Return && is_dyck(alpha, &u[i + 1..j]) {
                pairs.push((i, j));
            }
        }
    }
    let unmatched_calls: Vec<usize> = (0..u.len())
        .filter(|&i| alpha.class(u[i]) == LetterClass::Call && !pairs.iter().any(|(c, _)| *c == i))
        .collect();

    fn extend(
        a: &DyckAutomaton,
        u: &[Letter],
        pairs: &[(usize, usize)],
        unmatched: &[usize],
        path: &mut Vec<usize>,
        out: &mut BTreeSet<Run>,
    ) {
        let j = path.len();
        if j == u.len() {
            out.insert(Run {
                start: a.edges()[path[0]].from,
                end: a.edges()[path[j - 1]].to,
                residual_stack: unmatched.iter().map(|&i| path[i]).collect(),
            });
            return;
        }
        let candidates: Vec<usize> = if j == 0 {
            (0..a.edges().len()).filter(|&e| a.edges()[e].label == u[0]).collect()
        } else {
            a.outgoing(a.edges()[path[j - 1]].to, u[j]).to_vec()
        };
        for e in candidates {
            // factors ending at position j
            if pairs.iter().filter(|(_, r)| *r == j).all(|&(c, _)| a.is_matched(path[c], e)) {
                path.push(e);
                extend(a, u, pairs, unmatched, path, out);
                path.pop();
            }
        }
    }
    extend(a, u, &pairs, &unmatched_calls, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackEquivalenceReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// A word on which the stack matcher and the factor condition disagree.
    pub witness: Option<Word>,
}

impl StackEquivalenceReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Compares [`DyckAutomaton::admissible_runs`] with [`factor_condition_runs`]
/// on every word of length at most `max_len` whose proper prefixes are admissible.
pub fn stack_equivalence_check(a: &DyckAutomaton, max_len: usize) -> StackEquivalenceReport {
    fn rec(a: &DyckAutomaton, max_len: usize, u: &mut Vec<Letter>, checked: &mut usize) -> Option<Word> {
        let naive = factor_condition_runs(a, u);
        *checked += 1;
        if a.admissible_runs(u) != naive {
            return Some(Word(u.clone()));
        }
        if naive.is_empty() || u.len() == max_len {
            return None;
        }
        for l in a.alphabet().letters() {
            u.push(l);
            let found = rec(a, max_len, u, checked);
            u.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let mut words_checked = 0;
    let witness = rec(a, max_len, &mut Vec::new(), &mut words_checked);
    StackEquivalenceReport {
        max_len,
        words_checked,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{builtin, builtin_names};

    #[test]
    fn builtins_agree() {
        for name in builtin_names() {
            let r = stack_equivalence_check(&builtin(name).unwrap(), 5);
            assert!(r.passed(), "{name}: {:?}", r.witness);
            assert!(r.words_checked > 1);
        }
    }

    #[test]
    fn unmatched_pair_is_rejected() {
        let a = builtin("fig2").unwrap();
        let u = a.parse_word("a b'").unwrap();
        assert!(factor_condition_runs(&a, &u).is_empty());
        let v = a.parse_word("a i").unwrap();
        let runs = factor_condition_runs(&a, &v);
        assert_eq!(runs.len(), 1);
        assert_eq!(runs.iter().next().unwrap().residual_stack.len(), 1);
    }
}
