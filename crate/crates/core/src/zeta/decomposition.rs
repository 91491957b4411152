//! Splitting periodic points between the two matrix languages.
//!
//! `u^∞` lies in the shift of bi-infinite `H`-concatenations iff it can be
//! cut into `H`-words along a periodic state path. With `n = |u|`, that is a
//! cycle in the graph on `(offset mod n, state)` whose arcs are the factors
//! of `u^∞` of length at most `n(n+2)` lying in some `H_pq`.

use super::ZetaError;
use crate::automaton::DyckAutomaton;
use crate::languages::{membership_pairs, HKind};
use crate::words::{Letter, Word};

/// Whether `u^∞` is a concatenation of words of `H` along a state path.
pub fn periodic_in_h(a: &DyckAutomaton, u: &[Letter], kind: HKind) -> bool {
    let n = u.len();
    if n == 0 {
        return false;
    }
    let q = a.state_count();
    let max_factor = n * (n + 2);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * q];
    let mut factor = Vec::with_capacity(max_factor);
    for i in 0..n {
        factor.clear();
        for len in 1..=max_factor {
            factor.push(u[(i + len - 1) % n]);
            for (p, r) in membership_pairs(a, &factor, kind) {
                adj[i * q + p].push(((i + len) % n) * q + r);
            }
        }
    }
    has_cycle(&adj)
}

fn has_cycle(adj: &[Vec<usize>]) -> bool {
    // 0 = unvisited, 1 = on the stack, 2 = done
    let mut color = vec![0u8; adj.len()];
    for root in 0..adj.len() {
        if color[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionViolation {
    pub word: Word,
    pub in_shift: bool,
    pub in_left: bool,
    pub in_right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub violations: Vec<DecompositionViolation>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every word `u` of length `1..=max_len`, that `u^∞` is in
/// the shift exactly when it is in exactly one of the `C*M_c` and
/// `M_r + C` shifts.
pub fn decomposition_check(a: &DyckAutomaton, max_len: usize) -> Result<DecompositionReport, ZetaError> {
    let k = a.alphabet().len();
    let mut violations = Vec::new();
    let mut words_checked = 0;
    for n in 1..=max_len {
        let total = k.checked_pow(n as u32).expect("word count fits in usize");
        for index in 0..total {
            // base-k digits of `index`, most significant first
            let mut u = vec![Letter(0); n];
            let mut rest = index;
            for slot in u.iter_mut().rev() {
                *slot = Letter((rest % k) as u16);
                rest /= k;
            }
            let in_shift = a.is_periodic_pattern(&u)?;
            let in_left = periodic_in_h(a, &u, HKind::CStarMc);
            let in_right = periodic_in_h(a, &u, HKind::MrPlusC);
            words_checked += 1;
            if (in_left && in_right) || in_shift != (in_left || in_right) {
                violations.push(DecompositionViolation {
                    word: Word(u),
                    in_shift,
                    in_left,
                    in_right,
                });
            }
        }
    }
    Ok(DecompositionReport {
        max_len,
        words_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;

    #[test]
    fn fig2_examples() {
        let a = builtin("fig2").unwrap();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert!(periodic_in_h(&a, &w("a"), HKind::CStarMc));
        assert!(!periodic_in_h(&a, &w("a"), HKind::MrPlusC));
        assert!(periodic_in_h(&a, &w("i"), HKind::MrPlusC));
    }

    #[test]
    fn cycles() {
        assert!(has_cycle(&[vec![1], vec![0]]));
        assert!(!has_cycle(&[vec![1], vec![]]));
        assert!(has_cycle(&[vec![0]]));
    }

    #[test]
    fn builtins_decompose() {
        for name in ["fig2", "motzkin-1-1", "golden-mean"] {
            let a = builtin(name).unwrap();
            let r = decomposition_check(&a, 4).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.violations);
        }
    }
}
