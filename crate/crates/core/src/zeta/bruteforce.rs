//! Periodic points by enumeration.
//!
//! Every word `u` of length `n` is `v^{n/d}` for a unique primitive `v`, and
//! the `d` rotations of `v` give the same orbit. So
//! `p_n = Σ_{d | n} d · L_d` where `L_d` counts the Lyndon words `v` of
//! length `d` with `v^∞` in the shift. Lyndon words are generated as the
//! `p = t` nodes of the prenecklace tree (Fredricksen-Kessler-Maiorana);
//! a prefix with no admissible run prunes its subtree, since every power
//! of an extension starts with it.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{counts::zeta_from_counts, PeriodicCountTable, ZetaError};
use crate::automaton::{DyckAutomaton, RunConfiguration};
use crate::series::TruncatedSeries;
use crate::words::{Letter, Word};

/// `L_d` for `d = 1..=max_len` (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCountsByLength {
    pub lyndon: Vec<u128>,
}

impl PeriodicCountsByLength {
    pub fn p(&self, n: usize) -> u128 {
        (1..=n).filter(|d| n % d == 0).map(|d| d as u128 * self.lyndon[d]).sum()
    }

    pub fn table(&self) -> PeriodicCountTable {
        PeriodicCountTable::from_counts((1..self.lyndon.len()).map(|n| (n, BigInt::from(self.p(n)))))
    }
}

struct Node {
    prefix: Vec<Letter>,
    period: usize,
    configs: Vec<RunConfiguration>,
}

fn children(a: &DyckAutomaton, node: &Node) -> Vec<Node> {
    let t = node.prefix.len();
    let k = a.alphabet().len() as u16;
    let lo = if t == 0 { 0 } else { node.prefix[t - node.period].0 };
    let mut out = Vec::new();
    for j in lo..k {
        let letter = Letter(j);
        let configs = a.step_set(&node.configs, letter);
        if configs.is_empty() {
            continue;
        }
        let period = if t > 0 && j == lo { node.period } else { t + 1 };
        let mut prefix = node.prefix.clone();
        prefix.push(letter);
        out.push(Node { prefix, period, configs });
    }
    out
}

fn explore(a: &DyckAutomaton, node: Node, max_len: usize, counts: &mut [u128]) -> Result<(), ZetaError> {
    let t = node.prefix.len();
    if t > 0 && node.period == t && a.is_periodic_pattern(&node.prefix)? {
        counts[t] += 1;
    }
    if t == max_len {
        return Ok(());
    }
    for child in children(a, &node) {
        explore(a, child, max_len, counts)?;
    }
    Ok(())
}

/// Lyndon-word counts up to `max_len`, split across `workers` threads
/// (0 = rayon default). The result does not depend on `workers`.
pub fn lyndon_counts(a: &DyckAutomaton, max_len: usize, workers: usize) -> Result<PeriodicCountsByLength, ZetaError> {
    let mut counts = vec![0u128; max_len + 1];
    // expand a few levels so the work splits into many subtrees
    let mut frontier = vec![Node {
        prefix: Vec::new(),
        period: 0,
        configs: a.initial_configs(),
    }];
    let split_depth = max_len.min(3);
    for _ in 0..split_depth {
        let mut next = Vec::new();
        for node in frontier {
            let t = node.prefix.len();
            if t > 0 && node.period == t && a.is_periodic_pattern(&node.prefix)? {
                counts[t] += 1;
            }
            next.extend(children(a, &node));
        }
        frontier = next;
    }
    let run = |frontier: Vec<Node>| -> Result<Vec<u128>, ZetaError> {
        frontier
            .into_par_iter()
            .map(|node| {
                let mut local = vec![0u128; max_len + 1];
                explore(a, node, max_len, &mut local).map(|_| local)
            })
            .try_reduce(
                || vec![0u128; max_len + 1],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                    Ok(x)
                },
            )
    };
    let sub = if workers == 0 {
        run(frontier)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| run(frontier))?
    };
    counts.iter_mut().zip(sub).for_each(|(a, b)| *a += b);
    Ok(PeriodicCountsByLength { lyndon: counts })
}

/// Number of words `u` of length `n` with `u^∞` in the shift.
pub fn pn_bruteforce(a: &DyckAutomaton, n: usize) -> Result<u128, ZetaError> {
    if n == 0 {
        return Ok(0);
    }
    Ok(lyndon_counts(a, n, 0)?.p(n))
}

/// `exp Σ p_n z^n / n` with brute-force `p_n`, `n ≤ cap`.
pub fn zeta_bruteforce(a: &DyckAutomaton, cap: usize, workers: usize) -> Result<TruncatedSeries, ZetaError> {
    let table = lyndon_counts(a, cap, workers)?.table();
    Ok(zeta_from_counts(&table, cap))
}

/// All periodic patterns of length `n`, in lexicographic letter order.
pub fn periodic_patterns(a: &DyckAutomaton, n: usize) -> Result<Vec<Word>, ZetaError> {
    fn rec(
        a: &DyckAutomaton,
        n: usize,
        prefix: &mut Vec<Letter>,
        configs: &[RunConfiguration],
        out: &mut Vec<Word>,
    ) -> Result<(), ZetaError> {
        if prefix.len() == n {
            if a.is_periodic_pattern(prefix)? {
                out.push(Word(prefix.clone()));
            }
            return Ok(());
        }
        for letter in a.alphabet().letters() {
            let next = a.step_set(configs, letter);
            if next.is_empty() {
                continue;
            }
            prefix.push(letter);
            rec(a, n, prefix, &next, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(a, n, &mut Vec::new(), &a.initial_configs(), &mut out)?;
    }
    Ok(out)
}
