//! Periodic-pattern oracle: decides whether the bi-infinite word `u^∞`
//! belongs to the presented shift.
//!
//! `u^∞` is in the shift iff every power `u^k` labels an admissible path.
//! The set of configurations reachable after `u^k` (from every state, empty
//! stack) evolves by a fixed map once stacks are cut to their top
//! `|u|·(|u|+2)` entries; deeper entries are never popped again. The
//! sequence of truncated sets is therefore eventually periodic, and the
//! answer is whether it cycles before becoming empty.

use std::collections::HashSet;

use super::{AutomatonError, DyckAutomaton, RunConfiguration};
use crate::words::Letter;

/// Hard cap on distinct configuration sets visited by the oracle.
pub const DEFAULT_MAX_SET_STATES: usize = 10_000;

impl DyckAutomaton {
    /// Configurations after reading `letter` from any of `configs`, sorted and deduplicated.
    pub(crate) fn step_set(&self, configs: &[RunConfiguration], letter: Letter) -> Vec<RunConfiguration> {
        let mut next = Vec::new();
        for cfg in configs {
            self.step_config(cfg, letter, |c| next.push(c));
        }
        next.sort_unstable();
        next.dedup();
        next
    }

    pub(crate) fn initial_configs(&self) -> Vec<RunConfiguration> {
        (0..self.state_count())
            .map(|state| RunConfiguration { state, stack: Vec::new() })
            .collect()
    }

    pub fn is_periodic_pattern(&self, u: &[Letter]) -> Result<bool, AutomatonError> {
        self.is_periodic_pattern_with(u, DEFAULT_MAX_SET_STATES)
    }

    pub fn is_periodic_pattern_with(&self, u: &[Letter], max_set_states: usize) -> Result<bool, AutomatonError> {
        if u.is_empty() {
            return Err(AutomatonError::EmptyPattern);
        }
        let depth = u.len() * (u.len() + 2);
        let mut cur = self.initial_configs();
        if cur.is_empty() {
            return Ok(false);
        }
        let mut seen: HashSet<Vec<RunConfiguration>> = HashSet::new();
        seen.insert(cur.clone());
        loop {
            for &l in u {
                cur = self.step_set(&cur, l);
                if cur.is_empty() {
                    return Ok(false);
                }
            }
            let mut truncated = false;
            for cfg in &mut cur {
                if cfg.stack.len() > depth {
                    let excess = cfg.stack.len() - depth;
                    cfg.stack.drain(..excess);
                    truncated = true;
                }
            }
            if truncated {
                cur.sort_unstable();
                cur.dedup();
            }
            if seen.contains(&cur) {
                return Ok(true);
            }
            if seen.len() >= max_set_states {
                return Err(AutomatonError::OracleOverflow(max_set_states));
            }
            seen.insert(cur.clone());
        }
    }
}
