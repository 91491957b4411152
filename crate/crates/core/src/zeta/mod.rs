//! Zeta functions of the presented shift.
//!
//! * [`zeta_bruteforce`] counts periodic patterns with the periodicity oracle.
//! * [`zeta_det_route`] multiplies `det(I - H_{⊗ℓ})^{±1}` over the exterior
//!   powers of `C*M_c` (forward) and `M_r + C` (reverse).
//! * [`zeta_subst_route`] computes the zeta function of the pattern graph
//!   `G_H` over pattern letters and substitutes the pattern series.

mod bruteforce;
mod counts;
mod decomposition;
mod exterior;
mod routes;

use thiserror::Error;

use crate::automaton::{AutomatonError, DeterminismReport};
use crate::languages::{HKind, LanguageError, PairSet};
use crate::series::SeriesError;

pub use bruteforce::{periodic_patterns, pn_bruteforce, zeta_bruteforce, PeriodicCountsByLength};
pub use counts::{counts_from_zeta, entropy_estimate, zeta_from_counts, PeriodicCountTable};
pub use decomposition::{decomposition_check, periodic_in_h, DecompositionReport, DecompositionViolation};
pub use exterior::{exterior_power, exterior_power_by_enumeration, exterior_from_patterns, subset_label};
pub use routes::{
    pattern_graph, sofic_zeta, zeta_det_route, zeta_subst_route, PatternAlphabet, PatternLetter,
    DEFAULT_DETERMINISM_CHECK_LEN,
};

/// Which determinism an exterior power relies on: forward for `C*M_c`,
/// reverse for `M_r + C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

#[derive(Debug, Error)]
pub enum ZetaError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{}", precondition_message(.0))]
    Precondition(Box<DeterminismReport>),
    #[error("{kind} words with pattern {pattern} have several runs from one {side}")]
    Ambiguous { kind: HKind, pattern: PairSet, side: &'static str },
    #[error("pattern graph is neither letter-deterministic nor letter-codeterministic")]
    AmbiguousGraph,
    #[error("zeta series must have constant term 1")]
    ConstantNotOne,
    #[error("p_{0} is not an integer")]
    NonIntegral(usize),
    #[error("p_{0} is negative")]
    Negative(usize),
    #[error("orbit count of length {0} is not a nonnegative integer")]
    OrbitDivisibility(usize),
}

fn precondition_message(r: &DeterminismReport) -> String {
    let reduction = match r.property {
        crate::automaton::DeterminismProperty::HDeterministic => "left-reduced",
        crate::automaton::DeterminismProperty::HCodeterministic => "right-reduced",
    };
    let detail = match &r.witness {
        Some(w) => format!(
            " (word of length {} has runs {:?} and {:?})",
            w.word.len(),
            w.first,
            w.second
        ),
        None => String::new(),
    };
    format!(
        "automaton is not {} for {} up to length {}{detail}; supply a {reduction} presentation",
        r.property, r.kind, r.max_length_checked
    )
}
