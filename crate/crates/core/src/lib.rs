//! Zeta functions of sofic-Dyck shifts.
//!
//! A [`DyckAutomaton`](automaton::DyckAutomaton) presents a shift of
//! bi-infinite words over a pushdown alphabet. The [`zeta`] module computes
//! its zeta function three ways: by counting periodic patterns directly, by
//! a product of determinants over exterior powers of language matrices, and
//! by substituting pattern-class series into the zeta function of an
//! auxiliary sofic shift.

pub mod automaton;
pub mod languages;
pub mod series;
pub mod words;
pub mod zeta;

pub use automaton::{builtin, DyckAutomaton};
pub use languages::HKind;
pub use series::{MultiSeries, Series, SeriesMatrix, TruncatedSeries};
pub use words::{Letter, PushdownAlphabet, Word};
