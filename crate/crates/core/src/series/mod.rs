//! Truncated formal power series with exact rational coefficients.
//!
//! [`TruncatedSeries`] is univariate in `z`; [`MultiSeries`] has one
//! commuting variable per letter token and truncates by total degree. Code
//! that works for both is written against the [`Series`] trait.

mod json;
mod matrix;
mod multivariate;
mod ops;
mod univariate;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use json::{MultiSeriesJson, TermJson, UnivariateJson};
pub use matrix::SeriesMatrix;
pub use multivariate::{Monomial, MultiSeries};
pub use ops::{exp_series, inverse, log_series, pow, star};
pub use univariate::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("{0} requires a zero constant term")]
    NonzeroConstant(&'static str),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("logarithm requires constant term 1")]
    ConstantNotOne,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix has {rows} labels but {entries} entries")]
    NotSquare { rows: usize, entries: usize },
    #[error("no substitution given for letter `{0}`")]
    MissingSubstitution(String),
    #[error("invalid series JSON: {0}")]
    Json(String),
}

/// Operations shared by univariate and multivariate truncated series.
///
/// Binary operations on series with different caps truncate to the smaller cap.
pub trait Series: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero(cap: usize) -> Self;
    fn constant(c: BigRational, cap: usize) -> Self;
    fn cap(&self) -> usize;
    fn constant_term(&self) -> BigRational;
    fn is_zero(&self) -> bool;
    /// Number of stored nonzero coefficients.
    fn term_count(&self) -> usize;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &BigRational) -> Self;
    /// Drops every term above `cap`; a larger `cap` leaves the series unchanged.
    fn truncated(&self, cap: usize) -> Self;

    fn one(cap: usize) -> Self {
        Self::constant(BigRational::from_integer(1.into()), cap)
    }

    fn from_int(c: i64, cap: usize) -> Self {
        Self::constant(BigRational::from_integer(c.into()), cap)
    }
}

/// Series that can represent the weight of a single letter: `z` in the
/// univariate case, the letter's own variable in the multivariate case.
pub trait LetterSeries: Series {
    fn letter(token: &str, cap: usize) -> Self;
}

pub(crate) fn check_caps(a: usize, b: usize) -> Result<(), SeriesError> {
    if a == b {
        Ok(())
    } else {
        Err(SeriesError::CapMismatch(a, b))
    }
}

/// Formats a rational coefficient as `3`, `-1/2`.
pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, SeriesError> {
    let bad = || SeriesError::Json(format!("bad coefficient {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Joins `(coefficient, monomial text)` terms as `1 + 2*z - z^2`.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (&'a BigRational, String)>) -> String {
    use num_traits::{One, Signed};
    let mut out = String::new();
    for (c, mono) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
