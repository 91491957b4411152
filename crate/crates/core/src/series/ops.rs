//! Inverse, star, exp, log and powers, generic over [`Series`].
//!
//! Each is a Horner evaluation of the defining power series; with a zero
//! constant term in the argument, `cap` steps reach every coefficient.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Series, SeriesError};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `1 / s`; the constant term must be nonzero.
pub fn inverse<S: Series>(s: &S) -> Result<S, SeriesError> {
    let c0 = s.constant_term();
    if c0.is_zero() {
        return Err(SeriesError::NotInvertible);
    }
    let inv_c0 = c0.recip();
    let cap = s.cap();
    // s = c0 (1 - t)  =>  1/s = (1/c0) Σ t^k
    let t = S::one(cap).minus(&s.scaled(&inv_c0));
    if t.is_zero() {
        return Ok(S::constant(inv_c0, cap));
    }
    let one = S::one(cap);
    let mut r = one.clone();
    for _ in 0..cap {
        r = one.plus(&t.times(&r));
    }
    Ok(r.scaled(&inv_c0))
}

/// `(1 - s)^{-1} = Σ s^k`; the constant term must be zero.
pub fn star<S: Series>(s: &S) -> Result<S, SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstant("star"));
    }
    inverse(&S::one(s.cap()).minus(s))
}

/// `Σ s^k / k!`; the constant term must be zero.
pub fn exp_series<S: Series>(s: &S) -> Result<S, SeriesError> {
    if !s.constant_term().is_zero() {
        return Err(SeriesError::NonzeroConstant("exp"));
    }
    let cap = s.cap();
    let one = S::one(cap);
    let mut r = one.clone();
    for k in (1..=cap as i64).rev() {
        r = one.plus(&s.times(&r).scaled(&ratio(1, k)));
    }
    Ok(r)
}

/// `log s = Σ (-1)^{k+1} (s-1)^k / k`; the constant term must be 1.
pub fn log_series<S: Series>(s: &S) -> Result<S, SeriesError> {
    if !s.constant_term().is_one() {
        return Err(SeriesError::ConstantNotOne);
    }
    let cap = s.cap();
    if cap == 0 {
        return Ok(S::zero(0));
    }
    let t = s.minus(&S::one(cap));
    let sign = |k: i64| if k % 2 == 1 { 1 } else { -1 };
    let mut r = S::constant(ratio(sign(cap as i64), cap as i64), cap);
    for k in (1..cap as i64).rev() {
        r = S::constant(ratio(sign(k), k), cap).plus(&t.times(&r));
    }
    Ok(t.times(&r))
}

pub fn pow<S: Series>(s: &S, mut e: u32) -> S {
    let mut base = s.clone();
    let mut acc = S::one(s.cap());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.times(&base);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{MultiSeries, TruncatedSeries};

    fn s(c: &[i64], cap: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(c, cap)
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&s(&[], 4)).unwrap(), s(&[1], 4));
        assert_eq!(star(&s(&[0, 1], 4)).unwrap(), s(&[1, 1, 1, 1, 1], 4));
        assert_eq!(star(&s(&[0, 2], 2)).unwrap(), s(&[1, 2, 4], 2));
        assert_eq!(star(&s(&[1], 2)), Err(SeriesError::NonzeroConstant("star")));
    }

    #[test]
    fn inverse_of_non_unit_constant() {
        let two_minus_z = s(&[2, -1], 3);
        let inv = inverse(&two_minus_z).unwrap();
        assert_eq!(&inv * &two_minus_z, s(&[1], 3));
        assert_eq!(inverse(&s(&[0, 1], 3)), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(exp_series(&s(&[], 3)).unwrap(), s(&[1], 3));
        let geo = star(&s(&[0, 1], 3)).unwrap();
        let expected = TruncatedSeries::new(vec![ratio(0, 1), ratio(1, 1), ratio(1, 2), ratio(1, 3)], 3);
        assert_eq!(log_series(&geo).unwrap(), expected);
        assert_eq!(log_series(&s(&[2], 3)), Err(SeriesError::ConstantNotOne));
    }

    #[test]
    fn golden_mean_counts_exponentiate() {
        // Σ p_n z^n / n with p = 1, 3, 4
        let sum = TruncatedSeries::new(vec![ratio(0, 1), ratio(1, 1), ratio(3, 2), ratio(4, 3)], 3);
        assert_eq!(exp_series(&sum).unwrap(), s(&[1, 1, 2, 3], 3));
    }

    #[test]
    fn multivariate_star() {
        let a = MultiSeries::var("a", 3);
        let st = star(&a).unwrap();
        assert_eq!(st.to_string(), "1 + a + a^2 + a^3");
        assert_eq!(pow(&a, 2).to_string(), "a^2");
    }
}
