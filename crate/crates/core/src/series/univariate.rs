use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_caps, render_terms, LetterSeries, Series, SeriesError};

/// `c_0 + c_1 z + … + c_N z^N`, with everything above degree `N = cap` discarded.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    cap: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Coefficients beyond `cap` are dropped; missing ones are zero.
    pub fn new(mut coeffs: Vec<BigRational>, cap: usize) -> Self {
        coeffs.resize(cap + 1, BigRational::zero());
        TruncatedSeries { cap, coeffs }
    }

    pub fn from_integers(coeffs: &[i64], cap: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), cap)
    }

    pub fn from_bigints(coeffs: impl IntoIterator<Item = BigInt>, cap: usize) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect(), cap)
    }

    /// The series `z`.
    pub fn z(cap: usize) -> Self {
        Self::monomial(BigRational::one(), 1, cap)
    }

    /// `c·z^k`.
    pub fn monomial(c: BigRational, k: usize, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        if k <= cap {
            s.coeffs[k] = c;
        }
        s
    }

    /// `[z^n]`; zero above the cap.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: BigRational) {
        if n <= self.cap {
            self.coeffs[n] = c;
        }
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// First degree at which the two series differ, up to the smaller cap.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        (0..=self.cap.min(other.cap)).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        check_caps(self.cap, other.cap)?;
        Ok(self.plus(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        check_caps(self.cap, other.cap)?;
        Ok(self.minus(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        check_caps(self.cap, other.cap)?;
        Ok(self.times(other))
    }
}

impl Series for TruncatedSeries {
    fn zero(cap: usize) -> Self {
        TruncatedSeries {
            cap,
            coeffs: vec![BigRational::zero(); cap + 1],
        }
    }

    fn constant(c: BigRational, cap: usize) -> Self {
        Self::monomial(c, 0, cap)
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn constant_term(&self) -> BigRational {
        self.coeffs[0].clone()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn plus(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let coeffs = (0..=cap).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        TruncatedSeries { cap, coeffs }
    }

    fn minus(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let coeffs = (0..=cap).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect();
        TruncatedSeries { cap, coeffs }
    }

    fn times(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(cap);
        for (i, a) in self.coeffs[..=cap].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=cap - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    fn negate(&self) -> Self {
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn scaled(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn truncated(&self, cap: usize) -> Self {
        if cap >= self.cap {
            return self.clone();
        }
        TruncatedSeries {
            cap,
            coeffs: self.coeffs[..=cap].to_vec(),
        }
    }
}

impl LetterSeries for TruncatedSeries {
    fn letter(_token: &str, cap: usize) -> Self {
        Self::z(cap)
    }
}

/// Degree-wise equality up to the smaller cap.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(n, c)| {
            let mono = match n {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{n}"),
            };
            (c, mono)
        });
        f.write_str(&render_terms(terms))
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$via(rhs)
            }
        }
    };
}

forward_op!(Add, add, plus);
forward_op!(Sub, sub, minus);
forward_op!(Mul, mul, times);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.negate()
    }
}
