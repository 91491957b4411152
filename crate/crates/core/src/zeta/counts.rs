use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ZetaError;
use crate::series::{exp_series, log_series, Series, TruncatedSeries};

/// Periodic-point counts `p_n` for `n = 1..=cap`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodicCountTable {
    counts: BTreeMap<usize, BigInt>,
}

impl PeriodicCountTable {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        PeriodicCountTable {
            counts: counts.into_iter().filter(|(n, _)| *n > 0).collect(),
        }
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.counts.get(&n)
    }

    pub fn max_len(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.counts.iter().map(|(n, p)| (*n, p))
    }

    /// Number of primitive orbits of each length, `(1/n) Σ_{d|n} μ(n/d) p_d`.
    pub fn orbit_counts(&self) -> Result<BTreeMap<usize, BigInt>, ZetaError> {
        let mut out = BTreeMap::new();
        for &n in self.counts.keys() {
            let mut sum = BigInt::zero();
            for d in (1..=n).filter(|d| n % d == 0) {
                let mu = mobius(n / d);
                if mu != 0 {
                    let pd = self.counts.get(&d).ok_or(ZetaError::OrbitDivisibility(n))?;
                    sum += pd * mu;
                }
            }
            let (q, r) = sum.div_rem(&BigInt::from(n));
            if !r.is_zero() || q.is_negative() {
                return Err(ZetaError::OrbitDivisibility(n));
            }
            out.insert(n, q);
        }
        Ok(out)
    }
}

fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Reads `p_n = n [z^n] log ζ` off a zeta series. Non-integral or negative
/// counts, and orbit counts that are not nonnegative integers, are errors.
pub fn counts_from_zeta(zeta: &TruncatedSeries) -> Result<PeriodicCountTable, ZetaError> {
    if !zeta.constant_term().is_one() {
        return Err(ZetaError::ConstantNotOne);
    }
    let log = log_series(zeta)?;
    let mut counts = BTreeMap::new();
    for n in 1..=zeta.cap() {
        let p = log.coeff(n) * BigRational::from_integer(BigInt::from(n));
        if !p.is_integer() {
            return Err(ZetaError::NonIntegral(n));
        }
        let p = p.to_integer();
        if p.is_negative() {
            return Err(ZetaError::Negative(n));
        }
        counts.insert(n, p);
    }
    let table = PeriodicCountTable { counts };
    table.orbit_counts()?;
    Ok(table)
}

/// `exp Σ_{n ≤ cap} p_n z^n / n`; missing counts are zero.
pub fn zeta_from_counts(table: &PeriodicCountTable, cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cap);
    for (n, p) in table.iter().filter(|(n, _)| *n <= cap) {
        s.set_coeff(n, BigRational::new(p.clone(), BigInt::from(n)));
    }
    exp_series(&s).expect("zero constant term")
}

/// `p_n^{1/n}` for each `n`, an estimate of `exp(h)`. Zero counts give 0.
pub fn entropy_estimate(table: &PeriodicCountTable) -> Vec<(usize, f64)> {
    table
        .iter()
        .map(|(n, p)| {
            let v = if p.is_zero() {
                0.0
            } else {
                // ln p / n through the bit length, so huge counts don't overflow f64
                let bits = p.bits();
                let shift = bits.saturating_sub(64);
                let top = (p >> shift).to_f64().unwrap_or(f64::MAX);
                ((top.ln() + shift as f64 * std::f64::consts::LN_2) / n as f64).exp()
            };
            (n, v)
        })
        .collect()
}
