use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_caps, render_terms, LetterSeries, Series, SeriesError, TruncatedSeries};

/// A commutative monomial: variables sorted by token, positive exponents.
/// Orders by total degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    degree: u32,
    vars: Vec<(Arc<str>, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(token: &str) -> Self {
        Monomial {
            degree: 1,
            vars: vec![(Arc::from(token), 1)],
        }
    }

    /// Builds from `(token, exponent)` pairs in any order; zero exponents are dropped.
    pub fn from_exponents<T: AsRef<str>>(pairs: impl IntoIterator<Item = (T, u32)>) -> Self {
        let mut map: BTreeMap<Arc<str>, u32> = BTreeMap::new();
        for (t, e) in pairs {
            if e > 0 {
                *map.entry(Arc::from(t.as_ref())).or_insert(0) += e;
            }
        }
        Monomial {
            degree: map.values().sum(),
            vars: map.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn exponent(&self, token: &str) -> u32 {
        self.vars
            .iter()
            .find(|(t, _)| &**t == token)
            .map_or(0, |(_, e)| *e)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, u32)> {
        self.vars.iter().map(|(t, e)| (&**t, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (a, b) = (&self.vars[i], &other.vars[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    vars.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vars.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vars.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Monomial {
            degree: self.degree + other.degree,
            vars,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (t, e)) in self.vars.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{t}")?;
            } else {
                write!(f, "{t}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse series in commuting letter variables, truncated at total degree `cap`.
#[derive(Clone, Debug)]
pub struct MultiSeries {
    cap: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiSeries {
    pub fn var(token: &str, cap: usize) -> Self {
        Self::term(Monomial::var(token), BigRational::one(), cap)
    }

    pub fn term(mono: Monomial, c: BigRational, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.add_term(mono, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>, cap: usize) -> Self {
        let mut s = Self::zero(cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c·mono`, ignoring it above the cap.
    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if mono.degree() > self.cap || c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms, by total degree and then by monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Sorted, deduplicated variable tokens appearing in some term.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().map(|(t, _)| t.to_string()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces every variable by `z`.
    pub fn theta(&self) -> TruncatedSeries {
        let mut coeffs = vec![BigRational::zero(); self.cap + 1];
        for (m, c) in &self.terms {
            coeffs[m.degree()] += c;
        }
        TruncatedSeries::new(coeffs, self.cap)
    }

    /// Substitutes `sigma(token)` for every variable and truncates at `cap`.
    /// Every image must have a zero constant term.
    pub fn substitute<S: Series>(
        &self,
        sigma: impl Fn(&str) -> Option<S>,
        cap: usize,
    ) -> Result<S, SeriesError> {
        let mut powers: HashMap<&str, Vec<S>> = HashMap::new();
        let mut out = S::zero(cap);
        for (m, c) in &self.terms {
            let mut prod = S::one(cap);
            for (t, e) in m.exponents() {
                if !powers.contains_key(t) {
                    let image = sigma(t).ok_or_else(|| SeriesError::MissingSubstitution(t.to_string()))?;
                    if !image.constant_term().is_zero() {
                        return Err(SeriesError::NonzeroConstant("substitution"));
                    }
                    powers.insert(t, vec![S::one(cap), image.truncated(cap)]);
                }
                let list = powers.get_mut(t).expect("inserted above");
                while list.len() <= e as usize {
                    let next = list[list.len() - 1].times(&list[1]);
                    list.push(next);
                }
                prod = prod.times(&list[e as usize]);
            }
            out = out.plus(&prod.scaled(c));
        }
        Ok(out)
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

impl Series for MultiSeries {
    fn zero(cap: usize) -> Self {
        MultiSeries {
            cap,
            terms: BTreeMap::new(),
        }
    }

    fn constant(c: BigRational, cap: usize) -> Self {
        Self::term(Monomial::one(), c, cap)
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.truncated(other.cap);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.truncated(other.cap);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            if ma.degree() > cap {
                break;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > cap {
                    break;
                }
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        MultiSeries {
            cap,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn negate(&self) -> Self {
        MultiSeries {
            cap: self.cap,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scaled(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.cap);
        }
        MultiSeries {
            cap: self.cap,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn truncated(&self, cap: usize) -> Self {
        if cap >= self.cap {
            return self.clone();
        }
        MultiSeries {
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl LetterSeries for MultiSeries {
    fn letter(token: &str, cap: usize) -> Self {
        Self::var(token, cap)
    }
}

/// Term-wise equality up to the smaller cap.
impl PartialEq for MultiSeries {
    fn eq(&self, other: &Self) -> bool {
        let cap = self.cap.min(other.cap);
        self.truncated(cap).terms == other.truncated(cap).terms
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().map(|(m, c)| (c, m.to_string()))))
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr<&MultiSeries> for &MultiSeries {
            type Output = MultiSeries;
            fn $m(self, rhs: &MultiSeries) -> MultiSeries {
                self.$via(rhs)
            }
        }
    };
}

forward_op!(Add, add, plus);
forward_op!(Sub, sub, minus);
forward_op!(Mul, mul, times);

impl Neg for &MultiSeries {
    type Output = MultiSeries;
    fn neg(self) -> MultiSeries {
        self.negate()
    }
}
