use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::{Series, SeriesError};

/// Largest dimension for which `det` uses subset-memoized cofactor expansion.
const SUBSET_DET_MAX: usize = 12;

/// A square matrix of series whose rows and columns share one label list
/// (state ids, or subsets of state ids such as `{1,2}`).
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesMatrix<S> {
    labels: Vec<String>,
    cap: usize,
    entries: Vec<S>,
}

impl<S: Series> SeriesMatrix<S> {
    /// Row-major entries; all are truncated to `cap`.
    pub fn new(labels: Vec<String>, entries: Vec<S>, cap: usize) -> Result<Self, SeriesError> {
        if entries.len() != labels.len() * labels.len() {
            return Err(SeriesError::NotSquare {
                rows: labels.len(),
                entries: entries.len(),
            });
        }
        for e in &entries {
            if e.cap() < cap {
                return Err(SeriesError::CapMismatch(e.cap(), cap));
            }
        }
        let entries = entries.into_iter().map(|e| e.truncated(cap)).collect();
        Ok(SeriesMatrix { labels, cap, entries })
    }

    pub fn zero(labels: Vec<String>, cap: usize) -> Self {
        let n = labels.len();
        SeriesMatrix {
            labels,
            cap,
            entries: vec![S::zero(cap); n * n],
        }
    }

    pub fn identity(labels: Vec<String>, cap: usize) -> Self {
        let mut m = Self::zero(labels, cap);
        for i in 0..m.dim() {
            m.set(i, i, S::one(cap));
        }
        m
    }

    pub fn from_fn(labels: Vec<String>, cap: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let n = labels.len();
        let entries = (0..n * n).map(|k| f(k / n, k % n).truncated(cap)).collect();
        SeriesMatrix { labels, cap, entries }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        let n = self.dim();
        self.entries[i * n + j] = value.truncated(self.cap);
    }

    pub fn entry(&self, row: &str, col: &str) -> Option<&S> {
        let i = self.labels.iter().position(|l| l == row)?;
        let j = self.labels.iter().position(|l| l == col)?;
        Some(self.get(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    pub fn map<T: Series>(&self, f: impl FnMut(&S) -> T) -> SeriesMatrix<T> {
        SeriesMatrix {
            labels: self.labels.clone(),
            cap: self.cap,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_dims(&self, other: &Self) -> Result<(), SeriesError> {
        if self.dim() != other.dim() {
            Err(SeriesError::DimensionMismatch(self.dim(), other.dim()))
        } else {
            Ok(())
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_dims(other)?;
        Ok(SeriesMatrix {
            labels: self.labels.clone(),
            cap: self.cap.min(other.cap),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn minus(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_dims(other)?;
        Ok(SeriesMatrix {
            labels: self.labels.clone(),
            cap: self.cap.min(other.cap),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn times(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_dims(other)?;
        let n = self.dim();
        let cap = self.cap.min(other.cap);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero(cap);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(SeriesMatrix {
            labels: self.labels.clone(),
            cap,
            entries,
        })
    }

    /// `I - self`.
    pub fn one_minus(&self) -> Self {
        Self::identity(self.labels.clone(), self.cap).minus(self).expect("same dimension")
    }

    /// `(I - C)^{-1} = Σ C^k`; every entry must have a zero constant term.
    pub fn matrix_star(&self) -> Result<Self, SeriesError> {
        if self.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return Err(SeriesError::NonzeroConstant("matrix star"));
        }
        let id = Self::identity(self.labels.clone(), self.cap);
        let mut r = id.clone();
        for _ in 0..self.cap {
            let next = id.plus(&self.times(&r)?)?;
            if next == r {
                break;
            }
            r = next;
        }
        Ok(r)
    }

    /// Determinant in the truncated ring. Uses cofactor expansion memoized
    /// over column subsets up to dimension 12, and Berkowitz's
    /// division-free algorithm above that.
    pub fn det(&self) -> S {
        if self.dim() <= SUBSET_DET_MAX {
            self.det_by_subsets()
        } else {
            self.det_berkowitz()
        }
    }

    /// Expands row by row; `partial[mask]` sums the signed products that
    /// assign the first `popcount(mask)` rows to the columns in `mask`.
    pub fn det_by_subsets(&self) -> S {
        let n = self.dim();
        if n == 0 {
            return S::one(self.cap);
        }
        let mut partial: HashMap<u32, S> = HashMap::new();
        partial.insert(0, S::one(self.cap));
        for row in 0..n {
            let mut next: HashMap<u32, S> = HashMap::new();
            for (mask, acc) in &partial {
                for col in 0..n {
                    if mask >> col & 1 == 1 {
                        continue;
                    }
                    let entry = self.get(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    // inversions: earlier rows placed in later columns
                    let inversions = (mask >> (col + 1)).count_ones();
                    let mut term = acc.times(entry);
                    if inversions % 2 == 1 {
                        term = term.negate();
                    }
                    let key = mask | 1 << col;
                    match next.get_mut(&key) {
                        Some(v) => *v = v.plus(&term),
                        None => {
                            next.insert(key, term);
                        }
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            partial = next;
        }
        partial.remove(&((1u32 << n) - 1)).unwrap_or_else(|| S::zero(self.cap))
    }

    /// Berkowitz: builds the characteristic polynomial of growing leading
    /// principal submatrices by Toeplitz products; division-free.
    pub fn det_berkowitz(&self) -> S {
        let n = self.dim();
        let cap = self.cap;
        if n == 0 {
            return S::one(cap);
        }
        let a = |i: usize, j: usize| self.get(i, j);
        // coefficients of det(λI - A_r), highest degree first
        let mut poly: Vec<S> = vec![S::one(cap)];
        for r in 0..n {
            // column of the Toeplitz matrix: 1, -a_rr, -R S, -R A S, -R A^2 S, …
            let mut col = vec![S::one(cap), a(r, r).negate()];
            let mut v: Vec<S> = (0..r).map(|i| a(i, r).clone()).collect();
            for _ in 0..r {
                let rs = (0..r).fold(S::zero(cap), |acc, k| acc.plus(&a(r, k).times(&v[k])));
                col.push(rs.negate());
                v = (0..r)
                    .map(|i| (0..r).fold(S::zero(cap), |acc, k| acc.plus(&a(i, k).times(&v[k]))))
                    .collect();
            }
            // (r+2) x (r+1) lower-triangular Toeplitz times poly (length r+1)
            let next: Vec<S> = (0..r + 2)
                .map(|i| {
                    (0..=r.min(i)).fold(S::zero(cap), |acc, j| {
                        if i - j < col.len() {
                            acc.plus(&col[i - j].times(&poly[j]))
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            poly = next;
        }
        let d = poly.pop().expect("nonempty");
        if n % 2 == 1 {
            d.negate()
        } else {
            d
        }
    }
}

impl<S: Series> fmt::Display for SeriesMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                writeln!(f, "[{},{}] {}", self.labels[i], self.labels[j], self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    fn s(c: &[i64], cap: usize) -> TruncatedSeries {
        TruncatedSeries::from_integers(c, cap)
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn small_determinants() {
        let m = SeriesMatrix::new(labels(1), vec![s(&[3, 1], 2)], 2).unwrap();
        assert_eq!(m.det(), s(&[3, 1], 2));
        let z = s(&[0, 1], 2);
        let g = SeriesMatrix::new(labels(2), vec![z.clone(), z.clone(), z, s(&[], 2)], 2).unwrap();
        assert_eq!(g.one_minus().det(), s(&[1, -1, -1], 2));
        let zero = SeriesMatrix::<TruncatedSeries>::zero(labels(1), 3);
        assert_eq!(zero.one_minus().det(), s(&[1], 3));
    }

    #[test]
    fn berkowitz_matches_subsets() {
        let n = 5;
        let m = SeriesMatrix::from_fn(labels(n), 4, |i, j| {
            s(&[((i * 7 + j * 3) % 5) as i64 - 2, (i + 2 * j) as i64 % 3 - 1, (i * j) as i64 % 4], 4)
        });
        assert_eq!(m.det_by_subsets(), m.det_berkowitz());
        let perm = SeriesMatrix::from_fn(labels(3), 2, |i, j| s(&[i64::from((i + 1) % 3 == j)], 2));
        assert_eq!(perm.det_by_subsets(), s(&[1], 2));
        assert_eq!(perm.det_berkowitz(), s(&[1], 2));
    }

    #[test]
    fn matrix_star_examples() {
        let zero = SeriesMatrix::<TruncatedSeries>::zero(labels(2), 3);
        assert_eq!(zero.matrix_star().unwrap(), SeriesMatrix::identity(labels(2), 3));
        let one = SeriesMatrix::new(labels(1), vec![s(&[0, 1], 3)], 3).unwrap();
        assert_eq!(one.matrix_star().unwrap().get(0, 0), &s(&[1, 1, 1, 1], 3));
        let nil = SeriesMatrix::from_fn(labels(3), 5, |i, j| if j == i + 1 { s(&[0, 1], 5) } else { s(&[], 5) });
        let st = nil.matrix_star().unwrap();
        assert_eq!(st.get(0, 2), &s(&[0, 0, 1], 5));
        assert_eq!(st.get(2, 0), &s(&[], 5));
        let bad = SeriesMatrix::new(labels(1), vec![s(&[1], 3)], 3).unwrap();
        assert!(bad.matrix_star().is_err());
    }
}
