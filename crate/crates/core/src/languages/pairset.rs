use std::cmp::Ordering;
use std::fmt;

/// Largest state count supported by the pair-set based computations.
pub const MAX_STATES: usize = 8;

/// A subset of `Q × Q` for a fixed state count `n ≤ 8`, stored as a bit
/// matrix (bit `p·n + q`). Used both as the relation "u labels an admissible
/// path from p to q" and as a membership pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairSet {
    bits: u64,
    n: u8,
}

/// The membership pattern of a word: the pairs `(p, q)` with `u ∈ H_pq`.
pub type MembershipPattern = PairSet;

impl PairSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_STATES, "pair sets support at most {MAX_STATES} states");
        PairSet { bits: 0, n: n as u8 }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::empty(n);
        for p in 0..n {
            s.insert(p, p);
        }
        s
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut s = Self::empty(n);
        for (p, q) in pairs {
            s.insert(p, q);
        }
        s
    }

    pub fn state_count(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    fn bit(&self, p: usize, q: usize) -> u64 {
        debug_assert!(p < self.n as usize && q < self.n as usize);
        1u64 << (p * self.n as usize + q)
    }

    pub fn insert(&mut self, p: usize, q: usize) {
        self.bits |= self.bit(p, q);
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.bits & self.bit(p, q) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(&self, other: &PairSet) -> PairSet {
        PairSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n as usize;
        (0..n * n).filter(move |i| self.bits >> i & 1 == 1).map(move |i| (i / n, i % n))
    }

    fn row(&self, p: usize) -> u64 {
        let n = self.n as usize;
        (self.bits >> (p * n)) & ((1u64 << n) - 1)
    }

    /// Relational composition: `(p, r)` iff some `q` has `(p, q) ∈ self`, `(q, r) ∈ other`.
    pub fn compose(&self, other: &PairSet) -> PairSet {
        let n = self.n as usize;
        let mut bits = 0u64;
        for p in 0..n {
            let mut row = 0u64;
            let mut mid = self.row(p);
            while mid != 0 {
                let q = mid.trailing_zeros() as usize;
                mid &= mid - 1;
                row |= other.row(q);
            }
            bits |= row << (p * n);
        }
        PairSet { bits, n: self.n }
    }

    pub fn transpose(&self) -> PairSet {
        PairSet::from_pairs(self.n as usize, self.pairs().map(|(p, q)| (q, p)))
    }

    /// At most one target per source.
    pub fn is_functional(&self) -> bool {
        (0..self.n as usize).all(|p| self.row(p).count_ones() <= 1)
    }

    /// At most one source per target.
    pub fn is_cofunctional(&self) -> bool {
        self.transpose().is_functional()
    }

    /// Determinant of the 0/1 submatrix with the given (sorted) rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> i64 {
        let k = rows.len();
        assert_eq!(k, cols.len());
        // Leibniz over permutations via recursive expansion; k ≤ 8.
        fn expand(s: &PairSet, rows: &[usize], cols: &[usize], used: u32, r: usize) -> i64 {
            if r == rows.len() {
                return 1;
            }
            let mut total = 0;
            let mut skipped = 0;
            for (j, &c) in cols.iter().enumerate() {
                if used >> j & 1 == 1 {
                    continue;
                }
                if s.contains(rows[r], c) {
                    let sign = if skipped % 2 == 0 { 1 } else { -1 };
                    total += sign * expand(s, rows, cols, used | 1 << j, r + 1);
                }
                skipped += 1;
            }
            total
        }
        expand(self, rows, cols, 0, 0)
    }

    /// `{(1,1),(2,1)}` using the given state names.
    pub fn render(&self, states: &[String]) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(p, q)| format!("({},{})", states[p], states[q]))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl Ord for PairSet {
    /// Smaller sets first, then lexicographic on the sorted pair lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.pairs().cmp(other.pairs()))
    }
}

impl PartialOrd for PairSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n as usize).map(|i| i.to_string()).collect();
        f.write_str(&self.render(&names))
    }
}

/// All `ℓ`-subsets of `0..n`, each sorted, in lexicographic order.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < l - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, l, &mut Vec::new(), &mut out);
    out
}
