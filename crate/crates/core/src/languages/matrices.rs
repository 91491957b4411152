//! Language matrices as series, by path counting.
//!
//! `D` and `C` solve, degree by degree,
//!
//! ```text
//! D_p· = [p = ·] + Σ_{(p,i,q)} i·D_q· + Σ_{((p,a,q),(r,b,s)) matched} a·D_qr·b·D_s·
//! C_ps = Σ_{(p,i,s)} i + Σ_{((p,a,q),(r,b,s)) matched} a·D_qr·b
//! ```
//!
//! which count admissible paths labeled by Dyck (resp. prime Dyck) words.
//! For an unambiguous automaton this equals the word count.

use super::HKind;
use crate::automaton::DyckAutomaton;
use crate::series::{LetterSeries, SeriesMatrix};
use crate::words::LetterClass;

fn labels(a: &DyckAutomaton) -> Vec<String> {
    a.states().to_vec()
}

/// Sum of the letters on edges of the given class, as a state-indexed matrix.
pub fn letter_matrix<S: LetterSeries>(a: &DyckAutomaton, class: LetterClass, cap: usize) -> SeriesMatrix<S> {
    let mut m = SeriesMatrix::<S>::zero(labels(a), cap);
    for e in a.edges() {
        if a.alphabet().class(e.label) == class {
            let cur = m.get(e.from, e.to).plus(&S::letter(a.alphabet().token(e.label), cap));
            m.set(e.from, e.to, cur);
        }
    }
    m
}

/// `(D, C)`: the Dyck-word and prime-Dyck-word matrices up to `cap`.
pub fn dyck_and_prime_matrices<S: LetterSeries>(a: &DyckAutomaton, cap: usize) -> (SeriesMatrix<S>, SeriesMatrix<S>) {
    let n = a.state_count();
    let alphabet = a.alphabet();
    let weight = |l| S::letter(alphabet.token(l), cap);
    let internal: Vec<_> = a
        .edges()
        .iter()
        .filter(|e| alphabet.class(e.label) == LetterClass::Internal)
        .map(|e| (e.from, e.to, weight(e.label)))
        .collect();
    let matched: Vec<_> = a
        .matched_pairs()
        .iter()
        .map(|&(c, r)| {
            let (ce, re) = (&a.edges()[c], &a.edges()[r]);
            (ce.from, ce.to, re.from, re.to, weight(ce.label).times(&weight(re.label)))
        })
        .collect();

    let prime = |d: &SeriesMatrix<S>| {
        let mut c = SeriesMatrix::<S>::zero(labels(a), cap);
        for (p, s, w) in &internal {
            c.set(*p, *s, c.get(*p, *s).plus(w));
        }
        for (p, q, r, s, ab) in &matched {
            let dqr = d.get(*q, *r);
            if !dqr.is_zero() {
                c.set(*p, *s, c.get(*p, *s).plus(&ab.times(dqr)));
            }
        }
        c
    };

    // each pass fixes at least one more degree of D
    let mut d = SeriesMatrix::<S>::identity(labels(a), cap);
    for _ in 0..=cap {
        let mut next = SeriesMatrix::<S>::identity(labels(a), cap);
        for (p, q, w) in &internal {
            for t in 0..n {
                let dq = d.get(*q, t);
                if !dq.is_zero() {
                    next.set(*p, t, next.get(*p, t).plus(&w.times(dq)));
                }
            }
        }
        for (p, q, r, s, ab) in &matched {
            let dqr = d.get(*q, *r);
            if dqr.is_zero() {
                continue;
            }
            let inner = ab.times(dqr);
            for t in 0..n {
                let ds = d.get(*s, t);
                if !ds.is_zero() {
                    next.set(*p, t, next.get(*p, t).plus(&inner.times(ds)));
                }
            }
        }
        if next == d {
            break;
        }
        d = next;
    }
    let c = prime(&d);
    (d, c)
}

/// The matrix of the given language kind, univariate or multivariate per `S`.
pub fn h_matrix<S: LetterSeries>(a: &DyckAutomaton, kind: HKind, cap: usize) -> SeriesMatrix<S> {
    let mc = || letter_matrix::<S>(a, LetterClass::Call, cap);
    let mr = || letter_matrix::<S>(a, LetterClass::Return, cap);
    if matches!(kind, HKind::Mc | HKind::Mr) {
        return if kind == HKind::Mc { mc() } else { mr() };
    }
    let (d, c) = dyck_and_prime_matrices::<S>(a, cap);
    let sum = |x: SeriesMatrix<S>, y: &SeriesMatrix<S>| x.plus(y).expect("same dimension");
    let prod = |x: &SeriesMatrix<S>, y: &SeriesMatrix<S>| x.times(y).expect("same dimension");
    match kind {
        HKind::C => c,
        HKind::D => d,
        HKind::CStarMc => prod(&d, &mc()),
        HKind::MrPlusC => sum(mr(), &c),
        HKind::McPlusC => sum(mc(), &c),
        HKind::MrCStar => prod(&mr(), &d),
        HKind::Mc | HKind::Mr => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::builtin;
    use crate::series::{star, MultiSeries, Series, TruncatedSeries};

    #[test]
    fn fig2_prime_coefficients() {
        let a = builtin("fig2").unwrap();
        let (d, c) = dyck_and_prime_matrices::<TruncatedSeries>(&a, 8);
        assert_eq!(c.get(0, 0), &TruncatedSeries::from_integers(&[0, 0, 2, 0, 6, 0, 30, 0, 186], 8));
        assert_eq!(d.get(0, 0).coeff(0), num_rational::BigRational::from_integer(1.into()));
        assert!(c.get(1, 1).is_zero());
        assert_eq!(c.matrix_star().unwrap(), d);
    }

    #[test]
    fn fig2_off_diagonal_primes_are_single_letters() {
        let a = builtin("fig2").unwrap();
        let (_, c) = dyck_and_prime_matrices::<MultiSeries>(&a, 6);
        assert_eq!(c.get(0, 1), &MultiSeries::var("i", 6));
        assert_eq!(c.get(1, 0), &MultiSeries::var("i", 6));
    }

    #[test]
    fn fig2_left_matrix() {
        let a = builtin("fig2").unwrap();
        let cap = 6;
        let h = h_matrix::<MultiSeries>(&a, HKind::CStarMc, cap);
        let (_, c) = dyck_and_prime_matrices::<MultiSeries>(&a, cap);
        let i = MultiSeries::var("i", cap);
        let calls = &MultiSeries::var("a", cap) + &MultiSeries::var("a'", cap);
        let loop11 = star(&(c.get(0, 0) + &(&i * &i))).unwrap();
        assert_eq!(h.get(0, 0), &(&loop11 * &calls));
        assert_eq!(h.get(1, 0), &(&(&i * &loop11) * &calls));
        assert!(h.get(0, 1).is_zero() && h.get(1, 1).is_zero());
    }

    #[test]
    fn no_calls_means_no_left_matrix() {
        let a = builtin("golden-mean").unwrap();
        assert!(h_matrix::<TruncatedSeries>(&a, HKind::CStarMc, 5).is_zero());
    }
}
