//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use sofic_dyck::automaton::{builtin, builtin_names, DyckAutomaton};
use sofic_dyck::languages::{circularity_check, circularity_check_words, dyck_and_prime_matrices, HKind, PairSet};
use sofic_dyck::series::{star, MultiSeries, Series, TruncatedSeries};
use sofic_dyck::words::{is_prime_dyck, Letter, PushdownAlphabet};
use sofic_dyck::zeta::{
    counts_from_zeta, decomposition_check, entropy_estimate, exterior_power, pattern_graph, sofic_zeta,
    zeta_bruteforce, zeta_det_route, zeta_subst_route, Orientation,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn coeffs_i128(s: &TruncatedSeries) -> Result<Vec<i128>, String> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if c.is_integer() {
                c.to_integer().to_i128().ok_or_else(|| format!("[z^{n}] overflows"))
            } else {
                Err(format!("[z^{n}] = {c} is not an integer"))
            }
        })
        .collect()
}

fn padded(s: &TruncatedSeries, cap: usize) -> Result<Vec<i128>, String> {
    let mut c = coeffs_i128(s)?;
    c.resize(cap + 1, 0);
    Ok(c)
}

// Plain integer polynomial arithmetic, independent of the library's series types.
mod poly {
    pub fn mul(a: &[i128], b: &[i128], cap: usize) -> Vec<i128> {
        let mut out = vec![0; cap + 1];
        for (i, x) in a.iter().enumerate().take(cap + 1) {
            for (j, y) in b.iter().enumerate().take(cap + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add(a: &[i128], b: &[i128], cap: usize) -> Vec<i128> {
        (0..=cap)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect()
    }

    /// `1 / (1 - s)` for `s(0) = 0`, from `r = 1 + s r`.
    pub fn star(s: &[i128], cap: usize) -> Vec<i128> {
        assert_eq!(s.first().copied().unwrap_or(0), 0);
        let mut r = vec![0; cap + 1];
        r[0] = 1;
        for n in 1..=cap {
            r[n] = (1..=n).map(|k| s.get(k).copied().unwrap_or(0) * r[n - k]).sum();
        }
        r
    }

    pub fn mono(k: usize, c: i128, cap: usize) -> Vec<i128> {
        let mut v = vec![0; cap + 1];
        if k <= cap {
            v[k] = c;
        }
        v
    }
}

/// `D₁₁` of fig2 from `D = 1 + z² D + 2 z² D²`, the rearranged quadratic.
fn fig2_d11(cap: usize) -> Vec<i128> {
    let mut d = vec![0i128; cap + 1];
    d[0] = 1;
    for _ in 0..=cap {
        let d2 = poly::mul(&d, &d, cap);
        let mut next = poly::mono(0, 1, cap);
        for n in 2..=cap {
            next[n] += d[n - 2] + 2 * d2[n - 2];
        }
        if next == d {
            break;
        }
        d = next;
    }
    d
}

/// `2 z² D₁₁`.
fn fig2_c11(cap: usize) -> Vec<i128> {
    poly::mul(&poly::mono(2, 2, cap), &fig2_d11(cap), cap)
}

/// Number of prime Dyck words of length `n` labeling a path `p → p`, by scanning all words.
fn prime_dyck_loops(a: &DyckAutomaton, n: usize, p: usize) -> usize {
    let k = a.alphabet().len();
    let mut count = 0;
    for index in 0..k.pow(n as u32) {
        let mut rest = index;
        let w: Vec<Letter> = (0..n)
            .map(|_| {
                let l = Letter((rest % k) as u16);
                rest /= k;
                l
            })
            .collect();
        if is_prime_dyck(a.alphabet(), &w) && a.run_endpoints(&w).contains(&(p, p)) {
            count += 1;
        }
    }
    count
}

fn criterion_1() -> Outcome {
    let cap = 20;
    let a = builtin("fig2").map_err(err)?;
    let (d, c) = dyck_and_prime_matrices::<TruncatedSeries>(&a, cap);
    let c11 = padded(c.get(0, 0), cap)?;
    let d11 = padded(d.get(0, 0), cap)?;
    // 2z²D² − (1 − z²)D + 1
    let lhs = poly::add(
        &poly::add(
            &poly::mul(&poly::mono(2, 2, cap), &poly::mul(&d11, &d11, cap), cap),
            &poly::mul(&[-1, 0, 1], &d11, cap),
            cap,
        ),
        &poly::mono(0, 1, cap),
        cap,
    );
    ensure(lhs.iter().all(|x| *x == 0), format!("quadratic residual {lhs:?}"))?;
    ensure(
        c11 == poly::mul(&poly::mono(2, 2, cap), &d11, cap),
        "C11 differs from 2z^2 D11",
    )?;
    ensure(c11 == fig2_c11(cap), "C11 differs from the quadratic's solution")?;
    for n in [2, 4] {
        let direct = prime_dyck_loops(&a, n, 0) as i128;
        ensure(c11[n] == direct, format!("[z^{n}] {} vs enumeration {direct}", c11[n]))?;
    }
    ensure(c11[2] == 2 && c11[4] == 6, "leading coefficients are not 2, 6")?;
    Ok(format!("C11 = {}", c.get(0, 0)))
}

fn criterion_2() -> Outcome {
    let cap = 8;
    let a = builtin("fig2").map_err(err)?;
    let right = exterior_power::<MultiSeries>(&a, HKind::MrPlusC, 2, cap, Orientation::Reverse).map_err(err)?;
    let left = exterior_power::<MultiSeries>(&a, HKind::CStarMc, 2, cap, Orientation::Forward).map_err(err)?;
    ensure(right.dim() == 1 && left.dim() == 1, "second powers of a 2-state automaton must be 1x1")?;
    ensure(
        right.get(0, 0) == &MultiSeries::var("i", cap).negate(),
        format!("(C+Mr)⊗2 = {}", right.get(0, 0)),
    )?;
    ensure(left.get(0, 0).is_zero(), format!("(C*Mc)⊗2 = {}", left.get(0, 0)))?;
    Ok("(C+Mr)⊗2 = [-i], (C*Mc)⊗2 = [0]".into())
}

fn criterion_3() -> Outcome {
    let cap = 10;
    let a = builtin("fig2").map_err(err)?;
    let gh = pattern_graph(&a, HKind::CStarMc, cap).map_err(err)?;
    let gh2 = pattern_graph(&a, HKind::MrPlusC, cap).map_err(err)?;
    let token = |g: &sofic_dyck::zeta::PatternAlphabet, pairs: &[(usize, usize)]| {
        g.token(&PairSet::from_pairs(2, pairs.iter().copied()))
            .map(str::to_string)
            .ok_or_else(|| format!("pattern {pairs:?} missing from the {} graph", g.kind))
    };
    let a1 = MultiSeries::var(&token(&gh, &[(0, 0)])?, cap);
    let b1 = MultiSeries::var(&token(&gh2, &[(0, 0)])?, cap);
    let b5 = MultiSeries::var(&token(&gh2, &[(0, 1), (1, 0)])?, cap);
    let expected_h = star(&a1).map_err(err)?;
    let one = MultiSeries::one(cap);
    let expected_h2 = one.plus(&b5).times(&star(&b1.plus(&b5.times(&b5))).map_err(err)?);
    let zh = sofic_zeta(&gh, cap).map_err(err)?;
    let zh2 = sofic_zeta(&gh2, cap).map_err(err)?;
    ensure(zh == expected_h, format!("Z(S_H) = {zh}"))?;
    ensure(zh2 == expected_h2, format!("Z(S_H') = {zh2}"))?;
    Ok(format!("{} letters in A_H, {} in A_H'", gh.letters.len(), gh2.letters.len()))
}

const ROUTE_BUILTINS: [&str; 5] = ["fig2", "motzkin-2-1", "dyck-1", "dyck-2", "golden-mean"];

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    for name in ROUTE_BUILTINS {
        let a = builtin(name).map_err(err)?;
        let det = zeta_det_route::<TruncatedSeries>(&a, &a, 20).map_err(err)?;
        let sub = zeta_subst_route::<TruncatedSeries>(&a, &a, 20).map_err(err)?;
        if let Some(n) = det.first_difference(&sub) {
            return Err(format!("{name}: formula routes differ at z^{n}"));
        }
        let brute = zeta_bruteforce(&a, 10, 0).map_err(err)?;
        if let Some(n) = brute.first_difference(&det.truncated(10)) {
            return Err(format!("{name}: brute force differs from the formula routes at z^{n}"));
        }
        lines.push(name);
    }
    // fig2 against the closed form ((C11 + z²)* 2z)* (1 + z) (C11 + 2z + z²)*
    let cap = 20;
    let c11 = fig2_c11(cap);
    let left = poly::star(
        &poly::mul(&poly::star(&poly::add(&c11, &poly::mono(2, 1, cap), cap), cap), &poly::mono(1, 2, cap), cap),
        cap,
    );
    let right = poly::star(&poly::add(&c11, &[0, 2, 1], cap), cap);
    let closed = poly::mul(&poly::mul(&left, &[1, 1], cap), &right, cap);
    let a = builtin("fig2").map_err(err)?;
    let det = padded(&zeta_det_route::<TruncatedSeries>(&a, &a, cap).map_err(err)?, cap)?;
    ensure(det == closed, format!("fig2 zeta {det:?} vs closed form {closed:?}"))?;
    Ok(format!("{} builtins agree; fig2 matches its closed form", lines.len()))
}

fn criterion_5() -> Outcome {
    let a = builtin("golden-mean").map_err(err)?;
    let z = zeta_det_route::<TruncatedSeries>(&a, &a, 20).map_err(err)?;
    let mut fib = vec![1i128, 1];
    while fib.len() <= 20 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    ensure(padded(&z, 20)? == fib, format!("zeta = {z}"))?;
    let p = counts_from_zeta(&z).map_err(err)?;
    let mut lucas = vec![2i128, 1];
    while lucas.len() <= 20 {
        lucas.push(lucas[lucas.len() - 1] + lucas[lucas.len() - 2]);
    }
    for n in 1..=20 {
        ensure(
            p.get(n) == Some(&BigInt::from(lucas[n])),
            format!("p_{n} = {:?}, Lucas {}", p.get(n), lucas[n]),
        )?;
    }
    Ok("1/(1 - z - z^2), p_n Lucas".into())
}

fn criterion_6() -> Outcome {
    let mut words = 0;
    for name in ["fig2", "motzkin-2-1"] {
        let a = builtin(name).map_err(err)?;
        let r = decomposition_check(&a, 5).map_err(err)?;
        if let Some(v) = r.violations.first() {
            return Err(format!(
                "{name}: {} in X: {}, in X_C*Mc: {}, in X_Mr+C: {}",
                a.render(&v.word),
                v.in_shift,
                v.in_left,
                v.in_right
            ));
        }
        words += r.words_checked;
    }
    Ok(format!("{words} words"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for name in builtin_names() {
        let a = builtin(name).map_err(err)?;
        for kind in [HKind::CStarMc, HKind::MrPlusC] {
            let r = circularity_check(&a, kind, 8).map_err(err)?;
            if let Some(w) = r.witness {
                return Err(format!("{name} {kind}: {} factors two ways", a.render(&w.word)));
            }
            checked += 1;
        }
    }
    let alphabet = PushdownAlphabet::new::<&str>(&[], &[], &["a"]).map_err(err)?;
    let a1 = alphabet.parse_word("a").map_err(err)?;
    let aa = alphabet.parse_word("a a").map_err(err)?;
    let r = circularity_check_words(1, &[(a1, PairSet::identity(1)), (aa.clone(), PairSet::identity(1))], 8)
        .map_err(err)?;
    let w = r.witness.ok_or("{a, aa} passed the circularity check")?;
    ensure(w.word == aa, format!("witness {:?}", w.word))?;
    Ok(format!("{checked} matrices circular, {{a, aa}} witness aa"))
}

fn nonnegative_integral(label: &str, s: &TruncatedSeries) -> Result<(), String> {
    for (n, c) in s.coeffs().iter().enumerate() {
        ensure(c.is_integer() && !c.is_negative(), format!("{label}: [z^{n}] = {c}"))?;
    }
    let table = counts_from_zeta(s).map_err(|e| format!("{label}: {e}"))?;
    table.orbit_counts().map_err(|e| format!("{label}: {e}"))?;
    Ok(())
}

fn multi_nonnegative_integral(label: &str, s: &MultiSeries) -> Result<(), String> {
    for (m, c) in s.terms() {
        ensure(c.is_integer() && !c.is_negative(), format!("{label}: [{m}] = {c}"))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut series = 0;
    for name in ROUTE_BUILTINS {
        let a = builtin(name).map_err(err)?;
        nonnegative_integral(name, &zeta_det_route::<TruncatedSeries>(&a, &a, 20).map_err(err)?)?;
        nonnegative_integral(name, &zeta_subst_route::<TruncatedSeries>(&a, &a, 20).map_err(err)?)?;
        nonnegative_integral(name, &zeta_bruteforce(&a, 10, 0).map_err(err)?)?;
        series += 3;
    }
    let a = builtin("fig2").map_err(err)?;
    for kind in [HKind::CStarMc, HKind::MrPlusC] {
        let g = pattern_graph(&a, kind, 10).map_err(err)?;
        multi_nonnegative_integral(kind.name(), &sofic_zeta(&g, 10).map_err(err)?)?;
        series += 1;
    }
    let fig2_multi = zeta_det_route::<MultiSeries>(&a, &a, 8).map_err(err)?;
    multi_nonnegative_integral("fig2 multivariate", &fig2_multi)?;
    nonnegative_integral("fig2 theta", &fig2_multi.theta())?;
    series += 1;
    Ok(format!("{series} zeta series"))
}

fn criterion_9() -> Outcome {
    let a = builtin("motzkin-2-1").map_err(err)?;
    let z = zeta_det_route::<TruncatedSeries>(&a, &a, 24).map_err(err)?;
    let table = counts_from_zeta(&z).map_err(err)?;
    let estimate = entropy_estimate(&table)
        .into_iter()
        .find(|(n, _)| *n == 24)
        .map(|(_, v)| v)
        .ok_or("no p_24")?;
    ensure((estimate - 4.0).abs() <= 0.15 * 4.0, format!("p_24^(1/24) = {estimate:.4}"))?;
    Ok(format!("p_24^(1/24) = {estimate:.4}"))
}

fn main() {
    let criteria: [(&str, &str, Duration, fn() -> Outcome); 9] = [
        ("1", "fig2 prime Dyck series C11", Duration::from_secs(10), criterion_1),
        ("2", "fig2 second exterior powers", Duration::from_secs(30), criterion_2),
        ("3", "pattern-graph sofic factors", Duration::from_secs(10), criterion_3),
        ("4", "three-route agreement", Duration::from_secs(600), criterion_4),
        ("5", "golden-mean regression", Duration::from_secs(5), criterion_5),
        ("6", "periodic-point decomposition", Duration::from_secs(300), criterion_6),
        ("7", "circularity", Duration::from_secs(300), criterion_7),
        ("8", "integrality and orbit divisibility", Duration::from_secs(600), criterion_8),
        ("9", "motzkin-2-1 entropy trend", Duration::from_secs(600), criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (id, title, budget, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {id}: {title} ({detail}) [{elapsed:.2?}]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {id}: {title}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}

