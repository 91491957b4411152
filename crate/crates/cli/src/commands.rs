use std::fmt::Display;

use serde_json::{json, Value};
use sofic_dyck::automaton::{
    builtin, check_h_codeterminism, check_h_determinism, stack_equivalence_check, DeterminismReport,
    DyckAutomaton,
};
use sofic_dyck::languages::{circularity_check, h_matrix, HKind, LanguageError};
use sofic_dyck::series::{LetterSeries, MultiSeries, Series, SeriesMatrix, TruncatedSeries};
use sofic_dyck::zeta::{
    decomposition_check, periodic_patterns, pn_bruteforce, zeta_bruteforce, zeta_det_route, zeta_subst_route,
    ZetaError,
};

use crate::{
    CheckArgs, Common, ExportArgs, Format, Method, PeriodicArgs, Property, SeriesOfArgs, ZetaArgs, EXIT_FAIL,
    EXIT_INPUT, EXIT_PRECONDITION,
};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

fn input_error(message: impl Display) -> CliError {
    CliError {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        let code = match e {
            ZetaError::Precondition(_) | ZetaError::Ambiguous { .. } | ZetaError::AmbiguousGraph => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<LanguageError> for CliError {
    fn from(e: LanguageError) -> Self {
        input_error(e)
    }
}

type CmdResult = Result<u8, CliError>;

const UNIVARIATE_CAP: usize = 12;
const MULTIVARIATE_CAP: usize = 8;

fn load(spec: &str) -> Result<DyckAutomaton, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).map_err(input_error);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| input_error(format!("{spec}: {e}")))?;
    DyckAutomaton::from_json(&text).map_err(|e| input_error(format!("{spec}: {e}")))
}

/// The left and right presentations (the same automaton when only one is given).
fn load_pair(common: &Common) -> Result<(DyckAutomaton, DyckAutomaton), CliError> {
    match common.automata.as_slice() {
        [one] => {
            let a = load(one)?;
            Ok((a.clone(), a))
        }
        [left, right] => Ok((load(left)?, load(right)?)),
        _ => Err(input_error("give one or two automata")),
    }
}

fn configure_workers(workers: usize) {
    if workers > 0 {
        // fails only if a global pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

trait CliSeries: LetterSeries {
    fn json(&self) -> Value;
    /// Smallest degree at which the two series differ.
    fn first_difference(&self, other: &Self) -> Option<usize>;
}

impl CliSeries for TruncatedSeries {
    fn json(&self) -> Value {
        serde_json::to_value(self.to_json_value()).expect("series JSON")
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        TruncatedSeries::first_difference(self, other)
    }
}

impl CliSeries for MultiSeries {
    fn json(&self) -> Value {
        serde_json::to_value(self.to_json_value()).expect("series JSON")
    }

    fn first_difference(&self, other: &Self) -> Option<usize> {
        self.minus(other).terms().map(|(m, _)| m.degree()).min()
    }
}

pub fn zeta(args: ZetaArgs) -> CmdResult {
    configure_workers(args.common.workers);
    let (left, right) = load_pair(&args.common)?;
    if args.multivariate {
        let cap = args.cap.unwrap_or(MULTIVARIATE_CAP);
        if args.method == Method::Bruteforce {
            return Err(input_error("brute force counts periodic points; it has no multivariate form"));
        }
        run_zeta::<MultiSeries>(&left, &right, cap, args.method, args.common.format, None)
    } else {
        let cap = args.cap.unwrap_or(UNIVARIATE_CAP);
        // periodic points belong to the shift, so either presentation gives them
        let brute = matches!(args.method, Method::Bruteforce | Method::All)
            .then(|| zeta_bruteforce(&left, cap, 0))
            .transpose()?;
        run_zeta::<TruncatedSeries>(&left, &right, cap, args.method, args.common.format, brute)
    }
}

fn run_zeta<S: CliSeries>(
    left: &DyckAutomaton,
    right: &DyckAutomaton,
    cap: usize,
    method: Method,
    format: Format,
    brute: Option<S>,
) -> CmdResult {
    let mut routes: Vec<(&str, S)> = Vec::new();
    if let Some(b) = brute {
        routes.push(("bruteforce", b));
    }
    if matches!(method, Method::Determinant | Method::All) {
        routes.push(("determinant", zeta_det_route::<S>(left, right, cap)?));
    }
    if matches!(method, Method::Substitution | Method::All) {
        routes.push(("substitution", zeta_subst_route::<S>(left, right, cap)?));
    }
    if method != Method::All {
        let (_, s) = &routes[0];
        match format {
            Format::Text => println!("{s}"),
            Format::Json => print_json(&s.json()),
        }
        return Ok(0);
    }
    let mut disagreement: Option<(&str, &str, usize)> = None;
    for (name, s) in &routes[1..] {
        if let Some(n) = routes[0].1.first_difference(s) {
            if disagreement.map_or(true, |(_, _, m)| n < m) {
                disagreement = Some((routes[0].0, name, n));
            }
        }
    }
    match format {
        Format::Text => {
            let width = routes.iter().map(|(n, _)| n.len()).max().unwrap_or(0) + 1;
            for (name, s) in &routes {
                println!("{:<width$} {s}", format!("{name}:"));
            }
            match disagreement {
                None => println!("AGREE"),
                Some((a, b, n)) => println!("DISAGREE: {a} and {b} differ at degree {n}"),
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (name, s) in &routes {
                obj.insert(name.to_string(), s.json());
            }
            print_json(&json!({
                "routes": obj,
                "verdict": if disagreement.is_none() { "AGREE" } else { "DISAGREE" },
                "first_difference": disagreement.map(|(_, _, n)| n),
            }));
        }
    }
    Ok(if disagreement.is_none() { 0 } else { EXIT_FAIL })
}

struct CheckLine {
    property: &'static str,
    kind: Option<HKind>,
    automaton: String,
    passed: bool,
    detail: String,
}

fn determinism_line(a: &DyckAutomaton, source: &str, r: DeterminismReport, property: &'static str) -> CheckLine {
    let detail = match &r.witness {
        None => format!("words up to length {}", r.max_length_checked),
        Some(w) => {
            let pair = |(p, q): (usize, usize)| format!("({},{})", a.states()[p], a.states()[q]);
            if w.first == w.second {
                format!("word `{}` has two paths {}", a.render(&w.word), pair(w.first))
            } else {
                format!("word `{}` has paths {} and {}", a.render(&w.word), pair(w.first), pair(w.second))
            }
        }
    };
    CheckLine {
        property,
        kind: Some(r.kind),
        automaton: source.to_string(),
        passed: r.passed(),
        detail,
    }
}

pub fn check(args: CheckArgs) -> CmdResult {
    configure_workers(args.common.workers);
    let mut props = args.properties.clone();
    if props.contains(&Property::All) {
        props = vec![
            Property::Circularity,
            Property::Determinism,
            Property::Codeterminism,
            Property::Decomposition,
            Property::StackEquivalence,
        ];
    }
    props.dedup();
    let mut lines = Vec::new();
    for source in &args.common.automata {
        let a = load(source)?;
        for &p in &props {
            match p {
                Property::Circularity => {
                    let kinds = args.kind.map_or(vec![HKind::CStarMc, HKind::MrPlusC], |k| vec![k]);
                    for kind in kinds {
                        let r = circularity_check(&a, kind, args.max_length)?;
                        let detail = match &r.witness {
                            None => format!("{} closed sequences up to total length {}", r.sequences, r.max_total_len),
                            Some(w) => {
                                let show = |f: &[sofic_dyck::words::Word]| {
                                    f.iter().map(|x| a.render(x)).collect::<Vec<_>>().join(" | ")
                                };
                                format!(
                                    "cyclic word `{}` factors as [{}] and [{}]",
                                    a.render(&w.word),
                                    show(&w.first),
                                    show(&w.second)
                                )
                            }
                        };
                        lines.push(CheckLine {
                            property: "circularity",
                            kind: Some(kind),
                            automaton: source.clone(),
                            passed: r.passed(),
                            detail,
                        });
                    }
                }
                Property::Determinism => {
                    let kind = args.kind.unwrap_or(HKind::CStarMc);
                    let r = check_h_determinism(&a, kind, args.max_length);
                    lines.push(determinism_line(&a, source, r, "determinism"));
                }
                Property::Codeterminism => {
                    let kind = args.kind.unwrap_or(HKind::MrPlusC);
                    let r = check_h_codeterminism(&a, kind, args.max_length);
                    lines.push(determinism_line(&a, source, r, "codeterminism"));
                }
                Property::Decomposition => {
                    let r = decomposition_check(&a, args.max_length)?;
                    let detail = match r.violations.first() {
                        None => format!("{} words up to length {}", r.words_checked, r.max_len),
                        Some(v) => format!(
                            "`{}`: in X {}, in X(C*Mc) {}, in X(Mr+C) {}",
                            a.render(&v.word),
                            v.in_shift,
                            v.in_left,
                            v.in_right
                        ),
                    };
                    lines.push(CheckLine {
                        property: "decomposition",
                        kind: None,
                        automaton: source.clone(),
                        passed: r.passed(),
                        detail,
                    });
                }
                Property::StackEquivalence => {
                    let r = stack_equivalence_check(&a, args.max_length);
                    let detail = match &r.witness {
                        None => format!("{} words up to length {}", r.words_checked, r.max_len),
                        Some(w) => format!("runs of `{}` differ", a.render(w)),
                    };
                    lines.push(CheckLine {
                        property: "stack-equivalence",
                        kind: None,
                        automaton: source.clone(),
                        passed: r.passed(),
                        detail,
                    });
                }
                Property::All => unreachable!("expanded above"),
            }
        }
    }
    let all_passed = lines.iter().all(|l| l.passed);
    match args.common.format {
        Format::Text => {
            let many = args.common.automata.len() > 1;
            for l in &lines {
                let verdict = if l.passed { "PASS" } else { "FAIL" };
                let kind = l.kind.map(|k| format!(" {k}")).unwrap_or_default();
                let source = if many { format!(" [{}]", l.automaton) } else { String::new() };
                println!("{verdict} {}{kind}{source}: {}", l.property, l.detail);
            }
        }
        Format::Json => {
            let results: Vec<Value> = lines
                .iter()
                .map(|l| {
                    json!({
                        "property": l.property,
                        "kind": l.kind.map(|k| k.name()),
                        "automaton": l.automaton,
                        "passed": l.passed,
                        "detail": l.detail,
                    })
                })
                .collect();
            print_json(&json!({ "passed": all_passed, "results": results }));
        }
    }
    Ok(if all_passed { 0 } else { EXIT_FAIL })
}

pub fn periodic(args: PeriodicArgs) -> CmdResult {
    configure_workers(args.common.workers);
    if args.length == 0 {
        return Err(input_error("period length must be at least 1"));
    }
    let (a, _) = load_pair(&args.common)?;
    let patterns = if args.list {
        Some(periodic_patterns(&a, args.length)?)
    } else {
        None
    };
    let count = match &patterns {
        Some(p) => p.len() as u128,
        None => pn_bruteforce(&a, args.length)?,
    };
    match args.common.format {
        Format::Text => {
            println!("{count}");
            for w in patterns.iter().flatten() {
                println!("{}", a.render(w));
            }
        }
        Format::Json => {
            let mut v = json!({ "n": args.length, "count": count.to_string() });
            if let Some(p) = &patterns {
                v["patterns"] = json!(p.iter().map(|w| a.render(w)).collect::<Vec<_>>());
            }
            print_json(&v);
        }
    }
    Ok(0)
}

fn state_index(a: &DyckAutomaton, id: &str) -> Result<usize, CliError> {
    a.state_index(id.trim())
        .ok_or_else(|| input_error(format!("unknown state `{}`", id.trim())))
}

fn print_matrix<S: CliSeries>(
    a: &DyckAutomaton,
    m: &SeriesMatrix<S>,
    entry: Option<(usize, usize)>,
    format: Format,
) -> CmdResult {
    match (entry, format) {
        (Some((p, q)), Format::Text) => println!("{}", m.get(p, q)),
        (Some((p, q)), Format::Json) => print_json(&m.get(p, q).json()),
        (None, Format::Text) => {
            for p in 0..m.dim() {
                for q in 0..m.dim() {
                    println!("[{},{}] {}", a.states()[p], a.states()[q], m.get(p, q));
                }
            }
        }
        (None, Format::Json) => {
            let rows: Vec<Value> = (0..m.dim())
                .map(|p| Value::Array((0..m.dim()).map(|q| m.get(p, q).json()).collect()))
                .collect();
            print_json(&json!({ "states": a.states(), "entries": rows }));
        }
    }
    Ok(0)
}

pub fn series_of(args: SeriesOfArgs) -> CmdResult {
    let (a, _) = load_pair(&args.common)?;
    if a.state_count() > sofic_dyck::languages::MAX_STATES {
        return Err(LanguageError::TooManyStates(a.state_count()).into());
    }
    let entry = match &args.entry {
        None => None,
        Some(text) => {
            let (p, q) = text
                .split_once(',')
                .ok_or_else(|| input_error(format!("entry `{text}` is not of the form p,q")))?;
            Some((state_index(&a, p)?, state_index(&a, q)?))
        }
    };
    if args.multivariate {
        let cap = args.cap.unwrap_or(MULTIVARIATE_CAP);
        print_matrix(&a, &h_matrix::<MultiSeries>(&a, args.matrix, cap), entry, args.common.format)
    } else {
        let cap = args.cap.unwrap_or(UNIVARIATE_CAP);
        print_matrix(&a, &h_matrix::<TruncatedSeries>(&a, args.matrix, cap), entry, args.common.format)
    }
}

pub fn export(args: ExportArgs) -> CmdResult {
    let a = load(&args.automaton)?;
    let text = a.to_json();
    match args.output {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(0)
}
