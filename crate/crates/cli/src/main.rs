mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sofic_dyck::languages::HKind;

/// Zeta functions and checks for sofic-Dyck shifts.
///
/// Automata are JSON files or built-ins written `builtin:NAME`
/// (dyck-1, dyck-2, motzkin-1-1, motzkin-2-1, fig1-sofic, fig2, golden-mean).
#[derive(Parser)]
#[command(name = "sofic-dyck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the zeta function of the presented shift.
    Zeta(ZetaArgs),
    /// Check structural properties; exits 1 if any check fails.
    Check(CheckArgs),
    /// Count (or list) the periodic patterns of one length.
    Periodic(PeriodicArgs),
    /// Print an entry (or all entries) of a language matrix.
    SeriesOf(SeriesOfArgs),
    /// Print an automaton as JSON.
    Export(ExportArgs),
}

#[derive(Args)]
struct Common {
    /// Automaton file or `builtin:NAME`. Give it twice to use separate
    /// left-reduced and right-reduced presentations.
    #[arg(short = 'a', long = "automaton", required = true)]
    automata: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Determinant,
    Substitution,
    Bruteforce,
    All,
}

#[derive(Args)]
struct ZetaArgs {
    #[command(flatten)]
    common: Common,
    /// Degree cap (default 12, or 8 with --multivariate).
    #[arg(short = 'N', long = "cap")]
    cap: Option<usize>,
    #[arg(short, long, value_enum, default_value_t = Method::Determinant)]
    method: Method,
    /// Keep letters as commuting variables.
    #[arg(long)]
    multivariate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Circularity,
    Determinism,
    Codeterminism,
    Decomposition,
    StackEquivalence,
    All,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short, long = "property", value_enum, required = true)]
    properties: Vec<Property>,
    /// Word length bound (total length for circularity).
    #[arg(long, default_value_t = 6)]
    max_length: usize,
    /// Matrix language to check; by default C*Mc for determinism, Mr+C for
    /// codeterminism, and both for circularity.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<HKind>,
}

#[derive(Args)]
struct PeriodicArgs {
    #[command(flatten)]
    common: Common,
    #[arg(short = 'n', long)]
    length: usize,
    /// Also print the patterns, sorted.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct SeriesOfArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_parser = parse_kind)]
    matrix: HKind,
    /// Row and column state ids, as `1,1`. Omit for the whole matrix.
    #[arg(long)]
    entry: Option<String>,
    /// Degree cap (default 12, or 8 with --multivariate).
    #[arg(short = 'N', long = "cap")]
    cap: Option<usize>,
    #[arg(long)]
    multivariate: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Automaton file or `builtin:NAME`.
    #[arg(short = 'a', long = "automaton")]
    automaton: String,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<std::path::PathBuf>,
}

fn parse_kind(s: &str) -> Result<HKind, String> {
    s.parse::<HKind>().map_err(|e| e.to_string())
}

/// Exit statuses.
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Zeta(args) => commands::zeta(args),
        Command::Check(args) => commands::check(args),
        Command::Periodic(args) => commands::periodic(args),
        Command::SeriesOf(args) => commands::series_of(args),
        Command::Export(args) => commands::export(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
