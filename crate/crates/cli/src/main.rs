//! `dcbo`: measure dependency-injection usage in class-based projects and
//! report CBO, DCBO, MAI and DMAI per project.
//!
//! ```text
//! dcbo generate out --step 10
//! dcbo analyze --each out --out report.csv
//! dcbo stats report.csv --metric dmai
//! dcbo chart report.csv --out trend.svg
//! ```
//!
//! Exit codes: 0 success, 1 parse diagnostics / malformed report / I/O,
//! 2 usage errors.

mod analyze;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dcbo_core::chart::render_svg;
use dcbo_core::generator::{generate_suite_with, DEFAULT_PEN_COUNT, DEFAULT_STEP};
use dcbo_core::report::{from_json_str, read_csv, to_csv_string, to_json_string, ReportRow};
use dcbo_core::stats::{friedman_test, split_by_threshold, Boundary};

#[derive(Parser, Debug)]
#[command(name = "dcbo", version, about = "DI-aware coupling and maintainability metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze project directories and write one report row per project
    Analyze(AnalyzeArgs),
    /// Write the synthetic experiment suite di_0 ... di_100
    Generate(GenerateArgs),
    /// Friedman test of a metric between the "No DI" and "DI" groups
    Stats(StatsArgs),
    /// Plot NCBO, NDCBO, MAI and DMAI against DI as an SVG
    Chart(ChartArgs),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Project directories (each one becomes a row)
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Treat every non-hidden subdirectory of each PATH as a project
    #[arg(long)]
    each: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    output_root: PathBuf,
    /// Percentage step between projects; must divide 100
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: u32,
    #[arg(long, default_value_t = DEFAULT_PEN_COUNT)]
    pens: usize,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// CSV (or JSON) report written by `analyze`
    report: PathBuf,
    #[arg(long, default_value_t = 0.5, value_parser = parse_unit)]
    threshold: f64,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Exclude)]
    boundary: BoundaryArg,
    #[arg(long, value_enum, default_value_t = Metric::Dmai)]
    metric: Metric,
    #[arg(long, default_value_t = 0.05, value_parser = parse_alpha)]
    alpha: f64,
}

#[derive(Args, Debug)]
struct ChartArgs {
    /// CSV (or JSON) report written by `analyze`
    report: PathBuf,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Mai,
    Dmai,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    Exclude,
    Lower,
    Upper,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Exclude => Boundary::Exclude,
            BoundaryArg::Lower => Boundary::Lower,
            BoundaryArg::Upper => Boundary::Upper,
        }
    }
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("alpha must lie strictly between 0 and 1, got {x}"))
    }
}

/// A bad invocation found after argument parsing. Exits with 2 like clap's
/// own usage errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Chart(args) => cmd_chart(args),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> anyhow::Result<ExitCode> {
    let projects = analyze::project_dirs(&args.paths, args.each)?;
    let outcome = analyze::analyze_dirs(&projects)?;
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    let text = match args.format {
        Format::Csv => to_csv_string(&outcome.rows),
        Format::Json => to_json_string(&outcome.rows),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(if outcome.failed_projects.is_empty() {
        ExitCode::SUCCESS
    } else {
        for p in &outcome.failed_projects {
            eprintln!("error: {p}: not reported because of the diagnostics above");
        }
        ExitCode::FAILURE
    })
}

fn cmd_generate(args: GenerateArgs) -> anyhow::Result<ExitCode> {
    let dirs = generate_suite_with(&args.output_root, args.step, args.pens)?;
    let listing: String = dirs.iter().map(|d| format!("{}\n", d.display())).collect();
    emit(None, &listing)?;
    Ok(ExitCode::SUCCESS)
}

/// Reads a report, accepting the JSON form (full precision) as well as CSV.
fn load_report(path: &Path) -> anyhow::Result<Vec<ReportRow>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('[') {
        from_json_str(&text).with_context(|| format!("{}: malformed JSON report", path.display()))
    } else {
        read_csv(&text).with_context(|| format!("{}: malformed report", path.display()))
    }
}

fn cmd_stats(args: StatsArgs) -> anyhow::Result<ExitCode> {
    let rows = load_report(&args.report)?;
    let (label, pick): (&str, fn(&ReportRow) -> f64) = match args.metric {
        Metric::Mai => ("MAI", |r| r.mai),
        Metric::Dmai => ("DMAI", |r| r.dmai),
    };
    let data: Vec<(f64, f64)> = rows.iter().map(|r| (r.di, pick(r))).collect();
    let split = split_by_threshold(&data, args.threshold, args.boundary.into())?;
    if split.truncated() {
        eprintln!(
            "warning: groups differ in size ({} No DI, {} DI); the longer one was truncated to {} blocks",
            split.no_di_count,
            split.di_count,
            split.matrix.blocks()
        );
    }
    let result = friedman_test(&split.matrix, args.alpha);
    let boundary = args.boundary.to_possible_value().expect("no skipped variants");
    let text = format!(
        "metric: {label}, threshold: {} ({} boundary)\n{result}\n",
        args.threshold,
        boundary.get_name()
    );
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_chart(args: ChartArgs) -> anyhow::Result<ExitCode> {
    let rows = load_report(&args.report)?;
    if rows.is_empty() {
        bail!("{}: report has no rows to plot", args.report.display());
    }
    emit(args.out.as_deref(), &render_svg(&rows))?;
    Ok(ExitCode::SUCCESS)
}
