//! `strichartz`: batch verification runs over the core library.
//!
//! Exit codes: 0 all checks pass, 1 some check fails, 2 bad configuration,
//! 3 a resource cap was hit.

mod config;
mod report;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use config::{Format, RunConfig};
use report::{Report, Task};

#[derive(Parser, Debug)]
#[command(name = "strichartz", version, about = "Exact and numeric checks for sharp Strichartz estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat JSON configuration; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report destination (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest sector for S-graded suites.
    #[arg(long, global = true)]
    max_s: Option<u32>,
    /// Largest word length for `words-check`.
    #[arg(long, global = true)]
    max_n: Option<u32>,
    /// Omit wall times so repeated runs give identical reports.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Exact tables of Q_S with row sums, factorization and spectrum checks.
    Qtable,
    /// Q coefficients from the integral, from word parities and in closed form.
    WordsCheck,
    /// Idempotency of the Hermite frame operators P_S.
    HermiteProj,
    /// Sector operator norms against (μ)_s/s!.
    HermiteNorm,
    /// Exact kernel decomposition of K_S.
    KsCheck,
    /// Closed-form Hermite and Laguerre flows against a quadrature propagator.
    FlowCheck,
    /// Gaussian quotients against the sharp constant, and perturbations.
    Strichartz,
    /// Gaussian-measure equivalence and Parseval checks on random data.
    Equivalence,
    /// Funk–Hecke spectrum of the sphere operator and its gap.
    FunkHecke,
    /// Weighted space-time identity and the sphere quadratic form.
    Weighted,
    /// Every suite, or those listed under `suites` in the config.
    ReportAll,
}

impl Command {
    fn suites(self, cfg: &RunConfig) -> Vec<&'static str> {
        let name = match self {
            Command::Qtable => "qtable",
            Command::WordsCheck => "words-check",
            Command::HermiteProj => "hermite-proj",
            Command::HermiteNorm => "hermite-norm",
            Command::KsCheck => "ks-check",
            Command::FlowCheck => "flow-check",
            Command::Strichartz => "strichartz",
            Command::Equivalence => "equivalence",
            Command::FunkHecke => "funk-hecke",
            Command::Weighted => "weighted",
            Command::ReportAll => {
                return suites::SUITES
                    .iter()
                    .copied()
                    .filter(|s| cfg.suites.is_empty() || cfg.suites.iter().any(|c| c == s))
                    .collect();
            }
        };
        vec![name]
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.max_s.is_some() {
        cfg.max_s = cli.max_s;
    }
    if let Some(n) = cli.max_n {
        cfg.max_n = n;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if cli.no_timing {
        cfg.timing = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli, cfg: RunConfig) -> Result<Report, (u8, String)> {
    let mut tasks: Vec<Task> = Vec::new();
    let mut tables = Vec::new();
    for name in cli.command.suites(&cfg) {
        match suites::build(name, &cfg) {
            Ok(s) => {
                tasks.extend(s.tasks);
                tables.extend(s.tables);
            }
            Err(e @ strichartz_core::Error::CapExceeded { .. }) => return Err((3, e.to_string())),
            Err(e) => return Err((1, e.to_string())),
        }
    }
    if cli.command == Command::ReportAll {
        // tables only for single-suite runs
        tables.clear();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| (2, format!("cannot start worker pool: {e}")))?;
    let timing = cfg.timing;
    // indexed collect keeps generation order
    let checks = pool.install(|| tasks.into_par_iter().map(|t| t.execute(timing)).collect());
    Ok(Report::new(cfg, checks, tables))
}

fn emit(report: &Report) -> io::Result<()> {
    let sink: Box<dyn Write> = match &report.config_echo.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match report.config_echo.format {
        Format::Json => report.write_json(sink),
        Format::Csv => report.write_csv(sink),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cli, cfg) {
        Ok(r) => r,
        Err((code, e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(code);
        }
    };
    if let Err(e) = emit(&report) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    let s = &report.summary;
    eprintln!("{} checks: {} passed, {} failed ({} errors, {} over caps)", s.total, s.passed, s.failed, s.errors, s.cap_exceeded);
    let failures: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    for c in failures.iter().take(20) {
        eprintln!("FAIL {}: expected {}, got {}{}", c.id, c.expected, c.actual, c.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default());
    }
    if failures.len() > 20 {
        eprintln!("… and {} more failures", failures.len() - 20);
    }
    ExitCode::from(report.exit_code())
}
