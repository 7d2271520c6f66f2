//! Command-line front end.
//!
//! Every subcommand writes its data table to the output directory together
//! with a `<stem>.meta.json` sidecar, and returns the lines it wants shown
//! on stdout. [`main_with_args`] maps failures to exit codes: 2 for invalid
//! input, 3 for numerical failures, 4 when standard and extended precision
//! disagree, 1 for I/O problems.

mod commands;
mod output;
mod scan;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::real::Precision;
use crate::recurrence::Variant;

pub use output::{read_sidecar, Format, Output, Sidecar, Table};
pub use scan::{log_grid, read_completed, run_scan, ScanRow};

/// Parsed command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "moyal", version, about = "Constant-curvature metrics on the Moyal plane")]
pub struct RunConfig {
    /// Directory receiving the output files.
    #[arg(long, env = "MOYAL_OUT_DIR", default_value = ".", global = true)]
    pub out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t, global = true)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t, global = true)]
    pub precision: Precision,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Commutative family k = A r^(a-1) / (b + r^(2a)).
    Classical(ClassicalArgs),
    /// Solve the recurrence from one seed.
    Solve(SolveArgs),
    /// Exponent scan over a grid of seeds.
    Scan(ScanArgs),
    /// Locate the seed of the linearly growing solution.
    Fs(FsArgs),
    /// Deformed Fubini-Study factor for several theta.
    Perturb(PerturbArgs),
    /// Randomized invariant checks with a fixed seed.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassicalArgs {
    #[arg(long = "A", default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(rename = "A")]
    pub scale: f64,
    #[arg(long = "a", default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(rename = "a")]
    pub exponent: f64,
    #[arg(long = "b", default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(rename = "b")]
    pub shape: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub r_min: f64,
    #[arg(long, default_value_t = 1e2)]
    pub r_max: f64,
    /// Log-spaced grid points.
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    /// Also evaluate the Gauss-Bonnet integral numerically.
    #[arg(long)]
    pub quadrature: bool,
    /// Outer radius of the Gauss-Bonnet integral.
    #[arg(long, default_value_t = 1e4)]
    pub r_cut: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    #[serde(rename = "R")]
    pub curvature: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub phi0: f64,
    /// Number of terms phi_0 .. phi_{N-1}.
    #[arg(long = "N", default_value_t = 6001)]
    #[serde(rename = "N")]
    pub len: usize,
    #[arg(long, value_enum, default_value_t)]
    pub variant: Variant,
    /// Source constant of the Rosenberg variant.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    /// Skip the cross-precision re-run.
    #[arg(long)]
    pub no_recheck: bool,
    /// Largest accepted relative difference in the re-run.
    #[arg(long, default_value_t = 1e-6)]
    pub recheck_tol: f64,
}

#[derive(Debug, Clone, Args, Serialize, PartialEq)]
pub struct ScanArgs {
    #[arg(long = "R", default_value_t = 1.0)]
    #[serde(rename = "R")]
    pub curvature: f64,
    /// Smallest seed; defaults to 0.2 sqrt(R). Seeds below about
    /// 0.12 sqrt(R) overflow.
    #[arg(long)]
    pub phi0_min: Option<f64>,
    /// Largest seed; defaults to 10 sqrt(R).
    #[arg(long)]
    pub phi0_max: Option<f64>,
    #[arg(long, default_value_t = 25)]
    pub points: usize,
    #[arg(long = "N", default_value_t = 6001)]
    #[serde(rename = "N")]
    pub len: usize,
    /// Start over even if a matching partial scan exists.
    #[arg(long)]
    #[serde(skip)]
    pub no_resume: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FsArgs {
    #[arg(long = "R", default_value_t = 1.0)]
    #[serde(rename = "R")]
    pub curvature: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long = "N", default_value_t = 6001)]
    #[serde(rename = "N")]
    pub len: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PerturbArgs {
    #[arg(long, num_args = 1.., default_values_t = [0.0])]
    pub theta: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    #[arg(long = "C1", default_value_t = -1.0 / 3.0, allow_negative_numbers = true)]
    #[serde(rename = "C1")]
    pub c1: f64,
    #[arg(long, default_value_t = 10.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
}

/// Command-line failure with an associated exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] Error),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(
        "precision disagreement at n = {index}: standard {standard}, extended {extended} \
         (relative {relative:e}, tolerance {tolerance:e})"
    )]
    Precision {
        index: usize,
        standard: f64,
        extended: f64,
        relative: f64,
        tolerance: f64,
    },
    #[error("{0}")]
    CheckFailed(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),
    #[error("json failure: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(Error::InvalidParameter { .. } | Error::Domain { .. } | Error::Capacity { .. })
            | CliError::Usage(_) => 2,
            CliError::Library(_) | CliError::CheckFailed(_) => 3,
            CliError::Precision { .. } => 4,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

/// What a command produced: lines for stdout and the files written.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

/// Executes a parsed command.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let out = Output::new(&config.out_dir, config.format)?;
    match &config.command {
        Command::Classical(a) => commands::classical(a, config.precision, &out),
        Command::Solve(a) => commands::solve(a, config.precision, &out),
        Command::Scan(a) => commands::scan(a, config.precision, &out),
        Command::Fs(a) => commands::fs(a, config.precision, &out),
        Command::Perturb(a) => commands::perturb(a, config.precision, &out),
        Command::Check(a) => commands::check(a, config.precision, &out),
    }
}

/// Parses `args`, runs the command, prints its output and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&config) {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
