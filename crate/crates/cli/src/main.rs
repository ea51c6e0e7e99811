//! `pdsdp`: solve, generate, check and benchmark semidefinite programs.
//!
//! Exit codes: 0 optimal (or check passed), 1 usage or input error,
//! 2 iteration or time limit, 3 diverged, 4 check found a violation.

mod bench;
mod check;
mod family;
mod gen;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pdsdp_core::io::ProblemFormat;
use pdsdp_core::{SolverConfig, Termination};
use serde::Deserialize;

pub const EXIT_OPTIMAL: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_LIMIT: u8 = 2;
pub const EXIT_DIVERGED: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "pdsdp", version, about = "First-order primal-dual SDP solver")]
struct Cli {
    /// More log output (-v debug, -vv trace).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Only warnings and errors.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a problem file and write a `.sol` document.
    Solve(solve::SolveArgs),
    /// Generate a benchmark instance and its ground-truth sidecar.
    Gen(gen::GenArgs),
    /// Evaluate a solution or ground-truth sidecar against a problem.
    Check(check::CheckArgs),
    /// Run every (instance, algorithm) pair of a TOML manifest.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Full-rank primal-dual hybrid gradient.
    Pd,
    /// Low-rank variant with adaptive target rank.
    Lr,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Pd => "pd",
            Algorithm::Lr => "lr",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Sdpa,
    Extended,
}

impl From<FormatArg> for ProblemFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Sdpa => ProblemFormat::Sdpa,
            FormatArg::Extended => ProblemFormat::Extended,
        }
    }
}

/// Solver settings shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Combined-residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Rank-certificate tolerance [default: 1e-4 n].
    #[arg(long)]
    eps_lambda: Option<f64>,
    /// Stall window of the low-rank solver.
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Fraction of the largest stable step size.
    #[arg(long)]
    alpha_safety: Option<f64>,
    #[arg(long)]
    initial_rank: Option<usize>,
    /// Seed of the operator-norm estimate.
    #[arg(long)]
    seed: Option<u64>,
    /// Stop on the absolute rather than the relative residual.
    #[arg(long)]
    absolute: bool,
    /// Iterations between progress lines; 0 disables them.
    #[arg(long, default_value_t = 100)]
    log_every: usize,
}

impl SolverArgs {
    pub fn apply(&self, mut config: SolverConfig) -> SolverConfig {
        if let Some(v) = self.tol {
            config.eps_tol = v;
        }
        if self.eps_lambda.is_some() {
            config.eps_lambda = self.eps_lambda;
        }
        if let Some(v) = self.window {
            config.window_ell = v;
        }
        if let Some(v) = self.max_iter {
            config.max_iter = v;
        }
        if let Some(v) = self.time_limit {
            config.time_limit_s = v;
        }
        if let Some(v) = self.alpha_safety {
            config.alpha_safety = v;
        }
        if let Some(v) = self.initial_rank {
            config.initial_rank = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if self.absolute {
            config.termination = Termination::Absolute;
        }
        config.log_every = self.log_every;
        config
    }
}

/// Reads a problem, honouring an explicit format over the file extension.
pub fn read_problem(path: &std::path::Path, format: Option<FormatArg>) -> anyhow::Result<pdsdp_core::SdpProblem> {
    use anyhow::Context;
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let format = format.map_or_else(|| ProblemFormat::from_path(path), Into::into);
    let name = path
        .file_name()
        .and_then(|s| s.to_str())
        .map(|s| s.split('.').next().unwrap_or(s))
        .unwrap_or("problem");
    pdsdp_core::io::parse_problem(&text, format, name).with_context(|| format!("cannot parse {}", path.display()))
}

/// Writes `text` to `path`, creating parent directories.
pub fn write_file(path: &PathBuf, text: &str) -> anyhow::Result<()> {
    use anyhow::Context;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn init_logging(verbose: u8, quiet: bool) {
    let level = match (quiet, verbose) {
        (true, _) => log::LevelFilter::Warn,
        (false, 0) => log::LevelFilter::Info,
        (false, 1) => log::LevelFilter::Debug,
        (false, _) => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_target(false)
        .format_timestamp_millis()
        .parse_default_env()
        .init();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OPTIMAL });
        }
    };
    init_logging(cli.verbose, cli.quiet);
    let outcome = match &cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Gen(args) => gen::run(args),
        Command::Check(args) => check::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
