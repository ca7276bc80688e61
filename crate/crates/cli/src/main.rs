//! `uso`: generate, verify, analyse and solve unique sink orientations.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uso_core::{Direction, QpfMode, SubsetMask, UsoError};

#[derive(Debug, Parser)]
#[command(name = "uso", version, about = "Unique sink orientations of hypercubes")]
struct Cli {
    /// Emit a single JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a uso-map v1 file for one of the built-in families.
    Gen(GenArgs),
    /// Check orientation, unique-sink and bijection properties of a file.
    Verify { path: PathBuf },
    /// Period of the orbit of a start vertex under the outmap.
    Period {
        path: PathBuf,
        #[arg(long, default_value = "0")]
        start: SubsetMask,
        /// Print the whole orbit.
        #[arg(long)]
        orbit: bool,
    },
    /// Find the global sink with one of the available methods.
    Solve(SolveArgs),
    /// Count the USOs of the n-cube by exhaustive search (n ≤ 3).
    Enum {
        #[arg(long)]
        n: u32,
    },
    /// Query-count benchmark over a family and a range of dimensions.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Uniform,
    Psi,
    Product,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<u32>,
    /// Sink of the uniform orientation, decimal or `{1,3}`.
    #[arg(long)]
    a: Option<SubsetMask>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    lower: Option<PathBuf>,
    #[arg(long)]
    upper: Option<PathBuf>,
    #[arg(long)]
    dir: Option<Direction>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Scan,
    Period,
    Qpf,
    Facet,
    RandomEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecisionKind {
    Brute,
    Period,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    path: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Counting-register width; defaults to 2n+1.
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, default_value_t = 20)]
    samples: u32,
    #[arg(long, default_value_t = 3)]
    retries: u32,
    #[arg(long, default_value = "analytic")]
    mode: QpfMode,
    #[arg(long, value_enum, default_value = "brute")]
    decision: DecisionKind,
    /// Start vertex for random-edge.
    #[arg(long, default_value = "0")]
    start: SubsetMask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMethod {
    NaiveWalk,
    Scan,
    Period,
    Qpf,
    Facet,
    RandomEdge,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Dimensions, e.g. `1..12`, `3-6` or `2,4,8` (ranges are inclusive).
    #[arg(long)]
    n_range: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "naive-walk")]
    methods: Vec<BenchMethod>,
    /// Seeds in the same syntax as `--n-range`.
    #[arg(long, default_value = "0")]
    seeds: String,
    /// Sink of the uniform family; defaults to `[n]`.
    #[arg(long)]
    a: Option<SubsetMask>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Failures mapped onto the documented exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(UsoError),
    /// The report was printed; the input failed verification.
    #[error("verification failed")]
    VerificationFailed,
    #[error("{0}")]
    Exhausted(UsoError),
}

impl From<UsoError> for CliError {
    fn from(e: UsoError) -> Self {
        match e {
            UsoError::RecoveryExhausted { .. } => CliError::Exhausted(e),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Core(UsoError::NotUso(_) | UsoError::NotBijection) => 2,
            CliError::Core(_) => 1,
            CliError::VerificationFailed => 2,
            CliError::Exhausted(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen(args) => commands::gen(&args, cli.json),
        Command::Verify { path } => commands::verify(&path, cli.json),
        Command::Period { path, start, orbit } => commands::period(&path, start, orbit, cli.json),
        Command::Solve(args) => commands::solve(&args, cli.json),
        Command::Enum { n } => commands::enumerate(n, cli.json),
        Command::Bench(args) => commands::bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
