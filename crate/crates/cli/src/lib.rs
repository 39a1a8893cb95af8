//! Batch front end for `quditbloch`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain, contract or I/O error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quditbloch::bases::BasisKind;
use quditbloch::error::Error;

mod commands;
mod output;
mod selftest;
mod sweep;

pub use output::format_float;
pub use sweep::{parse_range, run_sweep, Range, SweepColumn, SweepRow, SweepSpec};

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quditbloch", version, about = "Qudit operator bases, Bloch vectors and entanglement geometry")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Seed for every sampling path.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Operator bases.
    Basis {
        #[command(subcommand)]
        action: BasisAction,
    },
    /// Named states.
    State {
        #[command(subcommand)]
        action: StateAction,
    },
    /// Bloch decomposition of a state read from a matrix JSON file.
    Decompose(DecomposeArgs),
    /// Region, HS measure, nearest separable state and optimal witness.
    Measure(MeasureArgs),
    /// Evaluate a two-parameter family on a grid.
    Sweep(SweepArgs),
    /// Run the orthogonality and round-trip suites.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum BasisAction {
    /// All elements with labels.
    Dump {
        #[arg(long, value_parser = parse_kind)]
        kind: BasisKind,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum StateAction {
    Make(MakeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateFamily {
    Bell,
    Isotropic,
    Qubit2p,
    Qutrit2p,
    Weylproj,
}

#[derive(Debug, Args)]
pub struct MakeArgs {
    #[arg(long, value_enum)]
    pub family: StateFamily,
    /// Local dimension (bell, isotropic, weylproj).
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Weyl projector index `n`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Weyl projector index `k`.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// `c_i = Tr(A_i† ρ)/N`.
    Coeff,
    /// `b_i = Tr(A_i† ρ)`.
    Expval,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long, value_parser = parse_kind)]
    pub kind: BasisKind,
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = ConventionArg::Coeff)]
    pub convention: ConventionArg,
    /// Treat the state as `d⊗d` and return local vectors and the correlation matrix.
    #[arg(long)]
    pub bipartite: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeasureFamily {
    Isotropic,
    Qubit2p,
    Qutrit2p,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum)]
    pub family: MeasureFamily,
    /// Local dimension for the isotropic family.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Also run the numerical nearest-separable search.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Qubit2p,
    Qutrit2p,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: PlaneArg,
    /// `MIN:MAX:STEPS`, endpoints included.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub alpha: Range,
    /// `MIN:MAX:STEPS`, endpoints included.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub beta: Range,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Columns besides alpha and beta; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Vec<SweepColumn>,
}

fn parse_kind(s: &str) -> Result<BasisKind, String> {
    s.parse::<BasisKind>().map_err(|e| e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with status 0
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Basis { action: BasisAction::Dump { kind, dim, format } } => {
            output::emit(out, &commands::basis_dump(*kind, *dim, *format)?)
        }
        Command::State { action: StateAction::Make(args) } => output::emit(out, &commands::state_make(args)?),
        Command::Decompose(args) => output::emit(out, &commands::decompose(args)?),
        Command::Measure(args) => output::emit(out, &commands::measure(args, cli.seed)?),
        Command::Sweep(args) => output::emit(out, &sweep::sweep_command(args)?),
        Command::Selftest => {
            let (bytes, ok) = selftest::run(cli.seed)?;
            output::emit(out, &bytes)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Core(quditbloch::error::Error::Contract("selftest failed".into())))
            }
        }
    }
}
