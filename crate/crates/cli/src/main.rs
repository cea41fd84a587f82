//! `qdyn` — open-system quantum dynamics from the command line.
//!
//! Subcommands cover channel verification (`check-cp`), dilation models
//! (`dilate`, `swap-convert`), measurement chains (`chain-run`,
//! `transfer-matrix`), weak values (`weak`), and Bloch vectors (`bloch`).
//! All inputs and outputs use the JSON matrix-document format; see `doc.rs`.
//!
//! Exit codes are stable API: 0 success, 2 parse/validation failure,
//! 3 not-CP verdict, 4 non-unitary input, 5 degenerate post-selection.

mod commands;
mod doc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Report style for human-facing output on stdout. Documents written with
/// `--out` are always JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "qdyn", version, about = "Open-system quantum dynamics toolkit")]
struct Cli {
    /// Output format for reports printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check complete positivity of a channel (or Choi matrix) document.
    CheckCp {
        /// Channel document, or a d^2 x d^2 matrix document holding a Choi matrix.
        input: PathBuf,
        /// Eigenvalue tolerance for the positivity verdict.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Random pure states sampled by the positivity classifier.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Classifier seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Extract the Kraus channel of a product-state unitary-universe model.
    Dilate {
        /// System state document.
        #[arg(long)]
        system: PathBuf,
        /// Environment state document.
        #[arg(long)]
        environment: PathBuf,
        /// Joint unitary document on system (x) environment.
        #[arg(long)]
        unitary: PathBuf,
        /// Write the extracted channel document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert correlated system-environment dynamics into a CPTP channel.
    SwapConvert {
        /// Joint state document on system (x) environment.
        rho_se: PathBuf,
        /// Unitary document on system (x) environment.
        unitary: PathBuf,
        /// Factor dimensions, e.g. --dims 2,2.
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        /// Write the extracted channel document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a measurement chain and write the trajectory as JSON lines.
    ChainRun {
        /// Chain-spec document.
        spec: PathBuf,
        /// Number of measurement steps.
        #[arg(long)]
        steps: usize,
        /// Trajectory output path (one record per line).
        #[arg(long)]
        out: PathBuf,
    },
    /// Transfer matrix of two successive measurements on a context state.
    TransferMatrix {
        /// Context state document.
        #[arg(long)]
        state: PathBuf,
        /// Earlier measurement document.
        #[arg(long)]
        first: PathBuf,
        /// Later measurement document.
        #[arg(long)]
        second: PathBuf,
        /// Compute the weak-measurement transfer matrix instead.
        #[arg(long)]
        weak: bool,
        /// Write the matrix document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weak values of an observable for every post-selection branch.
    Weak {
        /// Pre-measurement state document.
        #[arg(long)]
        state: PathBuf,
        /// Observable document (Hermitian matrix).
        #[arg(long)]
        observable: PathBuf,
        /// Post-selecting measurement document.
        #[arg(long)]
        measurement: PathBuf,
        /// Write the weak-value table as a JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bloch coherence vector of a state in the Gell-Mann basis.
    Bloch {
        /// State document.
        state: PathBuf,
        /// Write the coherence vector as a column-matrix document.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!(
            "expected two comma-separated dimensions, got \"{s}\""
        ));
    }
    let a = parts[0]
        .trim()
        .parse::<usize>()
        .map_err(|e| e.to_string())?;
    let b = parts[1]
        .trim()
        .parse::<usize>()
        .map_err(|e| e.to_string())?;
    if a == 0 || b == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((a, b))
}

/// Errors carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Parse, validation, or I/O problem (exit 2).
    Input(String),
    /// An input that must be unitary is not (exit 4).
    NotUnitary(String),
    /// Post-selection weight too small (exit 5).
    ZeroPostSelection(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::NotUnitary(_) => 4,
            CliError::ZeroPostSelection(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::NotUnitary(m) | CliError::ZeroPostSelection(m) => m,
        }
    }
}

impl From<qdyn::Error> for CliError {
    fn from(e: qdyn::Error) -> Self {
        match e {
            qdyn::Error::NotUnitary(_) => CliError::NotUnitary(e.to_string()),
            qdyn::Error::ZeroPostSelection(_) => CliError::ZeroPostSelection(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::CheckCp {
            input,
            tol,
            samples,
            seed,
        } => commands::check_cp::run(&input, tol, samples, seed, cli.format),
        Command::Dilate {
            system,
            environment,
            unitary,
            out,
        } => commands::dilate::run(&system, &environment, &unitary, out.as_deref(), cli.format),
        Command::SwapConvert {
            rho_se,
            unitary,
            dims,
            out,
        } => commands::swap_convert::run(&rho_se, &unitary, dims, out.as_deref(), cli.format),
        Command::ChainRun { spec, steps, out } => {
            commands::chain_run::run(&spec, steps, &out, cli.format)
        }
        Command::TransferMatrix {
            state,
            first,
            second,
            weak,
            out,
        } => commands::transfer_matrix::run(
            &state,
            &first,
            &second,
            weak,
            out.as_deref(),
            cli.format,
        ),
        Command::Weak {
            state,
            observable,
            measurement,
            out,
        } => commands::weak::run(
            &state,
            &observable,
            &measurement,
            out.as_deref(),
            cli.format,
        ),
        Command::Bloch { state, out } => commands::bloch::run(&state, out.as_deref(), cli.format),
    }
}
