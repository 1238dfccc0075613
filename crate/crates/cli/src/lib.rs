//! Batch front end for the `qcliff` kernel. Every command loads a JSON algebra
//! definition, calls the library, and prints either text or JSON.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qcliff::forms::DEFAULT_MAX_DIM;
use qcliff::Error;

pub mod commands;
pub mod spec;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit code 2.
    Input(String),
    /// A computation failed or a check did not hold: exit code 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::Shape(_)
            | Error::DimensionTooLarge { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ContextMismatch(_)
            | Error::RingMismatch(_)
            | Error::NotAntisymmetric
            | Error::Invalid(_) => CliError::Input(msg),
            _ => CliError::Compute(msg),
        }
    }
}

/// Result of a command in both renderings.
pub struct Output {
    pub text: String,
    pub json: serde_json::Value,
    /// A check reported by the command failed; printed, then exit code 1.
    pub failed: bool,
}

#[derive(Parser, Debug)]
#[command(name = "qcliff", version, about = "Exact Clifford algebras of arbitrary bilinear forms")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest accepted dimension of V.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Attempts of the numeric split search.
    #[arg(long, global = true, default_value_t = 32)]
    pub seeds: usize,
    /// Eigenprojection residual tolerance of the numeric split search.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clifford product u·v.
    Mul { spec: PathBuf, u: String, v: String },
    /// Products of all pairs of basis blades.
    Table { spec: PathBuf },
    /// A-graded projection <u>^A_r.
    Grade { spec: PathBuf, u: String, r: usize },
    /// Verify the outer-exponential identities and cross-check the grade projectors.
    WickCheck { spec: PathBuf },
    /// Compare the gradings of two forms with the same symmetric part.
    GradingDiff { spec_a: PathBuf, spec_b: PathBuf },
    /// Witt split and signature of g.
    Witt { spec: PathBuf },
    /// Periodicity decomposition verdict.
    Periodicity { spec: PathBuf },
    /// Left ideal Cl·f.
    Ideal { spec: PathBuf, f: String },
    /// Peirce corner f·Cl·f and its classification.
    Corner { spec: PathBuf, f: String },
    /// Search for an orthogonal splitting of f.
    Split { spec: PathBuf, f: String },
    /// Solve for the U(2) generators of the spec's car block.
    U2 { spec: PathBuf },
    /// Iterate a parameter over a rational range and tabulate verdicts and dimensions.
    Sweep {
        spec: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value = "1")]
        step: String,
        /// Named or literal idempotent whose ideal and corner are tabulated.
        #[arg(long)]
        element: Option<String>,
        /// Also run the split search on the element.
        #[arg(long)]
        split: bool,
    },
}

/// Runs the parsed command; the caller prints and exits.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    commands::dispatch(cli)
}
