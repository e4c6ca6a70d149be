mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use kstab_core::{Error, ErrorClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Summarize a series or profile.
    Info,
    /// Solve for the soliton parameter η₀.
    Soliton,
    /// Weighted volume, Futaki invariant, λ, μ and (on P¹) S and δ.
    Invariants,
    /// Weighted K-stability verdict with certificate.
    Verdict,
    /// Run the acceptance checks.
    Reproduce,
    /// Verdicts along the weight family `c + e^{−η(c)α}`.
    Sweep,
    /// Sample the normalized DH density.
    ExportDh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Weighted K-stability of log Fano pairs with a rank-one torus action.
#[derive(Debug, Parser)]
#[command(name = "kstab", version)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Built-in name (e.g. MM2.28, conic-P2) or path to a series document.
    pub input: Option<String>,
    /// constant:R | exp:F | soliton | family:C | path to a weight document.
    #[arg(long, default_value = "soliton")]
    pub weight: String,
    /// Coefficient of the conic in (P², ½L + cQ).
    #[arg(long)]
    pub c: Option<String>,
    /// GIT class of the fixed curve: stable, polystable, semistable, unstable.
    #[arg(long)]
    pub git: Option<String>,
    #[arg(long, env = "KSTAB_TOL", default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Comma-separated criterion groups or ids for `reproduce`.
    #[arg(long)]
    pub only: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Comma-separated family parameters for `sweep`.
    #[arg(long, default_value = "0,1/2,1,2,4")]
    pub family: String,
    #[arg(long, default_value_t = kstab_core::reproduce::DEFAULT_SEED)]
    pub seed: u64,
}

/// Exit status for an error: 2 for bad input, 3 for a failed precondition,
/// 1 otherwise.
pub fn error_code(err: &Error) -> u8 {
    match err.class() {
        ErrorClass::Input => 2,
        ErrorClass::Precondition => 3,
        ErrorClass::Internal => 1,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        eprintln!(
            "kstab: ParseError: tolerance must be positive, got {}",
            args.tol
        );
        return ExitCode::from(2);
    }
    match commands::run(&args) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("kstab: {}: {err}", err.kind());
            ExitCode::from(error_code(&err))
        }
    }
}
