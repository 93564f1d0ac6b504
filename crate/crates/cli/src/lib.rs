//! The `sldet` command line: operator spec files, an expression parser for
//! custom potentials, and JSON output for each command.

pub mod commands;
mod error;
pub mod expr;
pub mod fit;
pub mod spec_file;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use error::CliError;

use commands::Overrides;

#[derive(Debug, Parser)]
#[command(name = "sldet", version, about = "Zeta-regularized determinants of Sturm-Liouville operators on [0, 1]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Target {
    /// Spec file, or one of: dirichlet, bessel, jacobi, factorized.
    target: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s1: Option<f64>,
    /// Adds `z` to the operator.
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<f64>,
    /// Print the resolved spec file instead of computing.
    #[arg(long)]
    dump_spec: bool,
}

impl Target {
    fn overrides(&self) -> Overrides {
        Overrides {
            nu: self.nu,
            alpha: self.alpha,
            beta: self.beta,
            s0: self.s0,
            s1: self.s1,
            shift: self.shift,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant through the Wronskian formula.
    Det {
        #[command(flatten)]
        target: Target,
    },
    /// Lowest eigenvalues with their oscillation counts.
    Spectrum {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Compare every available route for a family.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Largest relative disagreement accepted between routes
        /// [default: 1e-3 for bessel, whose trace route is the coarsest, else 1e-5].
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Frobenius coefficients at one endpoint.
    Series {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        endpoint: u8,
        #[arg(long)]
        terms: Option<usize>,
    },
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "{text}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn execute(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    let target = match &command {
        Command::Det { target } | Command::Spectrum { target, .. } => target,
        Command::Verify { target, .. } | Command::Series { target, .. } => target,
    };
    let file = commands::resolve(&target.target, &target.overrides())?;
    if target.dump_spec {
        return write!(out, "{}", file.dump()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        });
    }
    match command {
        Command::Det { .. } => emit(out, &commands::det(&file)?),
        Command::Spectrum { count, .. } => emit(out, &commands::spectrum(&file, count)?),
        Command::Series { endpoint, terms, .. } => emit(out, &commands::series(&file, endpoint, terms)?),
        Command::Verify { tol, .. } => {
            let report = commands::verify(&file, tol)?;
            emit(out, &report)?;
            if report.agree {
                Ok(())
            } else {
                Err(CliError::Disagreement {
                    discrepancy: report.max_rel_discrepancy,
                    tol: report.tol,
                })
            }
        }
    }
}

/// Runs one command, writing JSON to `out` and messages to standard error.
/// Returns the process exit code: 0 on success, 1 for bad input, 2 for a
/// numerical failure.
pub fn run<I, T>(args: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("sldet: {e}");
            e.exit_code()
        }
    }
}
