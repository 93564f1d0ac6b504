use std::path::PathBuf;

use thiserror::Error;

use crate::expr::{EvalError, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    SpecFile { line: usize, message: String },

    #[error("potential_expr: {0}")]
    Parse(#[from] ParseError),

    #[error("potential_expr: {0}")]
    Eval(#[from] EvalError),

    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Library(#[from] sldet::Error),

    #[error("routes disagree: max relative discrepancy {discrepancy:e} exceeds {tol:e}")]
    Disagreement { discrepancy: f64, tol: f64 },
}

impl CliError {
    /// 1 for bad input, 2 for a numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numerical() => 2,
            CliError::Disagreement { .. } => 2,
            _ => 1,
        }
    }
}
