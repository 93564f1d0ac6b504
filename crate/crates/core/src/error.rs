use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("{function}: argument out of domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: argument {x} exceeds the overflow cap {cap}")]
    Overflow { function: &'static str, x: f64, cap: f64 },

    #[error("numerical iteration did not converge (spread {spread:e} > {tol:e})")]
    NonConvergence { spread: f64, tol: f64 },

    #[error("quadrature on [{a}, {b}] did not reach tolerance (error estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    #[error("asymptotic expansion does not match the integrand: {0}")]
    ExpansionMismatch(String),

    #[error("Frobenius recursion is resonant at m = {m}")]
    Resonance { m: usize },

    #[error("integrator step size underflow at x = {x}")]
    StepUnderflow { x: f64 },

    #[error("could not bracket eigenvalue #{index} below {limit}")]
    BracketExhausted { index: usize, limit: f64 },

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    /// `true` for failures of a numerical procedure (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::Quadrature { .. }
                | Error::StepUnderflow { .. }
                | Error::BracketExhausted { .. }
                | Error::Overflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
