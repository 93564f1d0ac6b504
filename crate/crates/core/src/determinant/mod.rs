//! ζ-regularized determinants: the Wronskian formula and the closed forms
//! it is checked against.

mod closed;
mod factorized;
mod operator;
mod wronskian;

pub use closed::{det_derivative_model_check, det_jacobi_closed, det_model_closed, jacobi_potential};
pub use factorized::{det_factorized_closed, FactorizedSpec};
pub use operator::OperatorSpec;
pub use wronskian::{det_shifted, det_wronskian, DetResult, Diagnostics, Route, SWEEP, ZERO_WRONSKIAN_TOL};
