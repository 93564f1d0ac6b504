// Constants are quoted to full published precision, and `!(a < b)` is how
// NaN arguments are rejected along with out-of-range ones.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod determinant;
pub mod ode;
pub mod quad;
pub mod regularize;
pub mod series;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
