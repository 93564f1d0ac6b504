//! Independent routes to the determinant: eigenvalues, closed-form zeta
//! functions, the resolvent trace of the model operator, and products
//! over the spectrum.

mod eigen;
mod oracle;
mod product;
mod prufer;
mod trace;

pub use eigen::{eigenvalue, eigenvalues, Spectrum, EIGEN_TOL};
pub use oracle::{det_via_zeta_oracle, ZetaFamily};
pub use product::product_expansion_check;
pub use prufer::{count_below, sign_changes};
pub use trace::{det_via_trace_model, trace_resolvent_model, TRACE_CUTOFF};
