//! Special functions used throughout the crate.

mod bessel;
mod gamma;
mod zeta;

pub use bessel::{
    bessel_i, bessel_i_series, bessel_i_small_arg_constant, bessel_ik, bessel_ik_asymptotic,
    bessel_ik_scaled, bessel_j, bessel_j_zero, bessel_j_zeros, bessel_k, BesselIK, OVERFLOW_CAP,
};
pub use gamma::{digamma, gamma, ln_gamma, rgamma};
pub use zeta::{
    hurwitz_tail, riemann_zeta_at_zero, zeta_lambda, zeta_lambda_deriv0, ZetaLambdaResult,
    DERIVATIVE_STEP, DERIVATIVE_TOL,
};
