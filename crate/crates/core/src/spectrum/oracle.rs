use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::specfun::{riemann_zeta_at_zero, zeta_lambda_deriv0};

/// Operators whose spectrum is known in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaFamily {
    /// `{n²π²}`.
    DirichletLaplacian,
    /// `{(n - 1/2)²π²}`.
    DirichletNeumann,
    /// `{π² n (n+α+β+1)}`.
    Jacobi { alpha: f64, beta: f64 },
}

/// `exp(-ζ'(0))` computed from the spectrum alone.
pub fn det_via_zeta_oracle(family: ZetaFamily) -> Result<f64> {
    let (zeta_r0, zeta_r0_prime) = riemann_zeta_at_zero();
    let log_det = match family {
        // ζ(s) = π^{-2s} ζ_R(2s)
        ZetaFamily::DirichletLaplacian => 2.0 * PI.ln() * zeta_r0 - 2.0 * zeta_r0_prime,
        // ζ(s) = π^{-2s} (2^{2s} - 1) ζ_R(2s): the prefactor vanishes at 0
        ZetaFamily::DirichletNeumann => -2.0 * LN_2 * zeta_r0,
        // ζ(s) = π^{-2s} ζ_λ(s) with λ = 1+α+β
        ZetaFamily::Jacobi { alpha, beta } => {
            let lambda = 1.0 + alpha + beta;
            if !(alpha > -1.0 && beta > -1.0) {
                return Err(Error::Unsupported(format!(
                    "Jacobi ({alpha}, {beta}) has no positive spectrum of the form n(n+λ)"
                )));
            }
            let z = zeta_lambda_deriv0(lambda)?;
            2.0 * PI.ln() * z.value_at_0 - z.derivative_at_0
        }
    };
    Ok(log_det.exp())
}
