use std::f64::consts::{LN_2, PI};

use super::operator::OperatorSpec;
use super::wronskian::det_wronskian;
use crate::error::{Error, Result};
use crate::ode::{default_terms, BoundaryKind, Endpoint, EndpointExpansion, PotentialSpec};
use crate::series::PowerSeries;
use crate::specfun::{digamma, gamma, rgamma};

/// `√(2π) / (2^ν Γ(ν+1))`, the determinant of the Bessel model operator.
pub fn det_model_closed(nu: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::domain("det_model_closed", format!("ν = {nu} must be >= 0")));
    }
    Ok((2.0 * PI).sqrt() / (2f64.powf(nu) * gamma(nu + 1.0)?))
}

/// `2 π^(-1-α-β) / Γ(2+α+β)`; vanishes at `α = β = -1`.
pub fn det_jacobi_closed(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha >= -1.0 && beta >= -1.0) {
        return Err(Error::domain("det_jacobi_closed", format!("(α, β) = ({alpha}, {beta}) below -1")));
    }
    Ok(2.0 * PI.powf(-1.0 - alpha - beta) * rgamma(2.0 + alpha + beta))
}

/// Coefficients of `x² q` at `0` for the Jacobi potential, `terms` long.
///
/// With `u = πx`: `x² q = ((A cos²u + B - C cos u)/sinc²u + D u²)/4`.
fn jacobi_left_series(alpha: f64, beta: f64, terms: usize) -> Vec<f64> {
    let (a, b, c, d) = jacobi_constants(alpha, beta);
    let cos = PowerSeries::cos(terms);
    let inv_sinc = PowerSeries::sinc(terms).recip().expect("sinc(0) = 1");
    let inv_sinc2 = &inv_sinc * &inv_sinc;
    let numerator = &(&(&cos * &cos).scale(a) + &PowerSeries::constant(b, terms)) - &cos.scale(c);
    let u2 = PowerSeries::variable(terms).shift_up(1).scale(d);
    let in_u = (&(&numerator * &inv_sinc2) + &u2).scale(0.25);
    in_u.rescale_variable(PI).into_coeffs()
}

fn jacobi_constants(alpha: f64, beta: f64) -> (f64, f64, f64, f64) {
    let s = alpha + beta + 2.0;
    (s * s - 1.0, (alpha - beta).powi(2), 2.0 * (alpha - beta) * s, 2.0 * (alpha + beta + 1.0))
}

/// The Jacobi operator: Friedrichs conditions at both ends, `ν0 = 1+β`,
/// `ν1 = 1+α`, spectrum `π² n (n+α+β+1)`.
pub fn jacobi_potential(alpha: f64, beta: f64) -> Result<OperatorSpec> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::domain("jacobi_potential", format!("(α, β) = ({alpha}, {beta}) needs both > -1")));
    }
    let terms = default_terms(1);
    let left = EndpointExpansion::new(Endpoint::Left, 1, jacobi_left_series(alpha, beta, terms))?;
    // q_{α,β}(1 - t) = q_{β,α}(t)
    let right = EndpointExpansion::new(Endpoint::Right, 1, jacobi_left_series(beta, alpha, terms))?;
    let (a, b, c, d) = jacobi_constants(alpha, beta);
    let interior = move |x: f64| {
        let (s, co) = (PI * x).sin_cos();
        let s2 = s * s;
        0.25 * PI * PI * ((a * co * co + b - c * co) / s2 + d)
    };
    let p = PotentialSpec::new(left, right, interior)?;
    OperatorSpec::new(p, BoundaryKind::Friedrichs, BoundaryKind::Friedrichs)
}

/// Central difference of `log det` of the Bessel model in `ν` (through the
/// Wronskian route) next to its closed derivative `-log 2 - ψ(ν+1)`.
pub fn det_derivative_model_check(nu: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0 && nu - h >= 0.0) {
        return Err(Error::domain("det_derivative_model_check", format!("need 0 < h <= ν, got ν = {nu}, h = {h}")));
    }
    let log_det = |n: f64| -> Result<f64> {
        let r = det_wronskian(&OperatorSpec::bessel_model(n)?)?;
        r.log_det
            .ok_or_else(|| Error::InvalidOperator("model determinant vanished".into()))
    };
    let fd = (log_det(nu + h)? - log_det(nu - h)?) / (2.0 * h);
    Ok((fd, -LN_2 - digamma(nu + 1.0)?))
}
