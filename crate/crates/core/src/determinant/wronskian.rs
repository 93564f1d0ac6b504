use std::f64::consts::PI;
use std::fmt;

use super::operator::OperatorSpec;
use crate::error::Result;
use crate::specfun::gamma;
use crate::spectrum::{count_below, EIGEN_TOL};

/// Points of the drift sweep; the middle one is where `W` is reported.
pub const SWEEP: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];
/// `|W|` below this fraction of the largest `|ψφ'| + |ψ'φ|` on the sweep
/// counts as a zero Wronskian.
pub const ZERO_WRONSKIAN_TOL: f64 = 1e-9;

/// How a determinant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Wronskian,
    ShiftedWronskian,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Wronskian => "wronskian",
            Route::ShiftedWronskian => "shifted_wronskian",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// Largest relative deviation of `W` over the sweep from its value at `1/2`.
    pub wronskian_drift: f64,
    /// Largest relative size of the truncated Frobenius terms at either handoff.
    pub series_tail: f64,
    pub route: Route,
    /// Eigenvalues of the (shifted) operator below zero, from the oscillation count.
    pub negative_eigenvalues: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetResult {
    pub nu0: f64,
    pub nu1: f64,
    pub wronskian: f64,
    /// `log |det|`; `None` when the determinant vanishes.
    pub log_det: Option<f64>,
    pub det: f64,
    pub diagnostics: Diagnostics,
}

impl DetResult {
    pub fn is_zero(&self) -> bool {
        self.log_det.is_none()
    }
}

/// `π W(ψ, φ) / (2^(ν0+ν1) Γ(ν0+1) Γ(ν1+1))` with `W` taken at `x = 1/2`.
pub fn det_wronskian(op: &OperatorSpec) -> Result<DetResult> {
    evaluate(op, 0.0, Route::Wronskian)
}

/// The determinant of `op + z`.
pub fn det_shifted(op: &OperatorSpec, z: f64) -> Result<DetResult> {
    evaluate(op, z, Route::ShiftedWronskian)
}

fn evaluate(op: &OperatorSpec, extra: f64, route: Route) -> Result<DetResult> {
    let (psi, phi) = op.solutions(extra)?;
    let mut values = [0.0; 5];
    let mut scale = 0.0f64;
    for (w, &x) in values.iter_mut().zip(&SWEEP) {
        let [p, pp] = psi.eval(x)?;
        let [f, fp] = phi.eval(x)?;
        *w = p * fp - pp * f;
        scale = scale.max((p * fp).abs() + (pp * f).abs());
    }
    let w = values[2];
    let zero = w.abs() < ZERO_WRONSKIAN_TOL * scale;
    let reference = if zero { scale } else { w.abs() };
    let drift = values.iter().map(|v| (v - w).abs() / reference).fold(0.0, f64::max);

    let (nu0, nu1) = (op.nu0(), op.nu1());
    let det = if zero {
        0.0
    } else {
        PI * w / (2f64.powf(nu0 + nu1) * gamma(nu0 + 1.0)? * gamma(nu1 + 1.0)?)
    };
    let shifted = op.clone().with_shift(op.shift() + extra)?;
    // a zero mode sits at 0 up to integration noise and is not negative
    let negative = count_below(&shifted, -EIGEN_TOL)?;
    if negative > 0 {
        log::info!("operator has {negative} negative eigenvalue(s); reporting the real formula value");
    }
    Ok(DetResult {
        nu0,
        nu1,
        wronskian: w,
        log_det: (!zero).then(|| det.abs().ln()),
        det,
        diagnostics: Diagnostics {
            wronskian_drift: drift,
            series_tail: psi.seed().tail().max(phi.seed().tail()),
            route,
            negative_eigenvalues: negative,
        },
    })
}
