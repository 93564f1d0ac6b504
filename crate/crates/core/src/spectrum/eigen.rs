use std::f64::consts::PI;

use rayon::prelude::*;

use super::prufer::{phase_mismatch, sign_changes};
use crate::determinant::OperatorSpec;
use crate::error::{Error, Result};

/// Relative tolerance on each eigenvalue, `|Δμ| <= EIGEN_TOL (1 + |μ|)`.
pub const EIGEN_TOL: f64 = 1e-9;
/// Bracket widenings allowed before giving up.
const BRACKET_DOUBLINGS: usize = 60;
const MAX_REFINE: usize = 200;

/// The lowest eigenvalues of an operator with their oscillation counts.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub operator: OperatorSpec,
    /// Interior sign changes of the eigenfunction, one per eigenvalue.
    pub count_certificate: Vec<usize>,
}

impl Spectrum {
    /// Sturm oscillation: the `k`-th eigenfunction has `k - 1` interior zeros.
    pub fn certificate_holds(&self) -> bool {
        self.count_certificate.iter().enumerate().all(|(i, &c)| c == i)
    }
}

/// The `count` lowest eigenvalues of `op` (shift included).
pub fn eigenvalues(op: &OperatorSpec, count: usize) -> Result<Spectrum> {
    if count == 0 {
        return Err(Error::domain("eigenvalues", "count must be at least 1"));
    }
    let found: Vec<(f64, usize)> = (1..=count)
        .into_par_iter()
        .map(|k| {
            let mu = eigenvalue(op, k)?;
            Ok((mu, sign_changes(op, mu)?))
        })
        .collect::<Result<_>>()?;
    let (eigenvalues, count_certificate) = found.into_iter().unzip();
    Ok(Spectrum {
        eigenvalues,
        operator: op.clone(),
        count_certificate,
    })
}

/// The `k`-th eigenvalue (1-based) as the root of
/// `g(μ) = θ_L(1/2) - θ_R(1/2) - (k-1)π`, which increases with `μ`.
pub fn eigenvalue(op: &OperatorSpec, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("eigenvalue", "index is 1-based"));
    }
    let target = (k - 1) as f64 * PI;
    let g = |mu: f64| -> Result<f64> { Ok(phase_mismatch(op, mu)? - target) };
    let kf = k as f64;
    // Weyl guesses π²(k ± 1)², widened until they bracket
    let mut lo = PI * PI * (kf - 1.0).powi(2) + op.shift();
    let mut hi = PI * PI * (kf + 1.0).powi(2) + op.shift();
    let mut g_lo = g(lo)?;
    let mut width = PI * PI * kf.max(1.0);
    let mut widenings = 0;
    while g_lo >= 0.0 {
        lo -= width;
        width *= 2.0;
        g_lo = g(lo)?;
        widenings += 1;
        if widenings > BRACKET_DOUBLINGS {
            return Err(Error::BracketExhausted { index: k, limit: lo });
        }
    }
    let mut g_hi = g(hi)?;
    let mut width = PI * PI * kf.max(1.0);
    while g_hi < 0.0 {
        hi += width;
        width *= 2.0;
        g_hi = g(hi)?;
        widenings += 1;
        if widenings > BRACKET_DOUBLINGS {
            return Err(Error::BracketExhausted { index: k, limit: hi });
        }
    }

    // Illinois regula falsi on the monotone mismatch
    let mut side = 0i8;
    for _ in 0..MAX_REFINE {
        let mu = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        let mu = if mu > lo && mu < hi { mu } else { 0.5 * (lo + hi) };
        let gm = g(mu)?;
        // below this the sign of g is integration noise
        if gm.abs() <= 1e-12 * (1.0 + target) {
            return Ok(mu);
        }
        if gm < 0.0 {
            lo = mu;
            g_lo = gm;
            if side == -1 {
                g_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = mu;
            g_hi = gm;
            if side == 1 {
                g_lo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= EIGEN_TOL * (1.0 + mu.abs()) {
            return Ok(mu);
        }
    }
    Err(Error::NonConvergence {
        spread: hi - lo,
        tol: EIGEN_TOL,
    })
}
