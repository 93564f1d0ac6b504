//! Prüfer angles `θ = atan2(s y, y')` of the normalized solutions.
//!
//! With `s` fixed, `θ' = s cos²θ + ((λ - q - shift)/s) sin²θ`, which equals
//! `s > 0` whenever `y = 0`. So `θ` crosses multiples of `π` only upwards
//! and counts zeros; with `s = √max(1, λ)` it is nearly linear in `x`.

use std::f64::consts::PI;

use crate::determinant::OperatorSpec;
use crate::error::Result;
use crate::ode::{frobenius_seed, Dopri5, Endpoint};

fn scale(lambda_eff: f64) -> f64 {
    lambda_eff.max(1.0).sqrt()
}

/// `θ` of the solution normalized at `end` for `L + shift - λ`, carried
/// from the series handoff to `x`. The left angle starts in `[0, π)`,
/// the right one in `(0, π]`.
pub(crate) fn angle(op: &OperatorSpec, lambda: f64, end: Endpoint, x: f64) -> Result<f64> {
    let lambda_eff = lambda - op.shift();
    let s = scale(lambda_eff);
    let p = op.potential();
    let seed = frobenius_seed(p, end, op.boundary(end), -lambda_eff, None)?;
    let d0 = seed.handoff();
    let [f, fp] = seed.eval(d0);
    let theta0 = (s * f).atan2(fp);
    let theta0 = match end {
        Endpoint::Left if theta0 < 0.0 => theta0 + PI,
        Endpoint::Right if theta0 <= 0.0 => theta0 + PI,
        _ => theta0,
    };
    let rhs = |x: f64, th: &[f64; 1]| {
        let (sn, cs) = th[0].sin_cos();
        [s * cs * cs + (lambda_eff - p.q(x)) / s * sn * sn]
    };
    let [theta] = Dopri5::default().solve(rhs, end.point_at(d0), [theta0], x, |_, _| {})?;
    Ok(theta)
}

/// `θ_L(1/2) - θ_R(1/2)`: increasing in `λ`, equal to `(k-1)π` at the
/// `k`-th eigenvalue.
pub(crate) fn phase_mismatch(op: &OperatorSpec, lambda: f64) -> Result<f64> {
    Ok(angle(op, lambda, Endpoint::Left, 0.5)? - angle(op, lambda, Endpoint::Right, 0.5)?)
}

/// Number of eigenvalues of `op` (shift included) that are `<= λ`.
pub fn count_below(op: &OperatorSpec, lambda: f64) -> Result<usize> {
    let d = phase_mismatch(op, lambda)?;
    Ok(((d / PI).floor() + 1.0).max(0.0) as usize)
}

/// Interior zeros of the solution normalized at `0` for `L + shift - λ`,
/// counted up to the right handoff point.
pub fn sign_changes(op: &OperatorSpec, lambda: f64) -> Result<usize> {
    let right = frobenius_seed(op.potential(), Endpoint::Right, op.bc_right(), op.shift() - lambda, None)?;
    let theta = angle(op, lambda, Endpoint::Left, right.handoff_point())?;
    Ok((theta / PI).floor().max(0.0) as usize)
}
