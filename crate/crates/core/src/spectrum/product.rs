use std::f64::consts::PI;

use super::eigen::eigenvalues;
use crate::determinant::{det_shifted, det_wronskian, OperatorSpec};
use crate::error::{Error, Result};
use crate::specfun::hurwitz_tail;

/// `(partial, target)` where `partial = Π_{n≤K} (1 + z/λ_n)` times the
/// Weyl-law tail `exp(z Σ_{n>K} 1/(π²n²))`, and `target` is
/// `det(L + z) / det L` from the Wronskian route.
pub fn product_expansion_check(op: &OperatorSpec, z: f64, count: usize) -> Result<(f64, f64)> {
    let spectrum = eigenvalues(op, count)?;
    let lowest = spectrum.eigenvalues[0];
    if !(lowest > 0.0) {
        return Err(Error::Unsupported(format!("product check needs a positive operator, λ₁ = {lowest}")));
    }
    if !(z > -lowest) {
        return Err(Error::domain("product_expansion_check", format!("z = {z} must exceed -λ₁ = {}", -lowest)));
    }
    let log_partial: f64 = spectrum.eigenvalues.iter().map(|l| (z / l).ln_1p()).sum();
    let weyl_tail = z * hurwitz_tail(2.0, count as u64 + 1)? / (PI * PI);
    let partial = (log_partial + weyl_tail).exp();
    let base = det_wronskian(op)?;
    let shifted = det_shifted(op, z)?;
    if base.is_zero() {
        return Err(Error::Unsupported("operator has a kernel".into()));
    }
    Ok((partial, shifted.det / base.det))
}
