use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::bessel_ik_scaled;

/// Upper limit of the explicit `z` integral in [`det_via_trace_model`].
pub const TRACE_CUTOFF: f64 = 60.0;
/// Points of the tail fit, spread over the last decade below the cutoff.
const TAIL_FIT_POINTS: usize = 8;
/// Remainders smaller than this at the cutoff are treated as an exact zero tail.
const NEGLIGIBLE_TAIL: f64 = 1e-12;

/// `Tr (L_ν + z²)⁻¹ = ∫₀¹ x I_ν(xz) (K_ν(xz) - K_ν(z)/I_ν(z) I_ν(xz)) dx`.
///
/// The integrand is assembled from exponentially scaled Bessel functions
/// so nothing overflows for large `z`.
pub fn trace_resolvent_model(nu: f64, z: f64) -> Result<f64> {
    if !(nu >= 0.0) {
        return Err(Error::domain("trace_resolvent_model", format!("ν = {nu} must be >= 0")));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::domain("trace_resolvent_model", format!("z = {z} must be positive")));
    }
    let at_one = bessel_ik_scaled(nu, z)?;
    let ratio = at_one.k / at_one.i;
    let kernel = |x: f64| {
        let b = match bessel_ik_scaled(nu, x * z) {
            Ok(b) => b,
            Err(_) => return f64::NAN,
        };
        x * b.i * (b.k - ratio * b.i * (-2.0 * z * (1.0 - x)).exp())
    };
    let opts = QuadOptions::default().with_abs_tol(1e-14).with_rel_tol(1e-11);
    // most of the mass sits within 1/z of the diagonal's small-x end
    let split = (4.0 / z).min(0.5);
    let a = integrate(kernel, 0.0, split, opts)?;
    let b = integrate(kernel, split, 1.0, opts)?;
    Ok(a.value + b.value)
}

/// `det L_ν = exp T` with
/// `T = -2∫₀¹ (z Tr - 1/2) dz - 2∫₁^∞ (z Tr - 1/2 - c0/z) dz`,
/// `c0 = -(ν + 1/2)/2`. The second integral is computed up to
/// [`TRACE_CUTOFF`]; beyond it the remainder is modelled as `c z^(-1-η)`
/// with `c`, `η` fitted over the last decade.
pub fn det_via_trace_model(nu: f64) -> Result<f64> {
    let c0 = -0.5 * (nu + 0.5);
    let a = |z: f64| -> f64 {
        match trace_resolvent_model(nu, z) {
            Ok(t) => z * t - 0.5,
            Err(_) => f64::NAN,
        }
    };
    let opts = QuadOptions::default().with_abs_tol(1e-10);
    let near = integrate(a, 0.0, 1.0, opts)?.value;
    let remainder = |z: f64| a(z) - c0 / z;
    let far = integrate(remainder, 1.0, TRACE_CUTOFF, opts)?.value;
    let tail = fitted_tail(remainder)?;
    Ok((-2.0 * (near + far + tail)).exp())
}

/// `∫_Z^∞ r` for the remainder `r ≈ c z^(-1-η)` fitted on `[Z/10, Z]`.
fn fitted_tail<R: Fn(f64) -> f64>(r: R) -> Result<f64> {
    let z_hi = TRACE_CUTOFF;
    let z_lo = 0.1 * TRACE_CUTOFF;
    let at_cutoff = r(z_hi);
    if at_cutoff.abs() < NEGLIGIBLE_TAIL {
        return Ok(0.0);
    }
    let samples: Vec<(f64, f64)> = (0..TAIL_FIT_POINTS)
        .map(|i| {
            let z = z_lo * (z_hi / z_lo).powf(i as f64 / (TAIL_FIT_POINTS - 1) as f64);
            (z, r(z))
        })
        .collect();
    let sign = at_cutoff.signum();
    if samples.iter().any(|&(_, v)| v.signum() != sign || !v.is_finite()) {
        return Err(Error::NonConvergence {
            spread: at_cutoff.abs(),
            tol: NEGLIGIBLE_TAIL,
        });
    }
    // least squares line through (log z, log |r|)
    let n = samples.len() as f64;
    let (sx, sy, sxx, sxy) = samples.iter().fold((0.0, 0.0, 0.0, 0.0), |(sx, sy, sxx, sxy), &(z, v)| {
        let (lx, ly) = (z.ln(), v.abs().ln());
        (sx + lx, sy + ly, sxx + lx * lx, sxy + lx * ly)
    });
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let eta = -1.0 - slope;
    if !(eta > 0.0) {
        return Err(Error::NonConvergence {
            spread: eta,
            tol: 0.0,
        });
    }
    let c = sign * intercept.exp();
    Ok(c * z_hi.powf(-eta) / eta)
}
