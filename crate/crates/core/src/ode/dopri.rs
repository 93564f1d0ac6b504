//! Dormand–Prince 5(4) with the standard PI-free step controller.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19_372.0 / 6561.0, -25_360.0 / 2187.0, 64_448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46_732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18_656.0,
];
const B: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
const E: [f64; 7] = [
    71.0 / 57_600.0,
    0.0,
    -71.0 / 16_695.0,
    71.0 / 1920.0,
    -17_253.0 / 339_200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Adaptive integrator settings.
///
/// The per-component absolute scale is `rtol` times the largest magnitude
/// that component has reached so far, so solutions that pass near zero
/// are still controlled relative to their own size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 {
            rtol: 1e-11,
            max_steps: 200_000,
        }
    }
}

fn axpy<const D: usize>(y: &[f64; D], h: f64, terms: &[(&[f64; D], f64)]) -> [f64; D] {
    let mut out = *y;
    for (k, a) in terms {
        for i in 0..D {
            out[i] += h * a * k[i];
        }
    }
    out
}

impl Dopri5 {
    /// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction),
    /// calling `observe` after every accepted step.
    pub fn solve<const D: usize, F, O>(&self, f: F, x0: f64, y0: [f64; D], x1: f64, mut observe: O) -> Result<[f64; D]>
    where
        F: Fn(f64, &[f64; D]) -> [f64; D],
        O: FnMut(f64, &[f64; D]),
    {
        let span = x1 - x0;
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = span.signum();
        let mut x = x0;
        let mut y = y0;
        let mut scale = [0.0f64; D];
        for i in 0..D {
            scale[i] = y[i].abs();
        }
        let mut k1 = f(x, &y);
        let mut h = dir * (span.abs() * 0.01).min(0.01);
        for _ in 0..self.max_steps {
            if (x + h - x1) * dir > 0.0 {
                h = x1 - x;
            }
            let k2 = f(x + C[1] * h, &axpy(&y, h, &[(&k1, A2[0])]));
            let k3 = f(x + C[2] * h, &axpy(&y, h, &[(&k1, A3[0]), (&k2, A3[1])]));
            let k4 = f(x + C[3] * h, &axpy(&y, h, &[(&k1, A4[0]), (&k2, A4[1]), (&k3, A4[2])]));
            let k5 = f(
                x + C[4] * h,
                &axpy(&y, h, &[(&k1, A5[0]), (&k2, A5[1]), (&k3, A5[2]), (&k4, A5[3])]),
            );
            let k6 = f(
                x + C[5] * h,
                &axpy(&y, h, &[(&k1, A6[0]), (&k2, A6[1]), (&k3, A6[2]), (&k4, A6[3]), (&k5, A6[4])]),
            );
            let y_new = axpy(&y, h, &[(&k1, B[0]), (&k3, B[2]), (&k4, B[3]), (&k5, B[4]), (&k6, B[5])]);
            let k7 = f(x + h, &y_new);

            let mut err = 0.0;
            for i in 0..D {
                let e = h
                    * (E[0] * k1[i] + E[2] * k3[i] + E[3] * k4[i] + E[4] * k5[i] + E[5] * k6[i] + E[6] * k7[i]);
                let sc = self.rtol * scale[i].max(y[i].abs()).max(y_new[i].abs()).max(f64::MIN_POSITIVE);
                err += (e / sc).powi(2);
            }
            let err = (err / D as f64).sqrt();
            if !err.is_finite() {
                h *= 0.2;
                if h.abs() < 1e-14 * x.abs().max(1.0) {
                    return Err(Error::StepUnderflow { x });
                }
                continue;
            }
            if err <= 1.0 {
                x += h;
                y = y_new;
                k1 = k7;
                for i in 0..D {
                    scale[i] = scale[i].max(y[i].abs());
                }
                observe(x, &y);
                if (x - x1) * dir >= 0.0 {
                    return Ok(y);
                }
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= if err <= 1.0 { factor } else { factor.min(1.0) };
            if h.abs() < 1e-14 * x.abs().max(1.0) {
                return Err(Error::StepUnderflow { x });
            }
        }
        Err(Error::StepUnderflow { x })
    }
}
