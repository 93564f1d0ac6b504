//! Endpoint series `d² q = Σ q_m d^(m/N)` recovered from samples of an
//! expression, for custom potentials given without series.
//!
//! `g(u) = d² q(d)` with `u = d^(1/N)` is interpolated at Chebyshev nodes on
//! `[0, u_max]` and converted to monomials. Conversion is stable because the
//! Chebyshev coefficients of a function analytic well beyond the interval
//! decay faster than the basis change amplifies them.

use std::f64::consts::PI;

use sldet::ode::Endpoint;

use crate::error::CliError;
use crate::expr::Expr;

/// Distance from the endpoint covered by the fit; the Frobenius handoff
/// never exceeds it.
pub const FIT_REACH: f64 = 0.1;
/// Interpolation degree.
pub const FIT_DEGREE: usize = 24;
/// Largest residual off the nodes, relative to `max |g|`.
pub const FIT_RESIDUAL_TOL: f64 = 1e-9;
/// The Chebyshev tail below this fraction of the largest coefficient is
/// rounding noise; left in, the basis change would amplify it.
const CHEB_NOISE: f64 = 1e-13;
/// Monomial coefficients smaller than this (in the unit variable) are zero,
/// so regular endpoints come out with exactly vanishing low orders.
const NEGLIGIBLE: f64 = 1e-12;
/// Distance at which the endpoint limit of `d² q` is probed.
const LIMIT_PROBE: f64 = 1e-7;
const LIMIT_TOL: f64 = 1e-6;

pub fn endpoint_series(expr: &Expr, end: Endpoint, branching: usize) -> Result<Vec<f64>, CliError> {
    let n = branching as i32;
    let u_max = FIT_REACH.powf(1.0 / branching as f64);
    let g = |u: f64| -> Result<f64, CliError> {
        let d = u.powi(n);
        Ok(expr.eval(end.point_at(d))? * d * d)
    };

    let k = FIT_DEGREE + 1;
    let nodes: Vec<f64> = (0..k).map(|j| (PI * (j as f64 + 0.5) / k as f64).cos()).collect();
    let values: Vec<f64> = nodes.iter().map(|&t| g(0.5 * u_max * (t + 1.0))).collect::<Result<_, _>>()?;
    let cheb: Vec<f64> = (0..k)
        .map(|m| {
            let s: f64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * (PI * m as f64 * (j as f64 + 0.5) / k as f64).cos())
                .sum();
            s * if m == 0 { 1.0 } else { 2.0 } / k as f64
        })
        .collect();
    let largest = cheb.iter().fold(0f64, |m, a| m.max(a.abs()));
    let keep = cheb.iter().rposition(|a| a.abs() >= CHEB_NOISE * largest).map_or(1, |i| i + 1);
    let cheb = &cheb[..keep];

    // Σ a_m T_m(t), then t = 2v - 1 with v = u / u_max
    let in_t = chebyshev_to_monomial(cheb);
    let mut in_v = compose_affine(&in_t, -1.0, 2.0);
    let scale = in_v.iter().fold(1f64, |m, c| m.max(c.abs()));
    for c in in_v.iter_mut() {
        if c.abs() < NEGLIGIBLE * scale {
            *c = 0.0;
        }
    }
    let horner = |v: f64| in_v.iter().rev().fold(0.0, |acc, c| acc * v + c);

    let size = values.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
    for j in 0..k - 1 {
        // midpoints between neighbouring nodes
        let t = 0.5 * (nodes[j] + nodes[j + 1]);
        let v = 0.5 * (t + 1.0);
        let residual = (g(v * u_max)? - horner(v)).abs();
        if residual > FIT_RESIDUAL_TOL * size {
            return Err(CliError::Input(format!(
                "potential is not a power series in d^(1/{branching}) near x = {}: fit residual {residual:e}; \
                 supply series0/series1 or raise N",
                end.point_at(0.0)
            )));
        }
    }
    let probe = g(LIMIT_PROBE.powf(1.0 / branching as f64))?;
    if !probe.is_finite() || (probe - in_v[0]).abs() > LIMIT_TOL * in_v[0].abs().max(1.0) {
        return Err(CliError::Input(format!(
            "d² q has no finite limit at x = {} (fitted {}, probed {probe})",
            end.point_at(0.0),
            in_v[0]
        )));
    }

    let mut coeffs: Vec<f64> = in_v.iter().enumerate().map(|(m, c)| c / u_max.powi(m as i32)).collect();
    while coeffs.len() > 1 && *coeffs.last().expect("nonempty") == 0.0 {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Monomial coefficients of `Σ a_m T_m(t)`.
fn chebyshev_to_monomial(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    let mut prev = vec![0.0; n];
    let mut cur = vec![0.0; n];
    prev[0] = 1.0;
    if n > 1 {
        cur[1] = 1.0;
    }
    out[0] += a[0];
    for &am in &a[1..] {
        for (o, c) in out.iter_mut().zip(&cur) {
            *o += am * c;
        }
        // T_{m+1} = 2 t T_m - T_{m-1}
        let mut next = vec![0.0; n];
        for i in 0..n - 1 {
            next[i + 1] += 2.0 * cur[i];
        }
        for (x, p) in next.iter_mut().zip(&prev) {
            *x -= p;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// Coefficients in `v` of `p(c0 + c1 v)`.
fn compose_affine(p: &[f64], c0: f64, c1: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for &c in p.iter().rev() {
        // out ← out·(c0 + c1 v) + c
        let mut next = vec![0.0; p.len()];
        for (i, &o) in out.iter().enumerate() {
            next[i] += o * c0;
            if i + 1 < p.len() {
                next[i + 1] += o * c1;
            }
        }
        next[0] += c;
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn polynomial_is_recovered() {
        let e = parse_expr("1 + x^2").unwrap();
        let left = endpoint_series(&e, Endpoint::Left, 1).unwrap();
        for (m, want) in [(0, 0.0), (1, 0.0), (2, 1.0), (3, 0.0), (4, 1.0)] {
            assert!((left[m] - want).abs() < 1e-9, "q_{m} = {}", left[m]);
        }
        let right = endpoint_series(&e, Endpoint::Right, 1).unwrap();
        for (m, want) in [(0, 0.0), (2, 2.0), (3, -2.0), (4, 1.0)] {
            assert!((right[m] - want).abs() < 1e-9, "q_{m} = {}", right[m]);
        }
    }

    #[test]
    fn singular_leading_term() {
        let e = parse_expr("(0.49 - 0.25)/x^2 + cos(x)").unwrap();
        let s = endpoint_series(&e, Endpoint::Left, 1).unwrap();
        assert!((s[0] - 0.24).abs() < 1e-12);
        assert_eq!(s[1], 0.0);
        assert!((s[2] - 1.0).abs() < 1e-8, "{s:?}");
        // single coefficients are only as good as the fit allows; the sum is what the seed uses
        for d in [0.01f64, 0.05, 0.08] {
            let series: f64 = s.iter().enumerate().map(|(m, c)| c * d.powi(m as i32)).sum();
            assert!((series - (0.24 + d * d * d.cos())).abs() < 1e-12, "d = {d}: {:e}", series - (0.24 + d * d * d.cos()));
        }
    }

    #[test]
    fn half_powers_need_branching_two() {
        let e = parse_expr("sqrt(x)").unwrap();
        assert!(endpoint_series(&e, Endpoint::Left, 1).is_err());
        let s = endpoint_series(&e, Endpoint::Left, 2).unwrap();
        assert!((s[5] - 1.0).abs() < 1e-9);
        assert!(s.iter().enumerate().all(|(m, c)| m == 5 || c.abs() < 1e-8));
    }

    #[test]
    fn missing_limit_is_rejected() {
        let e = parse_expr("1/x^3").unwrap();
        assert!(endpoint_series(&e, Endpoint::Left, 1).is_err());
    }
}
