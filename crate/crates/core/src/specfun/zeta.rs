//! Riemann constants at the origin and the two-parameter zeta function
//! `ζ_λ(s) = Σ_{n≥1} n^{-s} (n+λ)^{-s}` with its continuation.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// `B_{2j} / (2j)!` for `j = 1..=4`.
const BERNOULLI_OVER_FACTORIAL: [f64; 4] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
];

const DIRECT_SUM_EXPONENT: f64 = 12.0;
const TAIL_TOL: f64 = 1e-13;
const POLE_GUARD: f64 = 1e-10;

/// `(ζ_R(0), ζ_R'(0)) = (-1/2, -log(2π)/2)`.
pub fn riemann_zeta_at_zero() -> (f64, f64) {
    (-0.5, -0.5 * (2.0 * std::f64::consts::PI).ln())
}

/// The tail `Σ_{n≥n0} n^{-a}` split as `regular + pole / (a - 1)`.
///
/// For `a > 12` the sum is done directly (`pole` is zero); otherwise
/// Euler–Maclaurin with cut `N = max(n0, 20 + 3⌈|a|⌉)` and four
/// Bernoulli corrections, and the `N^{1-a}/(a-1)` term is returned
/// separately so callers can cancel it against a zero of their own.
fn hurwitz_tail_parts(a: f64, n0: u64) -> (f64, f64) {
    debug_assert!(n0 >= 1);
    if a > DIRECT_SUM_EXPONENT {
        let mut sum = 0.0;
        let mut n = n0;
        loop {
            let t = (n as f64).powf(-a);
            sum += t;
            if t <= sum * 1e-18 {
                break;
            }
            n += 1;
        }
        return (sum, 0.0);
    }
    let cut = n0.max(20 + 3 * a.abs().ceil() as u64);
    let nf = cut as f64;
    let mut regular: f64 = (n0..cut).map(|n| (n as f64).powf(-a)).sum();
    regular += 0.5 * nf.powf(-a);
    // rising factorial a (a+1) ... (a+2j-2)
    let mut rising = a;
    let mut power = nf.powf(-a - 1.0);
    for (j, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let m = (2 * j) as f64;
            rising *= (a + m - 1.0) * (a + m);
            power /= nf * nf;
        }
        regular += b * rising * power;
    }
    (regular, nf.powf(1.0 - a))
}

/// `Σ_{n≥n0} n^{-a}`, continued in `a`; pole at `a = 1`.
pub fn hurwitz_tail(a: f64, n0: u64) -> Result<f64> {
    if n0 == 0 {
        return Err(Error::domain("hurwitz_tail", "summation must start at n0 >= 1"));
    }
    if (a - 1.0).abs() < POLE_GUARD {
        return Err(Error::Pole {
            function: "hurwitz_tail",
            at: a,
        });
    }
    let (regular, pole) = hurwitz_tail_parts(a, n0);
    Ok(regular + pole / (a - 1.0))
}

/// Continuation of `ζ_λ(s) = Σ_{n≥1} n^{-s}(n+λ)^{-s}` for `λ > -1`.
///
/// The first few terms are summed directly; for the rest `(n+λ)^{-s}` is
/// expanded binomially in `λ/n`, giving `Σ_k C(-s,k) λ^k Σ_{n≥n0} n^{-2s-k}`.
/// The `k = 1` term has a removable singularity at `s = 0` which is
/// cancelled analytically. Poles sit at `s = (1-k)/2` wherever `C(-s,k)λ^k`
/// does not vanish there.
pub fn zeta_lambda(s: f64, lambda: f64) -> Result<f64> {
    if !(lambda > -1.0) {
        return Err(Error::domain("zeta_lambda", format!("λ = {lambda} must exceed -1")));
    }
    if !s.is_finite() {
        return Err(Error::domain("zeta_lambda", format!("s = {s} must be finite")));
    }
    // n0 > λ + 1 and n0 > 2|λ|, so the binomial series converges at least
    // geometrically with ratio 1/2
    let n0 = ((lambda + 1.0).floor().max(0.0) as u64 + 1).max((2.0 * lambda.abs()).floor() as u64 + 1);
    let mut sum: f64 = (1..n0)
        .map(|n| {
            let nf = n as f64;
            (nf * (nf + lambda)).powf(-s)
        })
        .sum();

    let mut coef = 1.0; // C(-s, k)
    let mut lam_k = 1.0; // λ^k
    let mut k = 0u32;
    loop {
        let a = 2.0 * s + k as f64;
        let weight = coef * lam_k;
        let term = if k == 1 {
            // -sλ·H(2s+1): the N^{-2s}/(2s) part is cancelled by the factor s
            let (regular, pole) = hurwitz_tail_parts(a, n0);
            -s * lambda * regular - 0.5 * lambda * pole
        } else if weight == 0.0 {
            0.0
        } else {
            if (a - 1.0).abs() < POLE_GUARD {
                return Err(Error::Pole {
                    function: "zeta_lambda",
                    at: s,
                });
            }
            let (regular, pole) = hurwitz_tail_parts(a, n0);
            weight * (regular + pole / (a - 1.0))
        };
        sum += term;
        coef *= (-s - k as f64) / (k as f64 + 1.0);
        lam_k *= lambda;
        k += 1;
        if k > 2 && (coef == 0.0 || lam_k == 0.0 || term.abs() < TAIL_TOL * sum.abs().max(1.0)) {
            break;
        }
        if k > 2000 {
            return Err(Error::NonConvergence {
                spread: term.abs(),
                tol: TAIL_TOL,
            });
        }
    }
    Ok(sum)
}

/// Values of `ζ_λ` and its derivative at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaLambdaResult {
    pub lambda: f64,
    /// `-(1+λ)/2`.
    pub value_at_0: f64,
    /// `-log(2π) + log Γ(λ+1)`.
    pub derivative_at_0: f64,
    /// `ζ_λ(0)` from the continuation.
    pub continued_value_at_0: f64,
    /// Central difference of the continuation at `s = 0`.
    pub finite_difference_derivative: f64,
}

/// Step used for the numerical derivative of `ζ_λ` at the origin.
pub const DERIVATIVE_STEP: f64 = 1e-4;
/// Agreement required between the closed and numerical derivatives.
pub const DERIVATIVE_TOL: f64 = 1e-6;

/// `ζ_λ(0)` and `ζ_λ'(0)` in closed form, cross-checked against the
/// continuation. Fails if the two derivatives disagree beyond
/// [`DERIVATIVE_TOL`].
pub fn zeta_lambda_deriv0(lambda: f64) -> Result<ZetaLambdaResult> {
    if !(lambda > -1.0) {
        return Err(Error::domain("zeta_lambda_deriv0", format!("λ = {lambda} must exceed -1")));
    }
    let h = DERIVATIVE_STEP;
    let fd = (zeta_lambda(h, lambda)? - zeta_lambda(-h, lambda)?) / (2.0 * h);
    let closed = -(2.0 * std::f64::consts::PI).ln() + ln_gamma(lambda + 1.0)?;
    if (fd - closed).abs() > DERIVATIVE_TOL {
        return Err(Error::NonConvergence {
            spread: (fd - closed).abs(),
            tol: DERIVATIVE_TOL,
        });
    }
    Ok(ZetaLambdaResult {
        lambda,
        value_at_0: -0.5 * (1.0 + lambda),
        derivative_at_0: closed,
        continued_value_at_0: zeta_lambda(0.0, lambda)?,
        finite_difference_derivative: fd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn riemann_constants() {
        let (v, d) = riemann_zeta_at_zero();
        assert_eq!(v, -0.5);
        assert_eq!(2.0 * v, -1.0);
        assert_relative_eq!(d, -0.918_938_533_204_672_7, max_relative = 1e-15);
    }

    #[test]
    fn hurwitz_tail_against_known_values() {
        assert_relative_eq!(hurwitz_tail(2.0, 1).unwrap(), PI * PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(hurwitz_tail(4.0, 1).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-14);
        assert_relative_eq!(hurwitz_tail(2.0, 3).unwrap(), PI * PI / 6.0 - 1.25, max_relative = 1e-14);
        assert_relative_eq!(hurwitz_tail(0.0, 1).unwrap(), -0.5, epsilon = 1e-14);
        // cancellation between ~N^2 sized pieces costs a few digits
        assert_relative_eq!(hurwitz_tail(-1.0, 1).unwrap(), -1.0 / 12.0, epsilon = 1e-12);
        assert_relative_eq!(hurwitz_tail(14.0, 2).unwrap(), (2..200).map(|n| (n as f64).powi(-14)).sum::<f64>(), max_relative = 1e-14);
        assert!(matches!(hurwitz_tail(1.0, 1), Err(Error::Pole { .. })));
    }

    #[test]
    fn zeta_lambda_examples() {
        assert_relative_eq!(zeta_lambda(0.0, 1.0).unwrap(), -1.0, epsilon = 1e-12);
        assert_relative_eq!(zeta_lambda(0.0, 0.0).unwrap(), -0.5, epsilon = 1e-12);
        assert_relative_eq!(zeta_lambda(2.0, 1.0).unwrap(), PI * PI / 3.0 - 3.0, max_relative = 1e-12);
        assert_relative_eq!(zeta_lambda(2.0, 1.0).unwrap(), 0.289_868_133_696_452_9, max_relative = 1e-12);
    }

    #[test]
    fn zeta_lambda_reduces_to_riemann() {
        assert_relative_eq!(zeta_lambda(1.0, 0.0).unwrap(), PI * PI / 6.0, max_relative = 1e-13);
        assert_relative_eq!(zeta_lambda(-0.5, 0.0).unwrap(), -1.0 / 12.0, epsilon = 1e-13);
        assert_relative_eq!(zeta_lambda(2.0, 0.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-13);
    }

    #[test]
    fn zeta_lambda_matches_direct_sum_where_convergent() {
        for &lambda in &[-0.5, 0.5, 2.5, 7.0] {
            for &s in &[1.5, 2.0, 3.25] {
                let direct: f64 = (1..2_000_000u64)
                    .map(|n| {
                        let nf = n as f64;
                        (nf * (nf + lambda)).powf(-s)
                    })
                    .sum();
                // tail beyond 2e6 is below 1e-12 for 2s >= 3
                assert_relative_eq!(zeta_lambda(s, lambda).unwrap(), direct, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(zeta_lambda(0.5, 1.0), Err(Error::Pole { .. })));
        assert!(matches!(zeta_lambda(-0.5, 1.0), Err(Error::Pole { .. })));
        assert!(matches!(zeta_lambda(0.0, -1.0), Err(Error::Domain { .. })));
        // negative integers are regular points: C(-s,k) vanishes for k > -s
        assert!(zeta_lambda(-1.0, 1.0).is_ok());
    }

    #[test]
    fn closed_values_at_origin() {
        for &lambda in &[0.0, 0.5, 1.0, 2.5] {
            let r = zeta_lambda_deriv0(lambda).unwrap();
            assert!((r.continued_value_at_0 - r.value_at_0).abs() < 1e-9);
            assert!((r.finite_difference_derivative - r.derivative_at_0).abs() < 1e-6);
        }
        let r0 = zeta_lambda_deriv0(0.0).unwrap();
        assert_relative_eq!(r0.derivative_at_0, -1.837_877_066_409_345_5, max_relative = 1e-14);
        let r2 = zeta_lambda_deriv0(2.0).unwrap();
        assert_relative_eq!(r2.derivative_at_0, -1.144_729_885_849_400_2, max_relative = 1e-13);
    }
}
