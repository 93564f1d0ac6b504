use std::f64::consts::PI;

use num_complex::Complex64;

use super::expansion::{AsymptoticExpansion, RegularizableFunction, Term};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};

/// `⨍_0^1 x^α log^k x dx`: zero at `α = -1`, else `(-1)^k k!/(α+1)^(k+1)`.
pub fn pf_integral_01_monomial(alpha: f64, k: u32) -> f64 {
    if alpha == -1.0 {
        return 0.0;
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(k) / (alpha + 1.0).powi(k as i32 + 1)
}

/// `⨍_1^∞ x^α log^k x dx`: zero at `α = -1`, else `(-1)^(k+1) k!/(α+1)^(k+1)`.
pub fn pf_integral_1inf_monomial(alpha: f64, k: u32) -> f64 {
    -pf_integral_01_monomial(alpha, k)
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Same monomials at a complex Mellin shift `x^(s+α)`.
fn monomial_01_at(s: Complex64, t: &Term) -> Complex64 {
    let beta = s + t.exponent + 1.0;
    let sign = if t.log_power.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * factorial(t.log_power) / beta.powi(t.log_power as i32 + 1)
}

const NOISE_FLOOR: f64 = 1e-13;

/// Integration window `[delta, big]` outside which the expansion-subtracted
/// remainder is replaced by a fitted power law, because subtracting large
/// singular terms there leaves nothing but rounding noise.
struct Window {
    delta: f64,
    big: Option<f64>,
}

fn window(at_zero: &AsymptoticExpansion, at_inf: &AsymptoticExpansion) -> Window {
    let eps = f64::EPSILON;
    let delta = at_zero
        .terms()
        .iter()
        .filter(|t| t.exponent < -1.0)
        .map(|t| (NOISE_FLOOR / (eps * t.coeff.abs())).powf(1.0 / (t.exponent + 1.0)))
        .fold(0.0, f64::max)
        .min(1e-3);
    let big = at_inf
        .terms()
        .iter()
        .filter(|t| t.exponent > -1.0)
        .map(|t| (NOISE_FLOOR / (eps * t.coeff.abs())).powf(1.0 / (t.exponent + 1.0)))
        .fold(f64::INFINITY, f64::min);
    Window {
        delta,
        big: big.is_finite().then_some(big.max(1e3)),
    }
}

/// Exponent `p` of `r(x) ≈ c x^p` from two samples.
fn power_fit(x1: f64, r1: f64, x2: f64, r2: f64) -> Option<f64> {
    if r1 == 0.0 || r2 == 0.0 || (r1 < 0.0) != (r2 < 0.0) {
        return None;
    }
    Some((r2 / r1).ln() / (x2 / x1).ln())
}

fn mismatch(e: Error, place: &str) -> Error {
    match e {
        Error::Quadrature { a, b, estimate } => Error::ExpansionMismatch(format!(
            "remainder is not integrable {place} (quadrature on [{a}, {b}] stalled at {estimate:e})"
        )),
        other => other,
    }
}

fn complex_quad<G: Fn(f64) -> Complex64>(g: G, a: f64, b: f64, opts: QuadOptions) -> Result<Complex64> {
    let re = integrate(|x| g(x).re, a, b, opts)?.value;
    let im = integrate(|x| g(x).im, a, b, opts)?.value;
    Ok(Complex64::new(re, im))
}

/// `∫_0^∞ x^s r(x) dx` for the expansion-subtracted remainder `r`.
fn remainder_integral<F: Fn(f64) -> f64>(
    f: &RegularizableFunction<F>,
    s: Complex64,
    opts: QuadOptions,
) -> Result<Complex64> {
    let r0 = |x: f64| f.eval(x) - f.at_zero.eval(x);
    let rinf = |x: f64| f.eval(x) - f.at_infinity.eval(x);
    let w = window(&f.at_zero, &f.at_infinity);
    let xs = |x: f64| (s * x.ln()).exp();
    let real_s = s.im == 0.0;

    let mut total = if real_s {
        Complex64::from(integrate(|x| xs(x).re * r0(x), w.delta, 1.0, opts).map_err(|e| mismatch(e, "at 0"))?.value)
    } else {
        complex_quad(|x| xs(x) * r0(x), w.delta, 1.0, opts).map_err(|e| mismatch(e, "at 0"))?
    };
    if w.delta > 0.0 {
        let (a, b) = (w.delta, 0.5 * w.delta);
        let (ra, rb) = (r0(a), r0(b));
        if let Some(p) = power_fit(a, ra, b, rb) {
            let e = s + p + 1.0;
            if e.re <= 0.0 {
                return Err(Error::ExpansionMismatch(format!(
                    "remainder behaves like x^{p:.3} at 0 and is not integrable"
                )));
            }
            total += ra * xs(a) * a / e;
        }
    }

    let mapped = |t: f64| {
        let x = 1.0 / t;
        xs(x) * rinf(x) * x * x
    };
    let t_lo = w.big.map_or(0.0, |b| 1.0 / b);
    total += if real_s {
        Complex64::from(integrate(|t| mapped(t).re, t_lo, 1.0, opts).map_err(|e| mismatch(e, "at infinity"))?.value)
    } else {
        complex_quad(mapped, t_lo, 1.0, opts).map_err(|e| mismatch(e, "at infinity"))?
    };
    if let Some(big) = w.big {
        let (a, b) = (big, 2.0 * big);
        let (ra, rb) = (rinf(a), rinf(b));
        if let Some(p) = power_fit(a, ra, b, rb) {
            let e = s + p + 1.0;
            if e.re >= 0.0 {
                return Err(Error::ExpansionMismatch(format!(
                    "remainder behaves like x^{p:.3} at infinity and is not integrable"
                )));
            }
            total -= ra * xs(a) * a / e;
        }
    }
    Ok(total)
}

/// Hadamard partie-finie `⨍_0^∞ f`.
///
/// Splits at `1`; on each side the supplied expansion is subtracted, the
/// remainder is integrated adaptively and the monomial finite parts are
/// added back in closed form.
pub fn pf_integral<F: Fn(f64) -> f64>(f: &RegularizableFunction<F>) -> Result<f64> {
    let opts = QuadOptions::default();
    let numeric = remainder_integral(f, Complex64::new(0.0, 0.0), opts)?.re;
    let near: f64 = f
        .at_zero
        .terms()
        .iter()
        .map(|t| t.coeff * pf_integral_01_monomial(t.exponent, t.log_power))
        .sum();
    let far: f64 = f
        .at_infinity
        .terms()
        .iter()
        .map(|t| t.coeff * pf_integral_1inf_monomial(t.exponent, t.log_power))
        .sum();
    Ok(numeric + near + far)
}

/// Contour used by [`mellin_constant_term_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinOptions {
    /// Circle radius around `s = 0`; `None` keeps it at a quarter of the
    /// distance to the nearest other pole and at most `0.1`.
    pub radius: Option<f64>,
    /// Nodes on the upper half circle.
    pub nodes: usize,
}

impl Default for MellinOptions {
    fn default() -> Self {
        MellinOptions {
            radius: None,
            nodes: 16,
        }
    }
}

/// Constant Laurent coefficient at `s = 0` of the continued Mellin
/// transform `∫_0^∞ x^s f(x) dx`.
pub fn mellin_constant_term<F: Fn(f64) -> f64>(f: &RegularizableFunction<F>) -> Result<f64> {
    mellin_constant_term_with(f, MellinOptions::default())
}

/// [`mellin_constant_term`] with an explicit contour.
///
/// The coefficient is the mean of the transform over a circle about the
/// origin; conjugate symmetry of a real integrand halves the node count.
pub fn mellin_constant_term_with<F: Fn(f64) -> f64>(f: &RegularizableFunction<F>, opts: MellinOptions) -> Result<f64> {
    let gap = f
        .at_zero
        .terms()
        .iter()
        .chain(f.at_infinity.terms())
        .filter(|t| t.exponent != -1.0)
        .map(|t| (t.exponent + 1.0).abs())
        .fold(f64::INFINITY, f64::min);
    let radius = opts.radius.unwrap_or_else(|| (0.25 * gap).min(0.1));
    if !(radius > 0.0) || opts.nodes == 0 {
        return Err(Error::domain("mellin_constant_term", "contour needs a positive radius and nodes"));
    }
    let quad = QuadOptions::default();
    let mut mean = 0.0;
    for j in 0..opts.nodes {
        let theta = PI * (j as f64 + 0.5) / opts.nodes as f64;
        let s = Complex64::from_polar(radius, theta);
        let mut value = remainder_integral(f, s, quad)?;
        for t in f.at_zero.terms() {
            value += t.coeff * monomial_01_at(s, t);
        }
        for t in f.at_infinity.terms() {
            value -= t.coeff * monomial_01_at(s, t);
        }
        mean += value.re;
    }
    Ok(mean / opts.nodes as f64)
}
