use std::cell::RefCell;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::Arc;

use super::operator::OperatorSpec;
use crate::error::{Error, Result};
use crate::ode::{default_terms, BoundaryKind, Endpoint, EndpointExpansion, PotentialSpec};
use crate::quad::{integrate, QuadOptions};
use crate::regularize::{reg_lim, AsymptoticExpansion, Side, Term};
use crate::series::{reflect_polynomial, PowerSeries};
use crate::specfun::gamma;

type Func = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Below this distance from an endpoint the smooth parts of `S` come from
/// their Taylor series rather than from subtracting the pole.
const TAYLOR_REACH: f64 = 0.1;
/// Allowed disagreement between `S` and pole plus Taylor series at the reach.
const SPLIT_TOL: f64 = 1e-8;

fn quad_opts() -> QuadOptions {
    QuadOptions::default().with_abs_tol(1e-13)
}

/// `L = d^t d` with `d = d/dx + S`, so `q = S² - S'`, where
/// `S = s0/x + S1 = s1/(1-x) + S2` with `S1` smooth on `[0, 1)` and `S2`
/// smooth on `(0, 1]`.
#[derive(Clone)]
pub struct FactorizedSpec {
    s0: f64,
    s1: f64,
    s: Func,
    s_prime: Func,
    // Taylor coefficients of S1 in x and of S2 in t = 1 - x
    left_taylor: Vec<f64>,
    right_taylor: Vec<f64>,
}

impl fmt::Debug for FactorizedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorizedSpec")
            .field("s0", &self.s0)
            .field("s1", &self.s1)
            .finish_non_exhaustive()
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

impl FactorizedSpec {
    /// `S`, `S'` as closures together with the Taylor coefficients of
    /// `S1` at `0` and of `S2(1 - t)` at `t = 0`.
    pub fn new<F, G>(s0: f64, s1: f64, s: F, s_prime: G, left_taylor: Vec<f64>, right_taylor: Vec<f64>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(s0.is_finite() && s1.is_finite()) || left_taylor.is_empty() || right_taylor.is_empty() {
            return Err(Error::InvalidOperator("factorization needs finite s0, s1 and Taylor data".into()));
        }
        let spec = FactorizedSpec {
            s0,
            s1,
            s: Arc::new(s),
            s_prime: Arc::new(s_prime),
            left_taylor,
            right_taylor,
        };
        let r = TAYLOR_REACH;
        let left = s0 / r + horner(&spec.left_taylor, r);
        let right = s1 / r + horner(&spec.right_taylor, r);
        for (x, split) in [(r, left), (1.0 - r, right)] {
            let direct = spec.s(x);
            if (direct - split).abs() > SPLIT_TOL * direct.abs().max(1.0) {
                return Err(Error::InvalidOperator(format!(
                    "S({x}) = {direct} but pole plus Taylor series gives {split}"
                )));
            }
        }
        Ok(spec)
    }

    /// `S = s0/x + s1/(1-x) + P(x)` with `P` a polynomial (ascending coefficients).
    pub fn rational(s0: f64, s1: f64, p: &[f64]) -> Result<Self> {
        let m = default_terms(1);
        let poly = PowerSeries::new(p.to_vec(), m.max(p.len()));
        let left = &PowerSeries::geometric(poly.len()).scale(s1) + &poly;
        let reflected = PowerSeries::new(reflect_polynomial(p), poly.len());
        let right = &PowerSeries::geometric(poly.len()).scale(s0) + &reflected;
        let dp = poly.derivative();
        let p_val = poly.clone();
        FactorizedSpec::new(
            s0,
            s1,
            move |x| s0 / x + s1 / (1.0 - x) + p_val.eval(x),
            move |x| -s0 / (x * x) + s1 / ((1.0 - x) * (1.0 - x)) + dp.eval(x),
            left.into_coeffs(),
            right.into_coeffs(),
        )
    }

    /// The Jacobi factorization
    /// `S = (π/2)(1+α+β) cot πx - (π/2)(α-β)/sin πx`, `s0 = 1/2+β`, `s1 = -1/2-α`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        let m = default_terms(1);
        let k = 1.0 + alpha + beta;
        let d = alpha - beta;
        let s = move |x: f64| {
            let (sn, cs) = (PI * x).sin_cos();
            0.5 * PI * (k * cs - d) / sn
        };
        let s_prime = move |x: f64| {
            let (sn, cs) = (PI * x).sin_cos();
            0.5 * PI * PI * (d * cs - k) / (sn * sn)
        };
        // S(1 - t) = -S_{β,α}(t), so S2(1 - t) = -S1_{β,α}(t)
        let right: Vec<f64> = jacobi_smooth_taylor(k, -d, m).iter().map(|c| -c).collect();
        FactorizedSpec::new(0.5 + beta, -0.5 - alpha, s, s_prime, jacobi_smooth_taylor(k, d, m), right)
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }

    pub fn nu0(&self) -> f64 {
        (self.s0 + 0.5).abs()
    }

    pub fn nu1(&self) -> f64 {
        (self.s1 - 0.5).abs()
    }

    pub fn s(&self, x: f64) -> f64 {
        (self.s)(x)
    }

    /// `S1 = S - s0/x`.
    pub fn s_smooth_left(&self, x: f64) -> f64 {
        if x < TAYLOR_REACH {
            horner(&self.left_taylor, x)
        } else {
            self.s(x) - self.s0 / x
        }
    }

    /// `S2 = S - s1/(1-x)`.
    pub fn s_smooth_right(&self, x: f64) -> f64 {
        let t = 1.0 - x;
        if t < TAYLOR_REACH {
            horner(&self.right_taylor, t)
        } else {
            self.s(x) - self.s1 / t
        }
    }

    /// `q = S² - S'` with endpoint series derived from the Taylor data.
    pub fn potential(&self) -> Result<PotentialSpec> {
        let m = self.left_taylor.len().max(self.right_taylor.len());
        // x²q = s0(s0+1) + 2 s0 x R + x²(R² - R') with R = S1
        let r = PowerSeries::new(self.left_taylor.clone(), m);
        let mut left = (&(&r * &r) - &r.derivative()).shift_up(2);
        left = &left + &r.shift_up(1).scale(2.0 * self.s0);
        let mut left = left.into_coeffs();
        left[0] += self.s0 * (self.s0 + 1.0);
        // t²q = s1(s1-1) + 2 s1 t R + t²(R² + R') with R = S2(1 - t)
        let r = PowerSeries::new(self.right_taylor.clone(), m);
        let mut right = (&(&r * &r) + &r.derivative()).shift_up(2);
        right = &right + &r.shift_up(1).scale(2.0 * self.s1);
        let mut right = right.into_coeffs();
        right[0] += self.s1 * (self.s1 - 1.0);
        let s = Arc::clone(&self.s);
        let sp = Arc::clone(&self.s_prime);
        PotentialSpec::new(
            EndpointExpansion::new(Endpoint::Left, 1, left)?,
            EndpointExpansion::new(Endpoint::Right, 1, right)?,
            move |x| {
                let v = s(x);
                v * v - sp(x)
            },
        )
    }

    /// The Friedrichs extension of `d^t d`.
    pub fn operator(&self) -> Result<OperatorSpec> {
        OperatorSpec::new(self.potential()?, BoundaryKind::Friedrichs, BoundaryKind::Friedrichs)
    }

    fn phase_integrals(&self) -> Result<Phase<'_>> {
        let c = integrate(|t| self.s_smooth_left(t), 0.0, 0.5, quad_opts())?.value;
        Ok(Phase {
            spec: self,
            half: -self.s0 * LN_2 + c,
        })
    }

    /// `⨍₀ˣ S`, with the `s0 log x` singularity split off analytically.
    pub fn phase(&self, x: f64) -> Result<f64> {
        if !(0.0 < x && x < 1.0) {
            return Err(Error::domain("FactorizedSpec::phase", format!("x = {x} outside (0, 1)")));
        }
        self.phase_integrals()?.at(x)
    }

    /// `⨍₀¹ S`: the regularized limit at `x → 1` of `⨍₀ˣ S`, whose
    /// singular part there is `-s1 log(1-x)`.
    pub fn phase_total(&self) -> Result<f64> {
        let ph = self.phase_integrals()?;
        let expansion = AsymptoticExpansion::new(Side::AtZero, vec![Term::new(-self.s1, 0.0, 1)])?;
        let opts = quad_opts();
        let failure = RefCell::new(None);
        let value = reg_lim(
            |eps| match integrate(|t| self.s(t), 0.5, 1.0 - eps, opts) {
                Ok(r) => ph.half + r.value,
                Err(e) => record(&failure, e),
            },
            &expansion,
        );
        match failure.into_inner() {
            Some(e) => Err(e),
            None => value,
        }
    }
}

/// Keeps the first error raised inside an integrand; the integrand itself
/// returns NaN so the enclosing quadrature stops.
fn record(slot: &RefCell<Option<Error>>, e: Error) -> f64 {
    slot.borrow_mut().get_or_insert(e);
    f64::NAN
}

struct Phase<'a> {
    spec: &'a FactorizedSpec,
    half: f64,
}

impl Phase<'_> {
    fn at(&self, x: f64) -> Result<f64> {
        let f = self.spec;
        if x <= 0.5 {
            Ok(f.s0 * x.ln() + integrate(|t| f.s_smooth_left(t), 0.0, x, quad_opts())?.value)
        } else {
            let s2 = integrate(|t| f.s_smooth_right(t), 0.5, x, quad_opts())?.value;
            Ok(self.half + s2 - f.s1 * (2.0 * (1.0 - x)).ln())
        }
    }

    /// `∫₀¹ exp(2 ⨍₀ˣ S) dx`. Each half is mapped by `d = u^m` so the
    /// endpoint power `d^a` becomes at least linear in `u`.
    fn inverse_square_integral(&self) -> Result<f64> {
        let f = self.spec;
        let power = |a: f64| (2.0 / (a + 1.0)).ceil().max(1.0);
        let failure = RefCell::new(None);
        let m0 = power(2.0 * f.s0);
        let left = integrate(
            |u| {
                let x = u.powf(m0);
                match integrate(|t| f.s_smooth_left(t), 0.0, x, quad_opts()) {
                    Ok(r) => (m0.ln() + (m0 - 1.0) * u.ln() + 2.0 * (f.s0 * m0 * u.ln() + r.value)).exp(),
                    Err(e) => record(&failure, e),
                }
            },
            0.0,
            0.5f64.powf(1.0 / m0),
            quad_opts(),
        );
        let m1 = power(-2.0 * f.s1);
        let right = integrate(
            |u| {
                let t = u.powf(m1);
                match integrate(|y| f.s_smooth_right(y), 0.5, 1.0 - t, quad_opts()) {
                    Ok(r) => (m1.ln() + (m1 - 1.0) * u.ln()
                        + 2.0 * (self.half + r.value - f.s1 * LN_2 - f.s1 * m1 * u.ln()))
                    .exp(),
                    Err(e) => record(&failure, e),
                }
            },
            0.0,
            0.5f64.powf(1.0 / m1),
            quad_opts(),
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        Ok(left?.value + right?.value)
    }
}

/// Taylor coefficients of `S1` for `S = (π/2)(k cot πx - d/sin πx)`.
///
/// With `u = πx`, `S = (π/2) G(u)/u` where `G = (k cos u - d)/sinc u`, so
/// `S1 = (π/2) Σ_{j≥0} G_{j+1} u^j`.
fn jacobi_smooth_taylor(k: f64, d: f64, terms: usize) -> Vec<f64> {
    let n = terms + 1;
    let g = &(&PowerSeries::cos(n).scale(k) - &PowerSeries::constant(d, n)) * &PowerSeries::sinc(n).recip().expect("sinc(0) = 1");
    let mut scale = 0.5 * PI;
    g.coeffs()[1..]
        .iter()
        .map(|c| {
            let v = c * scale;
            scale *= PI;
            v
        })
        .collect()
}

/// The four-case closed form for the determinant of `d^t d`.
pub fn det_factorized_closed(f: &FactorizedSpec) -> Result<f64> {
    let (s0, s1) = (f.s0, f.s1);
    let (nu0, nu1) = (f.nu0(), f.nu1());
    let left_recessive = s0 <= -0.5;
    let right_recessive = s1 >= 0.5;
    Ok(match (left_recessive, right_recessive) {
        (true, true) => 0.0,
        (false, false) => {
            let ph = f.phase_integrals()?;
            let integral = ph.inverse_square_integral()?;
            PI / (2f64.powf(nu0 + nu1 - 2.0) * gamma(nu0)? * gamma(nu1)?) * (-f.phase_total()?).exp() * integral
        }
        (false, true) => PI * f.phase_total()?.exp() / (2f64.powf(nu0 + nu1 - 1.0) * gamma(nu0)? * gamma(nu1 + 1.0)?),
        (true, false) => {
            PI * (-f.phase_total()?).exp() / (2f64.powf(nu0 + nu1 - 1.0) * gamma(nu0 + 1.0)? * gamma(nu1)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_over_x_gives_the_nu_one_model() {
        let f = FactorizedSpec::rational(0.5, 0.0, &[]).unwrap();
        assert!(f.phase_total().unwrap().abs() < 1e-10);
        let d = det_factorized_closed(&f).unwrap();
        assert!((d - (PI / 2.0).sqrt()).abs() < 1e-8, "{d}");
    }

    #[test]
    fn kernel_case_is_exactly_zero() {
        let f = FactorizedSpec::rational(-1.0, 1.0, &[]).unwrap();
        assert_eq!(det_factorized_closed(&f).unwrap(), 0.0);
    }

    #[test]
    fn phase_pieces_are_continuous() {
        let f = FactorizedSpec::rational(0.3, -0.2, &[0.5, 1.0]).unwrap();
        // ⨍₀ˣ S = 0.3 log x + 0.2 log(1-x) + x/2 + x²/2 exactly
        for x in [0.01, 0.3, 0.5, 0.7, 0.99] {
            let exact = 0.3 * f64::ln(x) + 0.2 * f64::ln(1.0 - x) + 0.5 * x + 0.5 * x * x;
            assert!((f.phase(x).unwrap() - exact).abs() < 1e-11, "x = {x}");
        }
        assert!((f.phase_total().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn potential_series_match_the_interior() {
        for f in [
            FactorizedSpec::rational(0.3, -0.2, &[0.5, 1.0]).unwrap(),
            FactorizedSpec::rational(-0.8, 0.1, &[0.0, -0.4]).unwrap(),
            FactorizedSpec::jacobi(1.0, 0.5).unwrap(),
        ] {
            let p = f.potential().unwrap();
            let [l, r] = p.matching_mismatch();
            assert!(l < 1e-10 && r < 1e-10, "{f:?}: {l:e} {r:e}");
            assert!((p.left().leading() - (f.nu0().powi(2) - 0.25)).abs() < 1e-13);
            assert!((p.right().leading() - (f.nu1().powi(2) - 0.25)).abs() < 1e-13);
        }
    }

    #[test]
    fn inconsistent_taylor_data_is_rejected() {
        let r = FactorizedSpec::new(0.5, 0.0, |x| 0.5 / x, |x| -0.5 / (x * x), vec![1.0], vec![0.5]);
        assert!(r.is_err());
    }
}
