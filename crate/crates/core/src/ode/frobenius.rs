use super::boundary::{BoundaryCondition, BoundaryKind};
use super::potential::{Endpoint, PotentialSpec};
use crate::error::{Error, Result};

/// Relative size of the last retained terms at the handoff point.
pub const SERIES_TAIL_TOL: f64 = 1e-12;
/// Starting distance from the endpoint at which integration takes over.
pub const DEFAULT_HANDOFF: f64 = 0.08;
/// The handoff never moves closer to the endpoint than this.
const MIN_HANDOFF: f64 = 1e-4;

/// Number of series terms used when the caller does not choose.
pub fn default_terms(branching: usize) -> usize {
    40.max(4 * branching)
}

/// Frobenius series `f = d^(nu + 1/2) Σ c_m d^(m/N)` of the normalized
/// solution of `-f'' + (q + z) f = 0` at one endpoint, with `c_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeed {
    endpoint: Endpoint,
    nu: f64,
    branching: usize,
    coeffs: Vec<f64>,
    handoff: f64,
    tail: f64,
}

impl FrobeniusSeed {
    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Distance from the endpoint where the series hands over to the integrator.
    pub fn handoff(&self) -> f64 {
        self.handoff
    }

    /// The handoff as a point of `[0, 1]`.
    pub fn handoff_point(&self) -> f64 {
        self.endpoint.point_at(self.handoff)
    }

    /// Relative size of the two last terms at the handoff.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// `(f, df/dx)` at distance `d` from the endpoint.
    pub fn eval(&self, d: f64) -> [f64; 2] {
        let (f, fd, _) = self.sum(d);
        let dfdx = match self.endpoint {
            Endpoint::Left => fd,
            Endpoint::Right => -fd,
        };
        [f, dfdx]
    }

    /// `(f, df/dd, tail)` at distance `d`.
    fn sum(&self, d: f64) -> (f64, f64, f64) {
        let n = self.branching as f64;
        let u = d.powf(1.0 / n);
        let base = self.nu + 0.5;
        let lead = d.powf(base);
        let mut f = 0.0;
        let mut fd = 0.0;
        let mut um = 1.0;
        let mut last = [0.0f64; 2];
        for (m, &c) in self.coeffs.iter().enumerate() {
            let term = c * um;
            f += term;
            fd += (base + m as f64 / n) * term;
            last = [last[1], term];
            um *= u;
        }
        let tail = (last[0].abs() + last[1].abs()) / f.abs().max(f64::MIN_POSITIVE);
        (lead * f, lead * fd / d, tail)
    }
}

/// Builds the series for the solution selected by `bc` at `end` and picks
/// a handoff distance where its truncation error is below
/// [`SERIES_TAIL_TOL`].
pub fn frobenius_seed(
    p: &PotentialSpec,
    end: Endpoint,
    bc: &BoundaryCondition,
    z: f64,
    terms: Option<usize>,
) -> Result<FrobeniusSeed> {
    let e = p.expansion(end);
    let n = e.branching();
    let big_m = terms.unwrap_or_else(|| default_terms(n)).max(2 * n + 1);
    let nu = bc.nu();
    let nf = n as f64;
    let q = |j: usize| e.coefficient(j) + if j == 2 * n { z } else { 0.0 };

    let mut c = vec![0.0; big_m];
    c[0] = 1.0;
    for m in 1..big_m {
        let mu = m as f64 / nf;
        let rhs: f64 = (1..=m).map(|j| q(j) * c[m - j]).sum();
        let denom = mu * (mu + 2.0 * nu);
        if denom.abs() < 1e-12 {
            // only the Neumann branch (nu = -1/2) resonates, at mu = 1
            if rhs.abs() > 1e-12 {
                return Err(Error::Resonance { m });
            }
            c[m] = match bc.kind() {
                BoundaryKind::Neumann(a) => match end {
                    Endpoint::Left => -a,
                    Endpoint::Right => a,
                },
                _ => return Err(Error::Resonance { m }),
            };
        } else {
            c[m] = rhs / denom;
        }
        if !c[m].is_finite() {
            return Err(Error::Overflow {
                function: "frobenius_seed",
                x: m as f64,
                cap: f64::MAX,
            });
        }
    }

    let mut seed = FrobeniusSeed {
        endpoint: end,
        nu,
        branching: n,
        coeffs: c,
        handoff: DEFAULT_HANDOFF,
        tail: f64::INFINITY,
    };
    let mut d = DEFAULT_HANDOFF;
    if z != 0.0 {
        d = d.min(0.5 / z.abs().sqrt());
    }
    loop {
        let (_, _, tail) = seed.sum(d);
        if tail < SERIES_TAIL_TOL {
            seed.handoff = d;
            seed.tail = tail;
            return Ok(seed);
        }
        d *= 0.7;
        if d < MIN_HANDOFF {
            return Err(Error::NonConvergence {
                spread: tail,
                tol: SERIES_TAIL_TOL,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::potential::EndpointExpansion;
    use super::*;

    fn bc(kind: BoundaryKind, p: &PotentialSpec, end: Endpoint) -> BoundaryCondition {
        BoundaryCondition::new(kind, p.expansion(end)).unwrap()
    }

    #[test]
    fn free_dirichlet_series_is_sinh() {
        // -f'' + z f = 0, f ~ x : f = sinh(√z x)/√z
        let p = PotentialSpec::zero();
        let z: f64 = 4.0;
        let b = bc(BoundaryKind::Dirichlet, &p, Endpoint::Left);
        let s = frobenius_seed(&p, Endpoint::Left, &b, z, None).unwrap();
        let x = s.handoff();
        let [f, fp] = s.eval(x);
        let r = z.sqrt();
        assert!((f - (r * x).sinh() / r).abs() < 1e-15);
        assert!((fp - (r * x).cosh()).abs() < 1e-14);
        assert!(s.tail() < SERIES_TAIL_TOL);
    }

    #[test]
    fn neumann_slot_sets_the_derivative() {
        let p = PotentialSpec::zero();
        for (end, sign) in [(Endpoint::Left, 1.0), (Endpoint::Right, -1.0)] {
            let b = bc(BoundaryKind::Neumann(3.0), &p, end);
            let s = frobenius_seed(&p, end, &b, 0.0, None).unwrap();
            // f = 1 - 3 d on the left and 1 + 3 t on the right, so f' = -3 in both
            let [f, fp] = s.eval(1e-3);
            assert!((fp + 3.0).abs() < 1e-14, "{end:?} {fp}");
            assert!((f - (1.0 - sign * 3e-3)).abs() < 1e-15);
        }
    }

    #[test]
    fn model_series_is_a_power() {
        let nu = 1.3;
        let p = PotentialSpec::bessel_model(nu, 60).unwrap();
        let b = bc(BoundaryKind::Friedrichs, &p, Endpoint::Left);
        let s = frobenius_seed(&p, Endpoint::Left, &b, 0.0, None).unwrap();
        assert!(s.coeffs()[1..].iter().all(|&c| c == 0.0));
        let [f, fp] = s.eval(0.08);
        assert!((f - 0.08f64.powf(1.8)).abs() < 1e-16);
        assert!((fp - 1.8 * 0.08f64.powf(0.8)).abs() < 1e-15);
    }

    #[test]
    fn resonance_is_reported() {
        // a 1/x term written with branching 2 lands in the Neumann slot m = N
        let l = EndpointExpansion::new(Endpoint::Left, 2, vec![0.0, 0.0, 1.0]).unwrap();
        let r = EndpointExpansion::new(Endpoint::Right, 1, vec![0.0]).unwrap();
        let p = PotentialSpec::new(l, r, |x| 1.0 / x).unwrap();
        let b = BoundaryCondition::new(BoundaryKind::Dirichlet, p.left()).unwrap();
        assert!(frobenius_seed(&p, Endpoint::Left, &b, 0.0, None).is_ok());
        // forge a Neumann condition on a potential that has a 1/x term
        let forged = BoundaryCondition::new(BoundaryKind::Neumann(0.0), PotentialSpec::zero().left()).unwrap();
        assert!(matches!(
            frobenius_seed(&p, Endpoint::Left, &forged, 0.0, None),
            Err(Error::Resonance { m: 2 })
        ));
    }
}
