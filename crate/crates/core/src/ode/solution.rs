use parking_lot::Mutex;

use super::boundary::{BoundaryCondition, BoundaryKind};
use super::dopri::Dopri5;
use super::frobenius::{frobenius_seed, FrobeniusSeed};
use super::potential::{Endpoint, PotentialSpec};
use crate::error::{Error, Result};

/// The solution of `-f'' + (q + z) f = 0` that satisfies the boundary
/// condition at `endpoint` and behaves like `d^(nu + 1/2)` there.
///
/// Values away from the endpoint come from integrating inward from the
/// series handoff. Accepted steps are kept as checkpoints, so later
/// evaluations restart from the nearest one instead of the handoff.
#[derive(Debug)]
pub struct NormalizedSolution {
    potential: PotentialSpec,
    bc: BoundaryCondition,
    z: f64,
    seed: FrobeniusSeed,
    integrator: Dopri5,
    // (distance from endpoint, [f, f']) sorted by distance
    checkpoints: Mutex<Vec<(f64, [f64; 2])>>,
}

impl NormalizedSolution {
    pub fn new(p: &PotentialSpec, end: Endpoint, kind: BoundaryKind, z: f64) -> Result<Self> {
        NormalizedSolution::with_terms(p, end, kind, z, None)
    }

    pub fn with_terms(p: &PotentialSpec, end: Endpoint, kind: BoundaryKind, z: f64, terms: Option<usize>) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::InvalidOperator(format!("shift {z} is not finite")));
        }
        let bc = BoundaryCondition::new(kind, p.expansion(end))?;
        let seed = frobenius_seed(p, end, &bc, z, terms)?;
        let start = (seed.handoff(), seed.eval(seed.handoff()));
        Ok(NormalizedSolution {
            potential: p.clone(),
            bc,
            z,
            seed,
            integrator: Dopri5::default(),
            checkpoints: Mutex::new(vec![start]),
        })
    }

    pub fn endpoint(&self) -> Endpoint {
        self.seed.endpoint()
    }

    pub fn boundary(&self) -> &BoundaryCondition {
        &self.bc
    }

    pub fn nu(&self) -> f64 {
        self.bc.nu()
    }

    pub fn shift(&self) -> f64 {
        self.z
    }

    pub fn seed(&self) -> &FrobeniusSeed {
        &self.seed
    }

    /// `(f(x), f'(x))`. Inside the handoff distance the series is used directly.
    pub fn eval(&self, x: f64) -> Result<[f64; 2]> {
        if !(0.0 < x && x < 1.0) {
            return Err(Error::domain("NormalizedSolution::eval", format!("x = {x} outside (0, 1)")));
        }
        let end = self.endpoint();
        let d = end.distance(x);
        if d <= self.seed.handoff() {
            return Ok(self.seed.eval(d));
        }
        let (d0, y0) = {
            let cps = self.checkpoints.lock();
            let i = cps.partition_point(|(dc, _)| *dc <= d);
            cps[i - 1]
        };
        if d0 == d {
            return Ok(y0);
        }
        let z = self.z;
        let p = &self.potential;
        let mut seen = Vec::new();
        let y = self.integrator.solve(
            |x, y: &[f64; 2]| [y[1], (p.q(x) + z) * y[0]],
            end.point_at(d0),
            y0,
            x,
            |xs, ys| seen.push((end.distance(xs), *ys)),
        )?;
        let mut cps = self.checkpoints.lock();
        cps.extend(seen);
        cps.sort_by(|a, b| a.0.total_cmp(&b.0));
        cps.dedup_by(|a, b| a.0 == b.0);
        Ok(y)
    }

    /// `f(x)` without the derivative.
    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.eval(x)?[0])
    }
}

/// `W(psi, phi)(x) = psi phi' - psi' phi`.
pub fn wronskian(psi: &NormalizedSolution, phi: &NormalizedSolution, x: f64) -> Result<f64> {
    let [p, pp] = psi.eval(x)?;
    let [f, fp] = phi.eval(x)?;
    Ok(p * fp - pp * f)
}
