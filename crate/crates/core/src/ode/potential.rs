use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// One end of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    Left,
    Right,
}

impl Endpoint {
    /// Distance from this endpoint to `x`.
    pub fn distance(self, x: f64) -> f64 {
        match self {
            Endpoint::Left => x,
            Endpoint::Right => 1.0 - x,
        }
    }

    /// The point at distance `d` from this endpoint.
    pub fn point_at(self, d: f64) -> f64 {
        match self {
            Endpoint::Left => d,
            Endpoint::Right => 1.0 - d,
        }
    }

    pub fn other(self) -> Endpoint {
        match self {
            Endpoint::Left => Endpoint::Right,
            Endpoint::Right => Endpoint::Left,
        }
    }
}

/// The series `d² q = Σ_m q_m d^(m/N)` in the distance `d` to an endpoint.
///
/// Coefficients past the supplied ones are taken to be zero, so a short
/// list describes a potential whose series terminates.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointExpansion {
    endpoint: Endpoint,
    branching: usize,
    coeffs: Vec<f64>,
}

impl EndpointExpansion {
    pub fn new(endpoint: Endpoint, branching: usize, mut coeffs: Vec<f64>) -> Result<Self> {
        if branching == 0 {
            return Err(Error::InvalidOperator("branching order must be at least 1".into()));
        }
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidOperator("endpoint series needs finite coefficients".into()));
        }
        if coeffs[0] < -0.25 - 1e-14 {
            return Err(Error::InvalidOperator(format!(
                "leading coefficient {} is below -1/4 (limit circle oscillatory endpoint)",
                coeffs[0]
            )));
        }
        if coeffs.len() < 2 * branching + 1 {
            coeffs.resize(2 * branching + 1, 0.0);
        }
        Ok(EndpointExpansion {
            endpoint,
            branching,
            coeffs,
        })
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn branching(&self) -> usize {
        self.branching
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `q_m`, zero past the end of the stored list.
    pub fn coefficient(&self, m: usize) -> f64 {
        self.coeffs.get(m).copied().unwrap_or(0.0)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    /// `d² q(d)` from the series.
    pub fn eval(&self, d: f64) -> f64 {
        let u = d.powf(1.0 / self.branching as f64);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }
}

type Interior = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A potential `q` on `(0, 1)` with Frobenius data at both ends.
#[derive(Clone)]
pub struct PotentialSpec {
    left: EndpointExpansion,
    right: EndpointExpansion,
    interior: Interior,
    window: (f64, f64),
}

impl fmt::Debug for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSpec")
            .field("left", &self.left)
            .field("right", &self.right)
            .field("window", &self.window)
            .finish_non_exhaustive()
    }
}

/// Relative mismatch above which the interior evaluator and an endpoint
/// series are reported as inconsistent.
pub const MATCHING_TOL: f64 = 1e-6;

impl PotentialSpec {
    pub fn new<F>(left: EndpointExpansion, right: EndpointExpansion, interior: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if left.endpoint() != Endpoint::Left || right.endpoint() != Endpoint::Right {
            return Err(Error::InvalidOperator("endpoint series attached to the wrong ends".into()));
        }
        let spec = PotentialSpec {
            left,
            right,
            interior: Arc::new(interior),
            window: (0.05, 0.95),
        };
        let [ml, mr] = spec.matching_mismatch();
        if ml > MATCHING_TOL || mr > MATCHING_TOL {
            log::warn!("endpoint series and interior potential disagree (left {ml:e}, right {mr:e})");
        }
        Ok(spec)
    }

    /// `q ≡ 0`.
    pub fn zero() -> Self {
        let left = EndpointExpansion::new(Endpoint::Left, 1, vec![0.0]).expect("valid");
        let right = EndpointExpansion::new(Endpoint::Right, 1, vec![0.0]).expect("valid");
        PotentialSpec::new(left, right, |_| 0.0).expect("valid")
    }

    /// `q = (ν² - 1/4)/x²`.
    pub fn bessel_model(nu: f64, terms: usize) -> Result<Self> {
        if !(nu >= 0.0) {
            return Err(Error::InvalidOperator(format!("order {nu} must be >= 0")));
        }
        let c = nu * nu - 0.25;
        let left = EndpointExpansion::new(Endpoint::Left, 1, vec![c])?;
        // (1-x)^2 q = c t^2/(1-t)^2 = c Σ_{m≥2} (m-1) t^m
        let right_coeffs = (0..terms.max(3)).map(|m| if m >= 2 { c * (m - 1) as f64 } else { 0.0 }).collect();
        let right = EndpointExpansion::new(Endpoint::Right, 1, right_coeffs)?;
        PotentialSpec::new(left, right, move |x| c / (x * x))
    }

    /// Same endpoint data and window, interior `q + extra`.
    ///
    /// `extra` must vanish near both endpoints (outside the matching window)
    /// so the series stay valid.
    pub fn with_interior_perturbation<G>(&self, extra: G) -> Self
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let base = Arc::clone(&self.interior);
        PotentialSpec {
            interior: Arc::new(move |x| base(x) + extra(x)),
            ..self.clone()
        }
    }

    pub fn with_window(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::InvalidOperator(format!("matching window ({lo}, {hi}) must lie inside (0, 1)")));
        }
        self.window = (lo, hi);
        Ok(self)
    }

    pub fn left(&self) -> &EndpointExpansion {
        &self.left
    }

    pub fn right(&self) -> &EndpointExpansion {
        &self.right
    }

    pub fn expansion(&self, end: Endpoint) -> &EndpointExpansion {
        match end {
            Endpoint::Left => &self.left,
            Endpoint::Right => &self.right,
        }
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    /// `q(x)` from the interior evaluator.
    pub fn q(&self, x: f64) -> f64 {
        (self.interior)(x)
    }

    /// Worst relative disagreement between `d² q` from the interior
    /// evaluator and from each endpoint series, sampled at the window edge
    /// and half way to the endpoint.
    pub fn matching_mismatch(&self) -> [f64; 2] {
        let probe = |e: &EndpointExpansion, d: f64| {
            let x = e.endpoint().point_at(d);
            let from_interior = self.q(x) * d * d;
            let from_series = e.eval(d);
            (from_interior - from_series).abs() / from_series.abs().max(1.0)
        };
        let dl = self.window.0;
        let dr = 1.0 - self.window.1;
        [
            probe(&self.left, dl).max(probe(&self.left, 0.5 * dl)),
            probe(&self.right, dr).max(probe(&self.right, 0.5 * dr)),
        ]
    }
}
