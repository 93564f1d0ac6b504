use crate::error::{Error, Result};
use crate::ode::{BoundaryCondition, BoundaryKind, Endpoint, NormalizedSolution, PotentialSpec};

/// `L + z` with `L = -d²/dx² + q` on `(0, 1)` and separated boundary
/// conditions at both ends.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    potential: PotentialSpec,
    left: BoundaryCondition,
    right: BoundaryCondition,
    shift: f64,
}

impl OperatorSpec {
    /// Fails when a Dirichlet or Neumann condition is placed at a singular
    /// endpoint, or a Neumann condition at an endpoint where `q` is not
    /// continuous.
    pub fn new(potential: PotentialSpec, left: BoundaryKind, right: BoundaryKind) -> Result<Self> {
        let left = BoundaryCondition::new(left, potential.left())?;
        let right = BoundaryCondition::new(right, potential.right())?;
        Ok(OperatorSpec {
            potential,
            left,
            right,
            shift: 0.0,
        })
    }

    /// `-d²/dx²` with Dirichlet conditions at both ends.
    pub fn dirichlet_laplacian() -> Self {
        OperatorSpec::new(PotentialSpec::zero(), BoundaryKind::Dirichlet, BoundaryKind::Dirichlet).expect("valid")
    }

    /// `-d²/dx²`, Dirichlet at `0` and `f'(1) = 0`.
    pub fn dirichlet_neumann() -> Self {
        OperatorSpec::new(PotentialSpec::zero(), BoundaryKind::Dirichlet, BoundaryKind::Neumann(0.0)).expect("valid")
    }

    /// `-d²/dx²` with `f' = 0` at both ends.
    pub fn neumann_laplacian() -> Self {
        OperatorSpec::new(PotentialSpec::zero(), BoundaryKind::Neumann(0.0), BoundaryKind::Neumann(0.0)).expect("valid")
    }

    /// `-d²/dx² + (ν² - 1/4)/x²`, Friedrichs at `0` and Dirichlet at `1`.
    pub fn bessel_model(nu: f64) -> Result<Self> {
        let p = PotentialSpec::bessel_model(nu, 80)?;
        OperatorSpec::new(p, BoundaryKind::Friedrichs, BoundaryKind::Dirichlet)
    }

    /// The same operator plus `z`.
    pub fn with_shift(mut self, z: f64) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::InvalidOperator(format!("shift {z} is not finite")));
        }
        self.shift = z;
        Ok(self)
    }

    /// Replaces the potential, keeping the boundary kinds.
    pub fn with_potential(&self, potential: PotentialSpec) -> Result<Self> {
        let op = OperatorSpec::new(potential, self.left.kind(), self.right.kind())?;
        op.with_shift(self.shift)
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn bc_left(&self) -> &BoundaryCondition {
        &self.left
    }

    pub fn bc_right(&self) -> &BoundaryCondition {
        &self.right
    }

    pub fn boundary(&self, end: Endpoint) -> &BoundaryCondition {
        match end {
            Endpoint::Left => &self.left,
            Endpoint::Right => &self.right,
        }
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn nu0(&self) -> f64 {
        self.left.nu()
    }

    pub fn nu1(&self) -> f64 {
        self.right.nu()
    }

    /// `(ψ, φ)`: normalized at `1` and at `0`, for `L + shift + extra`.
    pub fn solutions(&self, extra: f64) -> Result<(NormalizedSolution, NormalizedSolution)> {
        let z = self.shift + extra;
        let phi = NormalizedSolution::new(&self.potential, Endpoint::Left, self.left.kind(), z)?;
        let psi = NormalizedSolution::new(&self.potential, Endpoint::Right, self.right.kind(), z)?;
        Ok((psi, phi))
    }
}
