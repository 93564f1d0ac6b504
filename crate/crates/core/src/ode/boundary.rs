use super::potential::EndpointExpansion;
use crate::error::{Error, Result};

/// The three admissible boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryKind {
    Dirichlet,
    /// `f' + A f = 0` at the endpoint, derivative taken in `x`.
    Neumann(f64),
    /// The recessive (Friedrichs) branch at a singular endpoint.
    Friedrichs,
}

/// A boundary condition together with the indicial data it induces.
///
/// `nu` is never chosen freely: it follows from the kind and the
/// endpoint's leading coefficient, and `sigma + nu = 1/2` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCondition {
    kind: BoundaryKind,
    nu: f64,
}

/// Tolerance for "this coefficient is zero" in continuity checks.
const ZERO_COEFF: f64 = 1e-12;

impl BoundaryCondition {
    pub fn new(kind: BoundaryKind, expansion: &EndpointExpansion) -> Result<Self> {
        let q0 = expansion.leading();
        let n = expansion.branching();
        let continuous = || (0..2 * n).all(|m| expansion.coefficient(m).abs() <= ZERO_COEFF);
        let nu = match kind {
            BoundaryKind::Dirichlet => {
                if q0.abs() > ZERO_COEFF {
                    return Err(Error::InvalidOperator(format!(
                        "Dirichlet condition needs a regular endpoint, leading coefficient is {q0}"
                    )));
                }
                0.5
            }
            BoundaryKind::Neumann(a) => {
                if !a.is_finite() {
                    return Err(Error::InvalidOperator("Neumann parameter must be finite".into()));
                }
                if !continuous() {
                    return Err(Error::InvalidOperator(
                        "Neumann condition needs a potential continuous up to the endpoint".into(),
                    ));
                }
                -0.5
            }
            BoundaryKind::Friedrichs => (q0 + 0.25).max(0.0).sqrt(),
        };
        Ok(BoundaryCondition { kind, nu })
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    /// Indicial parameter: the normalized solution behaves like `d^(nu + 1/2)`.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Order of the boundary operator, `1/2 - nu`.
    pub fn sigma(&self) -> f64 {
        0.5 - self.nu
    }
}
