//! Normalized solutions of `-f'' + (q + z) f = 0` on `(0, 1)`.

mod boundary;
mod dopri;
mod frobenius;
mod potential;
mod solution;

pub use boundary::{BoundaryCondition, BoundaryKind};
pub use dopri::Dopri5;
pub use frobenius::{default_terms, frobenius_seed, FrobeniusSeed, DEFAULT_HANDOFF, SERIES_TAIL_TOL};
pub use potential::{Endpoint, EndpointExpansion, PotentialSpec, MATCHING_TOL};
pub use solution::{wronskian, NormalizedSolution};
