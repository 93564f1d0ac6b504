//! Regularized limits and Hadamard finite-part integrals.
//!
//! A function with a power-log expansion `Σ a x^α log^k x` at `0` or at
//! `∞` has a regularized limit (the coefficient of `x^0 log^0 x`) and, if
//! it has expansions at both ends, a partie-finie integral over `(0, ∞)`.
//! Expansions are always supplied by the caller.

mod expansion;
mod fit;
mod lim;
mod partie_finie;

pub use expansion::{AsymptoticExpansion, RegularizableFunction, Side, Term};
pub use fit::{check_expansion, fit_log_ladder};
pub use lim::{reg_lim, reg_lim_with, LimOptions};
pub use partie_finie::{
    mellin_constant_term, mellin_constant_term_with, pf_integral, pf_integral_01_monomial,
    pf_integral_1inf_monomial, MellinOptions,
};
