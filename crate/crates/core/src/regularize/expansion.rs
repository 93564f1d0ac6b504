use crate::error::{Error, Result};

/// Which end of `(0, ∞)` an expansion describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    AtZero,
    AtInfinity,
}

/// One term `coeff · x^exponent · log^log_power x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub exponent: f64,
    pub log_power: u32,
}

impl Term {
    pub fn new(coeff: f64, exponent: f64, log_power: u32) -> Self {
        Term {
            coeff,
            exponent,
            log_power,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.coeff * x.powf(self.exponent);
        if self.log_power > 0 {
            v *= x.ln().powi(self.log_power as i32);
        }
        v
    }

    pub fn is_constant(&self) -> bool {
        self.exponent == 0.0 && self.log_power == 0
    }
}

/// A finite power-log expansion at one end.
///
/// Terms at `0` have `exponent <= 0` and terms at `∞` have
/// `exponent >= -1`; no two terms share an `(exponent, log_power)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    side: Side,
    terms: Vec<Term>,
}

impl AsymptoticExpansion {
    pub fn new(side: Side, terms: Vec<Term>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if !t.coeff.is_finite() || !t.exponent.is_finite() {
                return Err(Error::ExpansionMismatch(format!("term {i} is not finite")));
            }
            let ok = match side {
                Side::AtZero => t.exponent <= 0.0,
                Side::AtInfinity => t.exponent >= -1.0,
            };
            if !ok {
                return Err(Error::ExpansionMismatch(format!(
                    "exponent {} is not a leading term at {side:?}",
                    t.exponent
                )));
            }
            if terms[..i]
                .iter()
                .any(|u| u.exponent == t.exponent && u.log_power == t.log_power)
            {
                return Err(Error::ExpansionMismatch(format!(
                    "repeated term x^{} log^{} x",
                    t.exponent, t.log_power
                )));
            }
        }
        Ok(AsymptoticExpansion { side, terms })
    }

    pub fn empty(side: Side) -> Self {
        AsymptoticExpansion {
            side,
            terms: Vec::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Coefficient of `x^0 log^0 x`.
    pub fn constant_term(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.is_constant())
            .map(|t| t.coeff)
            .sum()
    }

    /// Sum of all terms at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Sum of the non-constant terms at `x`.
    pub fn singular_part(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .filter(|t| !t.is_constant())
            .map(|t| t.eval(x))
            .sum()
    }

    /// `a·self + b·other`, merging equal terms.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::ExpansionMismatch("cannot combine expansions at different ends".into()));
        }
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term { coeff: a * t.coeff, ..*t })
            .collect();
        for t in &other.terms {
            match terms
                .iter_mut()
                .find(|u| u.exponent == t.exponent && u.log_power == t.log_power)
            {
                Some(u) => u.coeff += b * t.coeff,
                None => terms.push(Term { coeff: b * t.coeff, ..*t }),
            }
        }
        AsymptoticExpansion::new(self.side, terms)
    }
}

/// An evaluator on `(0, ∞)` with caller-supplied expansions at both ends.
///
/// The evaluator must be safe to call from several threads at once.
pub struct RegularizableFunction<F> {
    pub evaluator: F,
    pub at_zero: AsymptoticExpansion,
    pub at_infinity: AsymptoticExpansion,
}

impl<F: Fn(f64) -> f64> RegularizableFunction<F> {
    pub fn new(evaluator: F, at_zero: AsymptoticExpansion, at_infinity: AsymptoticExpansion) -> Result<Self> {
        if at_zero.side() != Side::AtZero || at_infinity.side() != Side::AtInfinity {
            return Err(Error::ExpansionMismatch("expansions are attached to the wrong ends".into()));
        }
        Ok(RegularizableFunction {
            evaluator,
            at_zero,
            at_infinity,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }
}
