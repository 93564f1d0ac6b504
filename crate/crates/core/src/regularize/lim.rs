use super::expansion::{AsymptoticExpansion, Side};
use crate::error::{Error, Result};

/// Geometric ladder and acceptance tolerance for [`reg_lim_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimOptions {
    /// First ladder point; `None` picks `1/4` at zero and `4` at infinity.
    pub start: Option<f64>,
    /// Ladder ratio (points move towards the limit by this factor).
    pub ratio: f64,
    pub points: usize,
    pub tol: f64,
}

impl Default for LimOptions {
    fn default() -> Self {
        LimOptions {
            start: None,
            ratio: 0.5,
            points: 12,
            tol: 1e-8,
        }
    }
}

/// Even columns of Wynn's ε table; each removes one more geometric (or
/// confluent geometric) component from the ladder values.
fn wynn_columns(seq: &[f64]) -> Vec<Vec<f64>> {
    let mut columns = Vec::new();
    let mut prev = vec![0.0; seq.len() + 1];
    let mut cur = seq.to_vec();
    let mut k = 0;
    while cur.len() >= 2 {
        let next: Vec<f64> = cur
            .windows(2)
            .zip(&prev[1..])
            .map(|(w, p)| {
                let d = w[1] - w[0];
                if d == 0.0 {
                    f64::INFINITY
                } else {
                    p + 1.0 / d
                }
            })
            .collect();
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            columns.push(cur.clone());
        }
    }
    columns
}

fn spread(seq: &[f64]) -> f64 {
    let tail = &seq[seq.len().saturating_sub(3)..];
    let max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = tail.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// The regularized limit of `f` at the end described by `expansion`.
pub fn reg_lim<F: Fn(f64) -> f64>(f: F, expansion: &AsymptoticExpansion) -> Result<f64> {
    reg_lim_with(f, expansion, LimOptions::default())
}

/// [`reg_lim`] with an explicit ladder.
///
/// The non-constant expansion terms are subtracted on the ladder and the
/// remainder is extrapolated with Wynn's ε-algorithm; the column whose
/// last three entries agree best is taken. A spread above
/// `tol·max(1, |limit|)` is reported as non-convergence.
pub fn reg_lim_with<F: Fn(f64) -> f64>(f: F, expansion: &AsymptoticExpansion, opts: LimOptions) -> Result<f64> {
    if opts.points < 5 || !(opts.ratio > 0.0 && opts.ratio < 1.0) {
        return Err(Error::domain("reg_lim", "ladder needs >= 5 points and a ratio in (0, 1)"));
    }
    let (start, step) = match expansion.side() {
        Side::AtZero => (opts.start.unwrap_or(0.25), opts.ratio),
        Side::AtInfinity => (opts.start.unwrap_or(4.0), 1.0 / opts.ratio),
    };
    let mut remainder = Vec::with_capacity(opts.points);
    let mut x = start;
    for _ in 0..opts.points {
        let r = f(x) - expansion.singular_part(x);
        if !r.is_finite() {
            return Err(Error::domain("reg_lim", format!("function is not finite at {x}")));
        }
        remainder.push(r);
        x *= step;
    }
    let mut best = (spread(&remainder), *remainder.last().expect("points >= 5"));
    for column in wynn_columns(&remainder) {
        if column.len() < 3 || !column[column.len() - 3..].iter().all(|v| v.is_finite()) {
            continue;
        }
        let s = spread(&column);
        if s < best.0 {
            best = (s, *column.last().expect("nonempty"));
        }
    }
    let (s, value) = best;
    if s > opts.tol * value.abs().max(1.0) {
        return Err(Error::NonConvergence {
            spread: s,
            tol: opts.tol,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::super::expansion::Term;
    use super::*;
    use approx::assert_relative_eq;

    fn at_zero(terms: Vec<Term>) -> AsymptoticExpansion {
        AsymptoticExpansion::new(Side::AtZero, terms).unwrap()
    }

    #[test]
    fn constant_terms() {
        let e = at_zero(vec![Term::new(1.0, 0.0, 1)]);
        assert_relative_eq!(reg_lim(|x: f64| x.ln() + 5.0, &e).unwrap(), 5.0, epsilon = 1e-12);
        let e = at_zero(vec![Term::new(1.0, -0.5, 0), Term::new(3.0, 0.0, 2)]);
        let f = |x: f64| x.powf(-0.5) + 3.0 * x.ln().powi(2) + 7.0;
        assert_relative_eq!(reg_lim(f, &e).unwrap(), 7.0, epsilon = 1e-10);
    }

    #[test]
    fn extrapolates_slow_remainders() {
        // e^x / x = 1/x + 1 + x/2 + ...
        let e = at_zero(vec![Term::new(1.0, -1.0, 0)]);
        assert_relative_eq!(reg_lim(|x: f64| x.exp() / x, &e).unwrap(), 1.0, epsilon = 1e-9);
        // two uncancelled powers
        let e = at_zero(vec![Term::new(2.0, 0.0, 1)]);
        let f = |x: f64| 2.0 * x.ln() - 0.75 + x.sqrt() - 3.0 * x;
        assert_relative_eq!(reg_lim(f, &e).unwrap(), -0.75, epsilon = 1e-9);
        // x log x is confluent geometric on the ladder
        let f = |x: f64| 2.0 * x.ln() - 0.75 + x * x.ln();
        assert_relative_eq!(reg_lim(f, &e).unwrap(), -0.75, epsilon = 1e-10);
        let f = |x: f64| 2.0 * x.ln() - 0.75 + x + x * x + x.powi(3);
        assert_relative_eq!(reg_lim(f, &e).unwrap(), -0.75, epsilon = 1e-12);
    }

    #[test]
    fn at_infinity() {
        let e = AsymptoticExpansion::new(Side::AtInfinity, vec![Term::new(1.0, 1.0, 0), Term::new(-1.0, 0.0, 1)]).unwrap();
        // x - log x + 3 + 1/x
        let f = |x: f64| x - x.ln() + 3.0 + 1.0 / x;
        assert_relative_eq!(reg_lim(f, &e).unwrap(), 3.0, epsilon = 1e-9);
    }

    #[test]
    fn missing_term_is_detected() {
        let e = at_zero(vec![]);
        assert!(matches!(reg_lim(|x: f64| x.ln(), &e), Err(Error::NonConvergence { .. })));
    }
}
