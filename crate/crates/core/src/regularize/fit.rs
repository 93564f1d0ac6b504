//! Diagnostics for caller-supplied expansions. Nothing here feeds back
//! into a computed value; a failed check only logs a warning.

use super::expansion::{AsymptoticExpansion, Side, Term};
use crate::error::{Error, Result};

fn ladder(side: Side, points: usize) -> Vec<f64> {
    (0..points)
        .map(|j| match side {
            Side::AtZero => 1e-2 * 0.5f64.powi(j as i32),
            Side::AtInfinity => 1e2 * 2f64.powi(j as i32),
        })
        .collect()
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let m = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= m * a[col][k];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Least-squares coefficients of `x^α log^k x` for each `(α, k)` in
/// `shape`, fitted to `f` on a geometric ladder towards `side`.
pub fn fit_log_ladder<F: Fn(f64) -> f64>(f: F, side: Side, shape: &[(f64, u32)]) -> Result<Vec<f64>> {
    let xs = ladder(side, 4 * shape.len() + 8);
    let basis = |x: f64| -> Vec<f64> { shape.iter().map(|&(a, k)| Term::new(1.0, a, k).eval(x)).collect() };
    let rows: Vec<Vec<f64>> = xs.iter().map(|&x| basis(x)).collect();
    // column scaling keeps the normal equations usable across decades
    let scale: Vec<f64> = (0..shape.len())
        .map(|c| rows.iter().map(|r| r[c].abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE))
        .collect();
    let n = shape.len();
    let mut ata = vec![vec![0.0; n]; n];
    let mut atb = vec![0.0; n];
    for (row, &x) in rows.iter().zip(&xs) {
        let y = f(x);
        for i in 0..n {
            let ri = row[i] / scale[i];
            atb[i] += ri * y;
            for j in 0..n {
                ata[i][j] += ri * row[j] / scale[j];
            }
        }
    }
    let sol = solve(ata, atb).ok_or_else(|| Error::ExpansionMismatch("fit basis is degenerate".into()))?;
    Ok(sol.iter().zip(&scale).map(|(c, s)| c / s).collect())
}

/// Warns (and returns `false`) when `expansion` does not describe `f`:
/// either the remainder fails to shrink between the two probe points
/// nearest the end, or a ladder fit disagrees with the supplied
/// coefficients by more than 1e-3 relative.
pub fn check_expansion<F: Fn(f64) -> f64>(f: F, expansion: &AsymptoticExpansion) -> bool {
    let (x1, x2) = match expansion.side() {
        Side::AtZero => (1e-3, 1e-4),
        Side::AtInfinity => (1e3, 1e4),
    };
    let r1 = (f(x1) - expansion.eval(x1)).abs();
    let r2 = (f(x2) - expansion.eval(x2)).abs();
    let mut ok = r2 <= r1 || r2 < 1e-10;
    if !ok {
        log::warn!("expansion remainder grows from {r1:e} to {r2:e} towards {:?}", expansion.side());
    }
    let mut shape: Vec<(f64, u32)> = expansion.terms().iter().map(|t| (t.exponent, t.log_power)).collect();
    if !shape.iter().any(|&(a, k)| a == 0.0 && k == 0) {
        shape.push((0.0, 0));
    }
    if let Ok(fitted) = fit_log_ladder(&f, expansion.side(), &shape) {
        for (t, c) in expansion.terms().iter().zip(&fitted) {
            if (t.coeff - c).abs() > 1e-3 * t.coeff.abs().max(1.0) {
                log::warn!(
                    "coefficient of x^{} log^{} x looks like {c} rather than {}",
                    t.exponent,
                    t.log_power,
                    t.coeff
                );
                ok = false;
            }
        }
    }
    ok
}
