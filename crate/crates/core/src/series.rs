//! Truncated power series in one variable, used to build endpoint
//! expansions of explicit potentials.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Series with the given coefficients, truncated or zero-padded to `len`.
    pub fn new(mut coeffs: Vec<f64>, len: usize) -> Self {
        coeffs.resize(len, 0.0);
        PowerSeries { coeffs }
    }

    pub fn constant(c: f64, len: usize) -> Self {
        PowerSeries::new(vec![c], len)
    }

    /// `x`.
    pub fn variable(len: usize) -> Self {
        PowerSeries::new(vec![0.0, 1.0], len)
    }

    /// `Σ_{k ≥ 0} x^k = 1/(1-x)`.
    pub fn geometric(len: usize) -> Self {
        PowerSeries::new(vec![1.0; len], len)
    }

    /// `sin(x)/x`.
    pub fn sinc(len: usize) -> Self {
        let mut c = vec![0.0; len];
        let mut term = 1.0;
        for k in (0..len).step_by(2) {
            c[k] = term;
            let kf = k as f64;
            term /= -(kf + 2.0) * (kf + 3.0);
        }
        PowerSeries { coeffs: c }
    }

    /// `cos(x)`.
    pub fn cos(len: usize) -> Self {
        let mut c = vec![0.0; len];
        let mut term = 1.0;
        for k in (0..len).step_by(2) {
            c[k] = term;
            let kf = k as f64;
            term /= -(kf + 1.0) * (kf + 2.0);
        }
        PowerSeries { coeffs: c }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn scale(&self, a: f64) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| a * c).collect(),
        }
    }

    /// `x^k · self`, truncated.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.len();
        let mut c = vec![0.0; n];
        if k < n {
            c[k..].copy_from_slice(&self.coeffs[..n - k]);
        }
        PowerSeries { coeffs: c }
    }

    /// `f(a x)`.
    pub fn rescale_variable(&self, a: f64) -> Self {
        let mut p = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * p;
                p *= a;
                v
            })
            .collect();
        PowerSeries { coeffs }
    }

    pub fn derivative(&self) -> Self {
        let n = self.len();
        let mut c = vec![0.0; n];
        for i in 1..n {
            c[i - 1] = i as f64 * self.coeffs[i];
        }
        PowerSeries { coeffs: c }
    }

    /// `1/self`; the constant coefficient must be nonzero.
    pub fn recip(&self) -> Option<Self> {
        let a0 = self.coeffs[0];
        if a0 == 0.0 {
            return None;
        }
        let n = self.len();
        let mut r = vec![0.0; n];
        r[0] = 1.0 / a0;
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| self.coeffs[j] * r[k - j]).sum();
            r[k] = -s / a0;
        }
        Some(PowerSeries { coeffs: r })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Coefficients of `p(1 - t)` in powers of `t`, for a polynomial `p` given
/// by ascending coefficients.
pub fn reflect_polynomial(p: &[f64]) -> Vec<f64> {
    // p(1 - t) = Σ_k p_k Σ_j C(k, j) (-t)^j
    let mut out = vec![0.0; p.len()];
    for (k, &pk) in p.iter().enumerate() {
        let mut binom = 1.0;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[j] += pk * binom * sign;
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
    }
    out
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-1.0)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.len().min(rhs.len());
        let mut c = vec![0.0; n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                c[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: c }
    }
}
