//! Bessel functions of real order `nu >= 0` and positive real argument.
//!
//! `I_nu`, `K_nu` (and their derivatives) come from Temme's series for
//! `x < 2` and Steed's continued fraction for `x >= 2`, with `I_nu`
//! recovered from the Wronskian. The same pair of continued fractions,
//! in oscillatory form, gives `J_nu` for the zero finder.
//!
//! The plain ascending series and the Hankel large-argument expansion are
//! kept as separate entry points; they are the independent checks the
//! tests hold the main routines against.

use std::f64::consts::PI;

use super::gamma::{gamma, rgamma, temme_gammas};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const TEMME_XMIN: f64 = 2.0;
const HANKEL_XMIN: f64 = 500.0;

/// Unscaled `I_nu`/`K_nu` overflow past this argument.
pub const OVERFLOW_CAP: f64 = 700.0;

/// Values of `I_nu`, `K_nu` and their derivatives at one point.
///
/// When produced by [`bessel_ik_scaled`], `i` and `ip` carry a factor
/// `exp(-x)` and `k`, `kp` a factor `exp(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselIK {
    pub i: f64,
    pub k: f64,
    pub ip: f64,
    pub kp: f64,
}

fn check_args(function: &'static str, nu: f64, x: f64) -> Result<()> {
    if !(nu >= 0.0) {
        return Err(Error::domain(function, format!("order {nu} must be >= 0")));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(function, format!("argument {x} must be > 0")));
    }
    Ok(())
}

/// `I_nu(x)`, `K_nu(x)` and derivatives, exponentially scaled.
pub fn bessel_ik_scaled(nu: f64, x: f64) -> Result<BesselIK> {
    check_args("bessel_ik", nu, x)?;
    if x >= HANKEL_XMIN.max(nu * nu) {
        // the Hankel remainder is O(exp(-2x)) here, and CF1 would need O(x)
        // iterations
        return bessel_ik_asymptotic(nu, x);
    }
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1: I'_nu / I_nu by modified Lentz
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { spread: h, tol: EPS });
    }

    // downward recurrence to order xmu, in unnormalized units
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let rip1 = ripl;
    let mut fact = nu * xi;
    for _ in (1..=nl).rev() {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    let (rkmu, rk1, scale);
    if x < TEMME_XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut cc = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * ff;
            sum += del;
            let del1 = cc * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence { spread: sum, tol: EPS });
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
        scale = x.exp();
    } else {
        // CF2 (Steed), result carries exp(x)
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut ok = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence { spread: s, tol: EPS });
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
        scale = 1.0;
    }
    // rkmu, rk1 are K scaled by `scale` relative to exp(x) scaling:
    // true K = rkmu * exp(-x) * scale
    let kscale = scale; // multiply to get K * exp(x)
    let rkmu_s = rkmu * kscale;
    let rk1_s = rk1 * kscale;
    let rkmup = xmu * xi * rkmu_s - rk1_s;
    // Wronskian I K' - I' K = -1/x, in scaled units
    let rimu = xi / (f * rkmu_s - rkmup);
    let ri = rimu * ril1 / ril;
    let rip = rimu * rip1 / ril;
    let mut kmu = rkmu_s;
    let mut k1 = rk1_s;
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = rktemp;
    }
    let rk = kmu;
    let rkp = nu * xi * kmu - k1;
    Ok(BesselIK {
        i: ri,
        k: rk,
        ip: rip,
        kp: rkp,
    })
}

/// `I_nu(x)`, `K_nu(x)` and derivatives, unscaled.
pub fn bessel_ik(nu: f64, x: f64) -> Result<BesselIK> {
    if x > OVERFLOW_CAP {
        return Err(Error::Overflow {
            function: "bessel_ik",
            x,
            cap: OVERFLOW_CAP,
        });
    }
    let s = bessel_ik_scaled(nu, x)?;
    let e = x.exp();
    Ok(BesselIK {
        i: s.i * e,
        ip: s.ip * e,
        k: s.k / e,
        kp: s.kp / e,
    })
}

/// Modified Bessel function of the first kind `I_nu(x)`.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_ik(nu, x)?.i)
}

/// Modified Bessel function of the second kind `K_nu(x)`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_ik(nu, x)?.k)
}

/// Ascending series `sum (x/2)^(2k+nu) / (k! Γ(k+nu+1))`.
///
/// All terms are positive, so this is accurate wherever it does not
/// overflow; it is slow for large `x`.
pub fn bessel_i_series(nu: f64, x: f64) -> Result<f64> {
    check_args("bessel_i_series", nu, x)?;
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    let mut sum = term;
    for k in 1..10_000 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    Ok(sum)
}

/// Truncated Hankel sums `(Σ (-1)^k a_k(ν)/x^k, Σ a_k(ν)/x^k)`, stopped at
/// the smallest term.
fn hankel_sums(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut ak = 1.0;
    let mut si = 1.0;
    let mut sk = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        ak *= (mu - odd * odd) / (kf * 8.0 * x);
        if ak.abs() >= prev || ak == 0.0 {
            break;
        }
        prev = ak.abs();
        si += if k % 2 == 1 { -ak } else { ak };
        sk += ak;
    }
    (si, sk)
}

/// Hankel large-argument expansions of `I_nu`, `K_nu` and their
/// derivatives, truncated at the smallest term and scaled as in
/// [`bessel_ik_scaled`].
pub fn bessel_ik_asymptotic(nu: f64, x: f64) -> Result<BesselIK> {
    check_args("bessel_ik_asymptotic", nu, x)?;
    let ci = 1.0 / (2.0 * PI * x).sqrt();
    let ck = (PI / (2.0 * x)).sqrt();
    let (si0, sk0) = hankel_sums(nu, x);
    let (si1, sk1) = hankel_sums(nu + 1.0, x);
    let (i0, k0) = (si0 * ci, sk0 * ck);
    let (i1, k1) = (si1 * ci, sk1 * ck);
    Ok(BesselIK {
        i: i0,
        k: k0,
        ip: i1 + nu / x * i0,
        kp: -k1 + nu / x * k0,
    })
}

/// `J_nu(x)` and `J'_nu(x)`.
pub fn bessel_j(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_args("bessel_j", nu, x)?;
    let nl = if x < TEMME_XMIN {
        (nu + 0.5).floor() as usize
    } else {
        (nu - x + 1.5).floor().max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { spread: h, tol: EPS });
    }
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in (1..=nl).rev() {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let rjmu;
    if x < TEMME_XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence { spread: sum, tol: EPS });
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a += 2.0 * (fi - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NonConvergence { spread: p, tol: EPS });
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
    }
    let scale = rjmu / rjl;
    Ok((rjl1 * scale, rjp1 * scale))
}

/// McMahon's large-zero expansion for the `n`-th positive zero of `J_nu`.
fn mcmahon(nu: f64, n: usize) -> f64 {
    let beta = (n as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

/// Safeguarded Newton on a bracket `[a, b]` with `J(a) J(b) < 0`.
fn refine_zero(nu: f64, mut a: f64, mut b: f64, guess: f64) -> Result<f64> {
    let mut fa = bessel_j(nu, a)?.0;
    let mut x = if guess > a && guess < b { guess } else { 0.5 * (a + b) };
    for _ in 0..200 {
        let (fx, dfx) = bessel_j(nu, x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let newton = x - fx / dfx;
        let next = if newton > a && newton < b && dfx != 0.0 {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - x).abs() <= 1e-15 * x.max(1.0) || b - a <= 1e-14 * x.max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// The first `count` positive zeros of `J_nu`, in increasing order.
///
/// Zeros are bracketed by a forward scan whose step is below the minimal
/// zero spacing (so no zero is skipped) and refined by Newton from the
/// McMahon estimate.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    if !(nu >= 0.0) {
        return Err(Error::domain("bessel_j_zeros", format!("order {nu} must be >= 0")));
    }
    let step = 0.5;
    let mut zeros = Vec::with_capacity(count);
    let mut a = nu.max(0.5) * 0.9 + 1e-3;
    let mut fa = bessel_j(nu, a)?.0;
    while zeros.len() < count {
        let b = a + step;
        let fb = bessel_j(nu, b)?.0;
        if fb == 0.0 {
            zeros.push(b);
            a = b + 1e-9;
            fa = bessel_j(nu, a)?.0;
            continue;
        }
        if (fa < 0.0) != (fb < 0.0) {
            let guess = mcmahon(nu, zeros.len() + 1);
            zeros.push(refine_zero(nu, a, b, guess)?);
        }
        a = b;
        fa = fb;
    }
    Ok(zeros)
}

/// The `n`-th positive zero `j_{nu,n}` of `J_nu` (`n >= 1`).
pub fn bessel_j_zero(nu: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("bessel_j_zero", "zero index starts at 1"));
    }
    Ok(*bessel_j_zeros(nu, n)?.last().expect("n >= 1"))
}

/// Leading small-argument constant `c` in `I_nu(x) ~ c x^nu`.
pub fn bessel_i_small_arg_constant(nu: f64) -> Result<f64> {
    Ok(1.0 / (2f64.powf(nu) * gamma(nu + 1.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn i_half(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * x.sinh()
    }
    fn k_half(x: f64) -> f64 {
        (PI / (2.0 * x)).sqrt() * (-x).exp()
    }
    fn i_three_halves(x: f64) -> f64 {
        (2.0 / (PI * x)).sqrt() * (x.cosh() - x.sinh() / x)
    }
    fn k_three_halves(x: f64) -> f64 {
        (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x)
    }

    #[test]
    fn half_integer_closed_forms() {
        assert!((bessel_i(0.5, 2.0).unwrap() - 2.046_236_863_0).abs() < 5e-10);
        assert!((bessel_k(0.5, 2.0).unwrap() - 0.119_937_772_0).abs() < 5e-11);
        for &x in &[0.01, 0.3, 1.0, 1.99, 2.0, 5.0, 13.0, 35.0, 50.0] {
            assert_relative_eq!(bessel_i(0.5, x).unwrap(), i_half(x), max_relative = 1e-12);
            assert_relative_eq!(bessel_k(0.5, x).unwrap(), k_half(x), max_relative = 1e-12);
            assert_relative_eq!(bessel_i(1.5, x).unwrap(), i_three_halves(x), max_relative = 1e-10);
            assert_relative_eq!(bessel_k(1.5, x).unwrap(), k_three_halves(x), max_relative = 1e-12);
        }
    }

    #[test]
    fn agrees_with_ascending_series() {
        for &nu in &[0.0, 0.3, 1.0, 1.7, 2.5, 7.2] {
            for &x in &[1e-3, 0.2, 1.0, 3.0, 8.0, 20.0, 50.0] {
                let s = bessel_i_series(nu, x).unwrap();
                assert_relative_eq!(bessel_i(nu, x).unwrap(), s, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn agrees_with_hankel_expansion_at_large_argument() {
        for &nu in &[0.0, 0.4, 1.0, 2.5] {
            for &x in &[30.0, 60.0, 200.0, 2000.0] {
                let a = bessel_ik_asymptotic(nu, x).unwrap();
                let s = bessel_ik_scaled(nu, x).unwrap();
                assert_relative_eq!(s.i, a.i, max_relative = 1e-12);
                assert_relative_eq!(s.k, a.k, max_relative = 1e-12);
                assert_relative_eq!(s.ip, a.ip, max_relative = 1e-12);
                assert_relative_eq!(s.kp, a.kp, max_relative = 1e-12);
            }
        }
        let far = bessel_ik_scaled(1.0, 1e20).unwrap();
        assert_relative_eq!(1e20 * far.i * far.k, 0.5, max_relative = 1e-14);
    }

    #[test]
    fn small_argument_behaviour() {
        for &nu in &[0.0, 0.5, 1.0, 2.3] {
            let c = bessel_i_small_arg_constant(nu).unwrap();
            let x = 1e-6;
            assert_relative_eq!(bessel_i(nu, x).unwrap() / x.powf(nu), c, max_relative = 1e-9);
        }
        // K_0(x) ~ -log x: the ratio tends to 1 slowly (log correction)
        let r = |x: f64| bessel_k(0.0, x).unwrap() * (-1.0 / x.ln());
        assert!((r(1e-8) - 1.0).abs() < (r(1e-4) - 1.0).abs());
        assert!((r(1e-100) - 1.0).abs() < 1e-2);
        // x I K -> 1/2
        let p = |x: f64| {
            let s = bessel_ik_scaled(1.3, x).unwrap();
            x * s.i * s.k
        };
        assert!((p(1e4) - 0.5).abs() < 1e-4);
        assert!((p(1e4) - 0.5).abs() < (p(1e2) - 0.5).abs());
    }

    #[test]
    fn wronskian_identity() {
        for &nu in &[0.0, 0.25, 0.5, 1.0, 3.7] {
            for &x in &[0.05, 0.9, 1.999, 2.001, 7.0, 40.0] {
                let b = bessel_ik(nu, x).unwrap();
                let w = b.i * b.kp - b.ip * b.k;
                assert_relative_eq!(w, -1.0 / x, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn overflow_and_domain_errors() {
        assert!(matches!(bessel_i(0.0, 800.0), Err(Error::Overflow { .. })));
        assert!(bessel_ik_scaled(0.0, 800.0).is_ok());
        assert!(matches!(bessel_i(-1.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_k(1.0, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn j_half_closed_form() {
        for &x in &[0.1, 1.5, 2.5, 10.0, 100.0] {
            let (j, jp) = bessel_j(0.5, x).unwrap();
            let c = (2.0 / (PI * x)).sqrt();
            assert_relative_eq!(j, c * x.sin(), max_relative = 1e-11, epsilon = 1e-14);
            assert_relative_eq!(jp, c * (x.cos() - x.sin() / (2.0 * x)), max_relative = 1e-11, epsilon = 1e-14);
        }
    }

    /// Alternating ascending series for J, used only for moderate x.
    fn j_series(nu: f64, x: f64) -> f64 {
        let q = -0.25 * x * x;
        let mut term = (0.5 * x).powf(nu) * rgamma(nu + 1.0);
        let mut sum = term;
        for k in 1..200 {
            let kf = k as f64;
            term *= q / (kf * (kf + nu));
            sum += term;
        }
        sum
    }

    #[test]
    fn j_agrees_with_series() {
        for &nu in &[0.0, 0.3, 1.0, 2.5] {
            for &x in &[0.5, 1.9, 2.1, 4.0, 6.0] {
                assert_relative_eq!(bessel_j(nu, x).unwrap().0, j_series(nu, x), epsilon = 1e-13);
            }
        }
    }

    /// Bisection on the alternating series; an oracle that shares nothing
    /// with the continued fractions.
    fn bisect_series_zero(nu: f64, mut a: f64, mut b: f64) -> f64 {
        let fa0 = j_series(nu, a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if (j_series(nu, m) < 0.0) == (fa0 < 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn j_zero_examples() {
        let z01 = bisect_series_zero(0.0, 2.0, 3.0);
        assert_relative_eq!(z01, 2.404_825_557_695_773, epsilon = 1e-12);
        assert!((bessel_j_zero(0.0, 1).unwrap() - z01).abs() < 1e-10);
        let z11 = bisect_series_zero(1.0, 3.5, 4.0);
        assert!((bessel_j_zero(1.0, 1).unwrap() - z11).abs() < 1e-10);
        assert!((bessel_j_zero(1.0, 1).unwrap() - 3.831_705_970_207_512).abs() < 1e-10);
        for n in 1..=20 {
            assert!((bessel_j_zero(0.5, n).unwrap() - n as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn j_zeros_monotone_and_weyl_like() {
        for &nu in &[0.0, 0.7, 1.0] {
            let z = bessel_j_zeros(nu, 50).unwrap();
            assert!(z.windows(2).all(|w| w[1] > w[0] + 2.0));
            let ratio = z[49] / (50.0 * PI);
            assert!((ratio - 1.0).abs() < 0.01, "nu={nu} ratio={ratio}");
        }
        // j_{nu,n} ~ (n + nu/2 - 1/4)π, so the ratio settles like 1/n
        let z = bessel_j_zeros(2.5, 400).unwrap();
        let err = |n: usize| (z[n - 1] / (n as f64 * PI) - 1.0).abs();
        assert!(err(400) < err(50) / 7.0);
        let z0 = bessel_j_zeros(0.0, 3).unwrap();
        assert!((z0[1] - 5.520_078_110_286_311).abs() < 1e-10);
        assert!((z0[2] - 8.653_727_912_911_013).abs() < 1e-10);
    }
}
