//! Gamma, log-gamma, reciprocal gamma and digamma for real arguments.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Taylor coefficients of `1/Γ(1+z)` about `z = 0`.
///
/// Twenty-three terms keep the truncation error far below machine
/// precision for `|z| <= 1/2`, which is all the Temme branch of the Bessel
/// routines ever asks for.
const RGAMMA1P: [f64; 23] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
];

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

fn lanczos_sum(x: f64) -> f64 {
    // x is already shifted down by one
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Γ(x) for real `x`, poles at the nonpositive integers.
///
/// Arguments past ~171.6 overflow to `+inf`.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "gamma",
            at: x,
        });
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    if x == x.round() && x <= 23.0 {
        // exact factorials
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm);
    // split the power to avoid overflow of t^(x-1/2) just below the cap
    let half = t.powf(0.5 * (xm + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * a)
}

/// log|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: x,
        });
    }
    if x < 0.5 {
        let s = sin_pi(x).abs();
        return Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    Ok(HALF_LN_2PI + (xm + 0.5) * t.ln() - t + lanczos_sum(xm).ln())
}

/// 1/Γ(x); entire, zero at the nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x.abs() <= 0.5 {
        // 1/Γ(x) = x / Γ(1+x)
        return x * rgamma1p(x);
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// `1/Γ(1+z)` by its Taylor series, for `|z| <= 1/2`.
pub(crate) fn rgamma1p(z: f64) -> f64 {
    debug_assert!(z.abs() <= 0.5 + 1e-12);
    RGAMMA1P.iter().rev().fold(0.0, |acc, c| acc * z + c)
}

/// Temme's auxiliary quantities for `|mu| <= 1/2`:
/// `(gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu))` with
/// `gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu)` and
/// `gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mu2 = mu * mu;
    let mut odd = 0.0;
    let mut even = 0.0;
    let mut p = 1.0;
    for (k, c) in RGAMMA1P.iter().enumerate() {
        if k % 2 == 0 {
            even += c * p;
        } else {
            odd += c * p;
            p *= mu2;
        }
    }
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}

/// ψ(x) = Γ'(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "digamma",
            at: x,
        });
    }
    if x < 0.0 {
        // ψ(1-x) - ψ(x) = π cot(πx)
        let c = PI * (PI * x).cos() / sin_pi(x);
        return Ok(digamma(1.0 - x)? - c);
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let r = 1.0 / (y * y);
    let series = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0
                        - r * (1.0 / 132.0 - r * (691.0 / 32_760.0 - r / 12.0))))));
    Ok(acc + y.ln() - 0.5 / y - series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_relative_eq!(gamma(0.5).unwrap(), 1.772_453_850_905_516, max_relative = 1e-14);
        assert_relative_eq!(gamma(1.5).unwrap(), 0.886_226_925_452_758, max_relative = 1e-14);
        // 1.5 = 0.5 * Γ(0.5) by recurrence
        assert_relative_eq!(
            gamma(1.5).unwrap(),
            0.5 * gamma(0.5).unwrap(),
            max_relative = 1e-14
        );
        assert_relative_eq!(gamma(10.0).unwrap(), 362_880.0, max_relative = 1e-15);
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn gamma_matches_factorials_through_30() {
        let mut f = 1.0_f64;
        for n in 1..30 {
            f *= n as f64;
            let g = gamma(n as f64 + 1.0).unwrap();
            assert_relative_eq!(g, f, max_relative = 1e-13);
        }
        // half-integers against the double factorial closed form
        let mut h = PI.sqrt();
        for n in 0..28 {
            let x = n as f64 + 0.5;
            assert_relative_eq!(gamma(x).unwrap(), h, max_relative = 1e-13);
            h *= x;
        }
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert!(matches!(gamma(x), Err(Error::Pole { .. })));
            assert!(matches!(digamma(x), Err(Error::Pole { .. })));
            assert_eq!(rgamma(x), 0.0);
        }
    }

    #[test]
    fn ln_gamma_consistent_with_gamma() {
        for &x in &[0.1, 0.7, 1.3, 2.5, 7.25, 19.0, 29.9, -0.3, -2.5] {
            let g = gamma(x).unwrap();
            assert_relative_eq!(ln_gamma(x).unwrap(), g.abs().ln(), epsilon = 1e-13, max_relative = 1e-13);
        }
        assert_relative_eq!(
            ln_gamma(200.0).unwrap(),
            857.933_669_825_857_5,
            max_relative = 1e-14
        );
    }

    #[test]
    fn digamma_examples() {
        assert_relative_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, max_relative = 1e-14);
        assert_relative_eq!(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, max_relative = 1e-14);
        // duplication: ψ(1/2) = -γ - 2 log 2
        assert_relative_eq!(
            digamma(0.5).unwrap(),
            -EULER_GAMMA - 2.0 * 2f64.ln(),
            max_relative = 1e-13
        );
        assert_relative_eq!(digamma(0.5).unwrap(), -1.963_510_026_021_423_5, max_relative = 1e-13);
    }

    #[test]
    fn digamma_against_log_gamma_derivative() {
        for &x in &[0.3, 1.7, 4.2, 12.5, -0.4] {
            let h = 1e-5;
            let fd = (ln_gamma(x + h).unwrap() - ln_gamma(x - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(digamma(x).unwrap(), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn temme_gammas_match_direct_gamma() {
        for &mu in &[-0.5, -0.31, -0.05, 0.01, 0.2, 0.5] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            let gp_ref = 1.0 / gamma(1.0 + mu).unwrap();
            let gm_ref = 1.0 / gamma(1.0 - mu).unwrap();
            assert_relative_eq!(gp, gp_ref, max_relative = 1e-14);
            assert_relative_eq!(gm, gm_ref, max_relative = 1e-14);
            assert_relative_eq!(g2, 0.5 * (gm_ref + gp_ref), max_relative = 1e-14);
            assert_relative_eq!(g1, (gm_ref - gp_ref) / (2.0 * mu), max_relative = 1e-11);
        }
        let (g1, g2, _, _) = temme_gammas(0.0);
        assert_relative_eq!(g1, -EULER_GAMMA, max_relative = 1e-15);
        assert_eq!(g2, 1.0);
    }

    #[test]
    fn rgamma_near_zero() {
        assert_relative_eq!(rgamma(1e-8), 1e-8 * (1.0 + EULER_GAMMA * 1e-8), max_relative = 1e-15);
        assert_relative_eq!(rgamma(0.3), 1.0 / gamma(0.3).unwrap(), max_relative = 1e-14);
        assert_relative_eq!(rgamma(4.0), 1.0 / 6.0, max_relative = 1e-15);
    }
}
