use std::f64::consts::PI;

use proptest::prelude::*;
use sldet::regularize::{
    mellin_constant_term, pf_integral, pf_integral_01_monomial, pf_integral_1inf_monomial,
    AsymptoticExpansion, RegularizableFunction, Side, Term,
};
use sldet::specfun::{bessel_ik_scaled, gamma};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

type Evaluator = Box<dyn Fn(f64) -> f64 + Send + Sync>;

struct Case {
    name: &'static str,
    f: RegularizableFunction<Evaluator>,
    expected: f64,
}

fn at_zero(terms: &[(f64, f64, u32)]) -> AsymptoticExpansion {
    let terms = terms.iter().map(|&(a, e, k)| Term::new(a, e, k)).collect();
    AsymptoticExpansion::new(Side::AtZero, terms).unwrap()
}

fn at_inf(terms: &[(f64, f64, u32)]) -> AsymptoticExpansion {
    let terms = terms.iter().map(|&(a, e, k)| Term::new(a, e, k)).collect();
    AsymptoticExpansion::new(Side::AtInfinity, terms).unwrap()
}

fn case(name: &'static str, f: Evaluator, zero: &[(f64, f64, u32)], inf: &[(f64, f64, u32)], expected: f64) -> Case {
    Case {
        name,
        f: RegularizableFunction::new(f, at_zero(zero), at_inf(inf)).unwrap(),
        expected,
    }
}

/// The closed Mellin form of `∫ x^s I_ν K_ν` at `(s, ν) = (1/2, 1)`.
fn i1k1_closed() -> f64 {
    let s = 0.5;
    let nu = 1.0;
    gamma((s + 1.0) / 2.0 + nu).unwrap() * gamma(-s / 2.0).unwrap() * gamma((s + 1.0) / 2.0).unwrap()
        / (4.0 * PI.sqrt() * gamma(s / 2.0 + 1.0).unwrap())
}

fn corpus() -> Vec<Case> {
    vec![
        case("exp", Box::new(|x: f64| (-x).exp()), &[], &[], 1.0),
        case("rational", Box::new(|x: f64| 1.0 / (1.0 + x)), &[], &[(1.0, -1.0, 0)], 0.0),
        case(
            "exp_power",
            Box::new(|x: f64| (-x).exp() * x.powf(-1.5)),
            &[(1.0, -1.5, 0), (-1.0, -0.5, 0)],
            &[],
            -2.0 * PI.sqrt(),
        ),
        case("exp_log", Box::new(|x: f64| (-x).exp() * x.ln()), &[(1.0, 0.0, 1)], &[], -EULER_GAMMA),
        case(
            "truncated_pole",
            Box::new(|x: f64| if x <= 1.0 { 1.0 / x } else { 0.0 }),
            &[(1.0, -1.0, 0)],
            &[],
            0.0,
        ),
        case(
            "bessel_product",
            Box::new(|x: f64| {
                let b = bessel_ik_scaled(1.0, x).unwrap();
                x.sqrt() * b.i * b.k
            }),
            &[],
            &[(0.5, -0.5, 0)],
            i1k1_closed(),
        ),
    ]
}

#[test]
fn bessel_product_closed_form_value() {
    assert!((i1k1_closed() + 0.859_046_415_031_513_9).abs() < 1e-13);
}

#[test]
fn corpus_partie_finie_values() {
    for c in corpus() {
        let v = pf_integral(&c.f).unwrap();
        assert!((v - c.expected).abs() < 1e-7, "{}: {v} vs {}", c.name, c.expected);
    }
}

#[test]
fn mellin_and_hadamard_definitions_agree() {
    for c in corpus() {
        let h = pf_integral(&c.f).unwrap();
        let m = mellin_constant_term(&c.f).unwrap();
        assert!((h - m).abs() < 1e-6, "{}: hadamard {h} mellin {m}", c.name);
    }
}

#[test]
fn global_monomials_have_zero_partie_finie() {
    for &alpha in &[-3.0, -2.0, -1.0, -0.5, 0.0, 1.0] {
        for k in 0..=2 {
            let total = pf_integral_01_monomial(alpha, k) + pf_integral_1inf_monomial(alpha, k);
            assert_eq!(total, 0.0);
        }
    }
}

/// `∫ x^α log^k x = x^(α+1) Σ_j c_j log^(k-j) x`, as `(c_j, k-j)` pairs.
fn antiderivative_terms(alpha: f64, k: u32) -> Vec<(f64, u32)> {
    let b = alpha + 1.0;
    let mut falling = 1.0;
    (0..=k)
        .map(|j| {
            if j > 0 {
                falling *= (k - j + 1) as f64;
            }
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            (sign * falling / b.powi(j as i32 + 1), k - j)
        })
        .collect()
}

#[test]
fn monomials_match_regularized_lower_limit() {
    for &alpha in &[-3.0, -2.0, -0.5, 0.0, 1.0] {
        for k in 0..=2u32 {
            let parts = antiderivative_terms(alpha, k);
            let b = alpha + 1.0;
            let antiderivative = |x: f64| -> f64 {
                parts.iter().map(|&(c, p)| c * x.powf(b) * x.ln().powi(p as i32)).sum()
            };
            // the a-dependent part of ∫_a^1 is -antiderivative(a)
            let expansion = if b < 0.0 {
                AsymptoticExpansion::new(
                    Side::AtZero,
                    parts.iter().map(|&(c, p)| Term::new(-c, b, p)).collect(),
                )
                .unwrap()
            } else {
                AsymptoticExpansion::empty(Side::AtZero)
            };
            let lim = sldet::regularize::reg_lim(|a: f64| antiderivative(1.0) - antiderivative(a), &expansion).unwrap();
            let closed = pf_integral_01_monomial(alpha, k);
            assert!((lim - closed).abs() < 1e-9 * closed.abs().max(1.0), "α={alpha} k={k}: {lim} vs {closed}");
        }
    }
}

#[test]
fn smooth_integrand_matches_plain_quadrature() {
    let f = RegularizableFunction::new(
        |x: f64| 1.0 / (1.0 + x * x),
        AsymptoticExpansion::empty(Side::AtZero),
        AsymptoticExpansion::empty(Side::AtInfinity),
    )
    .unwrap();
    assert!((pf_integral(&f).unwrap() - PI / 2.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partie_finie_is_linear(i in 0usize..6, j in 0usize..6, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let cases = corpus();
        let cases_again = corpus();
        let (fi, fj) = (&cases[i].f, &cases_again[j].f);
        let combined = RegularizableFunction::new(
            |x: f64| a * fi.eval(x) + b * fj.eval(x),
            fi.at_zero.combine(a, &fj.at_zero, b).unwrap(),
            fi.at_infinity.combine(a, &fj.at_infinity, b).unwrap(),
        )
        .unwrap();
        let lhs = pf_integral(&combined).unwrap();
        let rhs = a * pf_integral(fi).unwrap() + b * pf_integral(fj).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8 * (1.0 + a.abs() + b.abs()), "{lhs} vs {rhs}");
    }
}
