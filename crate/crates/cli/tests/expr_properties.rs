use proptest::prelude::*;
use sldet_cli::expr::{parse_expr, Expr};

fn arb_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..100).prop_map(|n| n.to_string()),
        (1u32..1000).prop_map(|n| format!("{}.{}", n / 100, n % 100)),
        Just("x".to_string()),
        Just("pi".to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), prop::sample::select(vec!["+", "-", "*", "/", "^"]))
                .prop_map(|(a, b, op)| format!("{a} {op} {b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (inner, prop::sample::select(vec!["sin", "cos", "exp", "abs", "sinh"]))
                .prop_map(|(a, f)| format!("{f}({a})")),
        ]
    })
}

fn same(a: Result<f64, impl std::fmt::Debug>, b: Result<f64, impl std::fmt::Debug>) -> bool {
    match (a, b) {
        (Ok(a), Ok(b)) => a == b || (a.is_infinite() && a == b),
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_and_reparsing_preserves_the_tree(src in arb_expr()) {
        let e = parse_expr(&src).unwrap();
        let again: Expr = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(&again, &e);
    }

    #[test]
    fn printed_form_evaluates_the_same(src in arb_expr(), x in -2.0f64..2.0) {
        let e = parse_expr(&src).unwrap();
        let again = parse_expr(&e.to_string()).unwrap();
        prop_assert!(same(e.eval(x), again.eval(x)));
    }

    #[test]
    fn arithmetic_precedence(a in -50i32..50, b in -50i32..50, c in 1i32..6, x in -3.0f64..3.0) {
        let (af, bf, cf) = (a as f64, b as f64, c as f64);
        let at = |s: String| parse_expr(&s).unwrap().eval(x).unwrap();
        prop_assert_eq!(at(format!("{a} + {b} * x")), af + bf * x);
        prop_assert_eq!(at(format!("{a} - x ^ {c}")), af - x.powf(cf));
        prop_assert_eq!(at(format!("-x ^ {c}")), -(x.powf(cf)));
        prop_assert_eq!(at(format!("({a} - {b}) / {c}")), (af - bf) / cf);
        prop_assert_eq!(at(format!("{a} * x - {b} * x")), af * x - bf * x);
    }

    #[test]
    fn truncated_input_reports_an_offset_inside_it(src in arb_expr(), cut in 0usize..40) {
        let cut = cut.min(src.len());
        if let Err(e) = parse_expr(&src[..cut]) {
            prop_assert!(e.offset <= cut);
        }
    }
}
