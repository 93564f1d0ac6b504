use proptest::prelude::*;
use sldet::ode::{wronskian, BoundaryKind, Endpoint, EndpointExpansion, NormalizedSolution, PotentialSpec};

const DRIFT_POINTS: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];

/// q = 1 + x², regular at both ends.
fn smooth_potential() -> PotentialSpec {
    let l = EndpointExpansion::new(Endpoint::Left, 1, vec![0.0, 0.0, 1.0, 0.0, 1.0]).unwrap();
    // t² (1 + (1 - t)²) = 2t² - 2t³ + t⁴
    let r = EndpointExpansion::new(Endpoint::Right, 1, vec![0.0, 0.0, 2.0, -2.0, 1.0]).unwrap();
    PotentialSpec::new(l, r, |x| 1.0 + x * x).unwrap()
}

fn pair(p: &PotentialSpec, left: BoundaryKind, right: BoundaryKind, z: f64) -> (NormalizedSolution, NormalizedSolution) {
    let phi = NormalizedSolution::new(p, Endpoint::Left, left, z).unwrap();
    let psi = NormalizedSolution::new(p, Endpoint::Right, right, z).unwrap();
    (psi, phi)
}

fn max_drift(psi: &NormalizedSolution, phi: &NormalizedSolution) -> f64 {
    let w: Vec<f64> = DRIFT_POINTS.iter().map(|&x| wronskian(psi, phi, x).unwrap()).collect();
    let mid = w[2];
    w.iter().map(|v| (v - mid).abs() / mid.abs()).fold(0.0, f64::max)
}

#[test]
fn wronskian_is_constant() {
    let cases = [
        (smooth_potential(), BoundaryKind::Dirichlet, BoundaryKind::Dirichlet, 0.0),
        (smooth_potential(), BoundaryKind::Neumann(1.0), BoundaryKind::Dirichlet, 3.0),
        (PotentialSpec::bessel_model(1.3, 60).unwrap(), BoundaryKind::Friedrichs, BoundaryKind::Dirichlet, 2.0),
        (PotentialSpec::bessel_model(0.0, 60).unwrap(), BoundaryKind::Friedrichs, BoundaryKind::Dirichlet, -9.0),
    ];
    for (p, l, r, z) in cases {
        let (psi, phi) = pair(&p, l, r, z);
        let drift = max_drift(&psi, &phi);
        assert!(drift <= 1e-8, "{l:?}/{r:?} z={z}: drift {drift:e}");
    }
}

#[test]
fn series_agrees_with_integration_past_the_handoff() {
    let p = PotentialSpec::bessel_model(0.8, 80).unwrap();
    for end in [Endpoint::Left, Endpoint::Right] {
        let kind = if end == Endpoint::Left { BoundaryKind::Friedrichs } else { BoundaryKind::Dirichlet };
        let s = NormalizedSolution::new(&p, end, kind, 1.5).unwrap();
        let d = 1.2 * s.seed().handoff();
        let series = s.seed().eval(d);
        let integrated = s.eval(end.point_at(d)).unwrap();
        for i in 0..2 {
            let rel = (series[i] - integrated[i]).abs() / series[i].abs();
            assert!(rel <= 1e-9, "{end:?} component {i}: {rel:e}");
        }
    }
}

#[test]
fn large_shift_moves_the_handoff_inward() {
    let p = PotentialSpec::zero();
    let s = NormalizedSolution::new(&p, Endpoint::Left, BoundaryKind::Dirichlet, 400.0).unwrap();
    assert!(s.seed().handoff() <= 0.5 / 20.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn residual_is_small(nu in 0.0f64..2.5, z in -20.0f64..20.0, x in 0.15f64..0.85) {
        let p = PotentialSpec::bessel_model(nu, 80).unwrap();
        let s = NormalizedSolution::new(&p, Endpoint::Left, BoundaryKind::Friedrichs, z).unwrap();
        let [f, _] = s.eval(x).unwrap();
        let central = |h: f64| (s.eval(x + h).unwrap()[1] - s.eval(x - h).unwrap()[1]) / (2.0 * h);
        // Richardson step: the O(h²) error of a plain difference is ~1e-7 near x = 0.15
        let fpp = (4.0 * central(5e-4) - central(1e-3)) / 3.0;
        let rhs = (p.q(x) + z) * f;
        let scale = fpp.abs().max(f.abs());
        prop_assert!((fpp - rhs).abs() <= 1e-7 * scale, "residual {:e}", (fpp - rhs).abs() / scale);
    }

    #[test]
    fn drift_stays_small_for_models(nu in 0.0f64..3.0, z in -5.0f64..30.0) {
        let p = PotentialSpec::bessel_model(nu, 80).unwrap();
        let (psi, phi) = pair(&p, BoundaryKind::Friedrichs, BoundaryKind::Dirichlet, z);
        let drift = max_drift(&psi, &phi);
        prop_assert!(drift <= 1e-8, "drift {drift:e}");
    }
}
