use moebius_ortho::applications::bessel::{bessel_gate, bessel_orthogonality_check};
use moebius_ortho::applications::romanovski::{romanovski_finite_real_check, romanovski_real_gate};
use moebius_ortho::cli::config::RunConfig;
use moebius_ortho::polynomial::{leading_coefficient_prediction, moebius_transform, recover_original};
use moebius_ortho::quadrature::QuadratureScheme;
use moebius_ortho::{CheckStatus, ComplexPoly, FamilySpec, MoebiusMap, TransformedSequence, C64};
use proptest::prelude::*;

fn c64() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn map() -> impl Strategy<Value = MoebiusMap> {
    (c64(), c64(), c64(), c64())
        .prop_filter("well-conditioned", |(a, b, c, d)| (a * d - b * c).norm() > 0.5)
        .prop_map(|(a, b, c, d)| MoebiusMap::new(a, b, c, d).unwrap())
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::hermite()),
        Just(FamilySpec::chebyshev()),
        (-0.9..3.0f64).prop_map(FamilySpec::laguerre),
        (-0.9..2.0f64, -0.9..2.0f64).prop_map(|(a, b)| FamilySpec::jacobi(a, b)),
    ]
}

fn poly(max_deg: usize) -> impl Strategy<Value = ComplexPoly> {
    prop::collection::vec(c64(), 1..=max_deg + 1).prop_map(ComplexPoly::new)
}

/// Keeps sample points clear of the pole so Q_n and u^n stay comparable.
fn away_from_pole(m: &MoebiusMap, x: C64) -> bool {
    m.denom(x).norm() > 0.3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_undoes_map(m in map(), z in c64()) {
        prop_assume!(away_from_pole(&m, z));
        let w = m.eval(z).unwrap();
        prop_assume!(m.inverse().denom(w).norm() > 0.3);
        let back = m.inverse().eval(w).unwrap();
        prop_assert!((back - z).norm() < 1e-10 * (1.0 + z.norm()));
    }

    #[test]
    fn compose_matches_sequential_application(m1 in map(), m2 in map(), z in c64()) {
        prop_assume!(away_from_pole(&m2, z));
        let y = m2.eval(z).unwrap();
        prop_assume!(m1.denom(y).norm() > 0.3);
        let lhs = m1.compose(&m2).eval(z).unwrap();
        let rhs = m1.eval(y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn transform_then_recover(p in poly(6), m in map()) {
        let n = p.degree().max(0) as usize;
        let q = moebius_transform(&p, &m, n).unwrap();
        let back = recover_original(&q, &m, n).unwrap();
        prop_assert!(back.relative_distance(&p) < 1e-9);
    }

    #[test]
    fn leading_coefficient_matches_prediction(p in poly(6), m in map()) {
        let n = p.degree().max(0) as usize;
        let q = moebius_transform(&p, &m, n).unwrap();
        let lead = leading_coefficient_prediction(&p, &m);
        let scale = q.max_abs().max(lead.norm());
        prop_assume!(lead.norm() > 1e-6 * scale);
        prop_assert_eq!(q.degree(), n as isize);
        prop_assert!((q.leading() - lead).norm() < 1e-10 * scale);
    }

    #[test]
    fn recurrence_agrees_with_composition(fam in family(), m in map()) {
        let seq = TransformedSequence::build(&fam, &m, 12).unwrap();
        for n in 0..=12 {
            prop_assert!(seq.dual_construction_error(n).unwrap() < 1e-11);
        }
    }

    #[test]
    fn transformed_ode_and_pearson_hold(fam in family(), m in map(), x in c64()) {
        prop_assume!(away_from_pole(&m, x));
        let seq = TransformedSequence::build(&fam, &m, 8).unwrap();
        for n in 0..=8 {
            prop_assert!(seq.ode_residual(n, x).relative() < 1e-9);
        }
        if let Ok(r) = seq.pearson_residual(3, 5, x) {
            prop_assert!(r.relative() < 1e-9);
        }
    }

    #[test]
    fn eval_by_recurrence_matches_coefficients(fam in family(), m in map(), x in c64()) {
        let seq = TransformedSequence::build(&fam, &m, 10).unwrap();
        let (v, _) = seq.eval_q_recurrence(10, x);
        prop_assert!((v - seq.eval_q(10, x)).norm() < 1e-10 * seq.q(10).eval_abs(x).max(1e-300));
    }

    #[test]
    fn config_round_trips(m in map(), n in 0usize..30, seed in any::<u64>(), tol in prop::option::of(1e-14..1e-3f64)) {
        let mut cfg = RunConfig::new("jacobi", m, n);
        cfg.seed = seed;
        cfg.tolerance = tol;
        cfg.params = vec![C64::new(0.5, 0.0), C64::new(-0.25, 0.0)];
        let back = RunConfig::from_json(&cfg.to_json()).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn closed_bessel_gate_is_never_a_failure(m in 0usize..4, n in 0usize..4, gamma in -1.0..3.0f64, beta in -1.0..2.0f64) {
        let (g, b) = (C64::new(gamma, 0.0), C64::new(beta, 0.0));
        prop_assume!(!bessel_gate(m, n, g, b));
        let chk = bessel_orthogonality_check(m, n, g, b, &QuadratureScheme::default(), 1e-8).unwrap();
        prop_assert_eq!(chk.status, CheckStatus::Ungated);
        prop_assert!(chk.status.is_ok());
    }

    #[test]
    fn closed_romanovski_gate_is_never_a_failure(m in 0usize..4, n in 0usize..4, gamma in -1.0..2.0f64, delta in -1.0..1.0f64) {
        prop_assume!(!romanovski_real_gate(m, n, gamma));
        let chk = romanovski_finite_real_check(m, n, gamma, delta, &QuadratureScheme::default()).unwrap();
        prop_assert_eq!(chk.status, CheckStatus::Ungated);
    }
}
