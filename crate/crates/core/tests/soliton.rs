mod common;

use std::collections::BTreeMap;

use common::{ex, geometry, instance, k, q, qq, sym, unit};
use kenmotsu::soliton::{
    classify_regime, classify_torse_forming, conformal_killing, eta_einstein, kappa_symbol, omega_symbol,
    soliton_residual, solve_omega_reeb, solve_omega_trace, solve_omega_torse_forming, specialize_theta,
    theorem_check, theta_symbol, CheckOutcome, ConformalClass, ParamValue, Regime, SolitonError,
    TheoremInputs, TorseOutcome, TorseSubtype, TensorKind, THEOREM_IDS,
};
use kenmotsu::{Expr, Rational, SolitonConvention, SolitonInstance};
use proptest::prelude::*;

fn v5() -> Vec<Expr> {
    common::loaded("kenmotsu5").fields["V"].clone()
}

fn bound(conv: &str, field: Vec<Expr>, kappa: Rational, theta: Rational) -> SolitonInstance {
    let c = SolitonConvention::preset(conv).unwrap();
    let kappa = c.kappa_on_lie.then_some(ParamValue::Value(kappa));
    SolitonInstance::new(c, field, kappa, ParamValue::Value(theta), ParamValue::Symbolic).unwrap()
}

/// Solves `s_l k tr(L_V h) + 2 s_t S + m (a Omega + b theta S) = 0` by hand,
/// with `tr(L_V h) = 16`, `m = 5` and `S = -20` or `-4`.
fn trace_oracle(conv: &SolitonConvention, kappa: &Rational, theta: &Rational) -> Rational {
    let m = q(5);
    let s = match conv.tensor {
        TensorKind::Ricci => q(-20),
        TensorKind::StarRicci => q(-4),
    };
    let kappa = if conv.kappa_on_lie { kappa.clone() } else { q(1) };
    let rest = q(conv.sign_lie as i64) * kappa * q(16)
        + q(2 * conv.sign_tensor as i64) * s.clone()
        + m.clone() * conv.theta_scalar_coeff.clone() * theta * s;
    -rest / (m * conv.omega_coeff.clone())
}

#[test]
fn trace_omega_for_the_main_preset() {
    let (g, _) = geometry("kenmotsu5");
    let omega = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_1_9", v5())).unwrap();
    // 16 kappa - 8 - 10 Omega + 20 theta = 0
    let oracle = &(&(&sym("kappa").scale(&q(16)) - &k(8)) + &sym("theta").scale(&q(20))) * &Expr::constant(qq(1, 10));
    assert_eq!(omega, oracle);
    assert_eq!(omega, ex("-4/5 + 8/5*kappa + 2*theta"));
}

#[test]
fn sign_variant_specialisations() {
    let (g, _) = geometry("kenmotsu5");
    let omega = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_5_7", v5())).unwrap();
    let cases = [(0, "4/5 - 8/5*kappa", qq(1, 2)), (1, "14/5 - 8/5*kappa", qq(7, 4)), (2, "24/5 - 8/5*kappa", q(3))];
    for (theta, want, steady) in cases {
        let s = specialize_theta(&omega, q(theta)).unwrap();
        assert_eq!(s.omega, ex(want), "theta = {theta}");
        assert_eq!(s.steady_kappa, Some(Expr::constant(steady)), "theta = {theta}");
    }
}

#[test]
fn regimes_follow_the_sign_of_omega() {
    let (g, _) = geometry("kenmotsu5");
    let omega = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_5_7", v5())).unwrap();
    let at = |kappa: Rational, theta: Rational| {
        let b = BTreeMap::from([(kappa_symbol(), Expr::constant(kappa)), (theta_symbol(), Expr::constant(theta))]);
        classify_regime(&omega, &b).unwrap()
    };
    assert_eq!(at(q(0), q(0)), Regime::Contracting);
    assert_eq!(at(qq(1, 2), q(0)), Regime::Steady);
    assert_eq!(at(q(1), q(0)), Regime::Growing);
    assert_eq!(classify_regime(&omega, &BTreeMap::new()).unwrap(), Regime::Undetermined);
}

#[test]
fn residual_vanishes_only_at_the_steady_kappa() {
    let (g, _) = geometry("kenmotsu5");
    let omega = solve_omega_trace(&g, &instance("STAR_KAPPA_RBS_1_9", v5())).unwrap();
    for (kappa, zero) in [(qq(1, 2), true), (q(1), false), (q(0), false)] {
        let inst = bound("STAR_KAPPA_RBS_1_9", v5(), kappa.clone(), q(1));
        let b = BTreeMap::from([(kappa_symbol(), Expr::constant(kappa)), (theta_symbol(), k(1))]);
        let omega = omega.substitute_all(b.iter()).unwrap();
        let inst = inst.with_omega(ParamValue::Value(omega.as_constant().unwrap()));
        let r = soliton_residual(&g, &inst).unwrap();
        assert_eq!(r.is_zero(), zero);
        assert!(g.manifold.trace(&r).is_zero());
    }
}

#[test]
fn reeb_omega() {
    let (g, _) = geometry("kenmotsu5");
    let omega = solve_omega_reeb(&g, &instance("STAR_KAPPA_RBS_1_9", v5())).unwrap();
    assert_eq!(omega, sym("theta").scale(&q(2)));
    let (flat, _) = geometry("euclidean3");
    let inst = instance("RICCI_1_2", unit(3, 0));
    assert!(matches!(solve_omega_reeb(&flat, &inst), Err(SolitonError::NotKenmotsu)));
}

#[test]
fn euclidean_certificates() {
    let (g, l) = geometry("euclidean3");
    let radial = l.fields["V"].clone();
    match classify_torse_forming(&g, &radial).unwrap() {
        TorseOutcome::Certified(c) => {
            assert_eq!(c.subtype, TorseSubtype::Concurrent);
            assert_eq!(c.psi, k(1));
            assert!(c.verify(&g, &radial));
        }
        other => panic!("{other:?}"),
    }
    let c = conformal_killing(&g, &radial).unwrap();
    assert_eq!(c.class, ConformalClass::ProperHomothetic);
    assert_eq!(c.lambda, Some(k(1)));

    let doubled: Vec<Expr> = radial.iter().map(|x| x.scale(&q(2))).collect();
    assert_eq!(conformal_killing(&g, &doubled).unwrap().lambda, Some(k(2)));

    let d1 = l.fields["d1"].clone();
    match classify_torse_forming(&g, &d1).unwrap() {
        TorseOutcome::Certified(c) => assert_eq!(c.subtype, TorseSubtype::Parallel),
        other => panic!("{other:?}"),
    }
    assert_eq!(conformal_killing(&g, &d1).unwrap().class, ConformalClass::Killing);
}

#[test]
fn reeb_field_is_torse_forming() {
    let (g, _) = geometry("kenmotsu5");
    let zeta = g.contact().unwrap().zeta().to_vec();
    let TorseOutcome::Certified(c) = classify_torse_forming(&g, &zeta).unwrap() else {
        panic!("zeta should be torse-forming");
    };
    assert_eq!(c.psi, k(1));
    assert_eq!(c.theta, vec![k(0), k(0), k(0), k(0), k(-1)]);
    assert_eq!(c.theta_of_field, k(-1));
    assert_eq!(c.subtype, TorseSubtype::TorseForming);
    assert!(c.verify(&g, &zeta));
    let inst = instance("STAR_KAPPA_RBS_1_9", zeta);
    assert_eq!(solve_omega_torse_forming(&g, &inst, &c).unwrap(), solve_omega_trace(&g, &inst).unwrap());
}

#[test]
fn sample_field_is_not_torse_forming() {
    let (g, _) = geometry("kenmotsu5");
    assert_eq!(classify_torse_forming(&g, &v5()).unwrap(), TorseOutcome::NotTorseForming);
    assert!(matches!(classify_torse_forming(&g, &vec![k(0); 5]), Err(SolitonError::ZeroField)));
}

#[test]
fn eta_einstein_decomposition() {
    let (g, _) = geometry("kenmotsu5");
    let a = g.contact().unwrap();
    let t = g.manifold.metric_tensor().scale(&k(-2)).sub(&a.eta_eta());
    let d = eta_einstein(&g.manifold, a.eta(), &t).unwrap().unwrap();
    assert_eq!((d.alpha, d.beta), (k(-2), k(-1)));

    let d = eta_einstein(&g.manifold, a.eta(), &g.curvature.ricci).unwrap().unwrap();
    assert_eq!((d.alpha, d.beta), (k(-4), k(0)));

    let mut bad = g.manifold.metric_tensor();
    bad.set(&[0, 1], k(1));
    bad.set(&[1, 0], k(1));
    assert!(eta_einstein(&g.manifold, a.eta(), &bad).unwrap().is_none());
}

#[test]
fn kappa_is_rejected_without_a_slot() {
    let c = SolitonConvention::preset("STAR_1_7").unwrap();
    let r = SolitonInstance::new(c, v5(), Some(ParamValue::Value(q(1))), ParamValue::Symbolic, ParamValue::Symbolic);
    assert!(matches!(r, Err(SolitonError::KappaNotAllowed(_))));
}

fn inputs(inst: SolitonInstance) -> TheoremInputs<Rational> {
    TheoremInputs {
        instance: inst,
        rho: None,
        potential: None,
    }
}

/// `engine - stated` on the sample field, kappa and theta symbolic.
#[test]
fn theorem_discrepancies_are_pinned() {
    let (g, _) = geometry("kenmotsu5");
    let inp = inputs(instance("STAR_KAPPA_RBS_1_9", v5()));
    let check = |id: &str| theorem_check(&g, id, &inp).unwrap();
    let first = |id: &str| check(id).comparisons[0].discrepancy.clone();

    assert_eq!(first("3.1"), ex("4*theta"));
    assert_eq!(first("3.2"), ex("-20*theta"));
    assert!(check("3.2").comparisons[1].matches());
    assert_eq!(check("3.4").outcome, CheckOutcome::NotApplicable);
    assert_eq!(check("3.5").outcome, CheckOutcome::Match);

    let c41 = check("4.1");
    assert!(!c41.hard_failure());
    let d: Vec<Expr> = c41.comparisons.iter().map(|c| c.discrepancy.clone()).collect();
    assert_eq!(d, vec![k(0), k(0), ex("-8/5 - 2/5*kappa"), ex("-9/5 - 1/5*kappa"), ex("2*kappa + 4*theta")]);

    assert_eq!(first("4.2i"), ex("2*theta"));
    assert_eq!(first("4.2ii"), ex("2*theta"));
    assert_eq!(first("4.2iii"), ex("-6 + 1/5*kappa*theta_rho - 1/5*theta_rho"));
    assert_eq!(first("4.2iv"), ex("-6 + 2*theta"));
    assert_eq!(check("4.2v").outcome, CheckOutcome::Match);

    for id in THEOREM_IDS {
        assert!(!check(id).hard_failure(), "{id}");
    }
}

#[test]
fn reeb_check_matches_under_the_reversed_sign() {
    let (g, _) = geometry("kenmotsu5");
    let r = theorem_check(&g, "3.1", &inputs(instance("STAR_KAPPA_RBS_3_2", v5()))).unwrap();
    assert_eq!(r.outcome, CheckOutcome::Match);
}

#[test]
fn poisson_check_needs_nonzero_kappa() {
    let (g, _) = geometry("kenmotsu5");
    let inst = bound("STAR_KAPPA_RBS_1_9", v5(), q(0), q(1));
    let r = theorem_check(&g, "3.2", &inputs(inst));
    assert!(matches!(r, Err(SolitonError::DivisionByZeroParameter(_))));
}

#[test]
fn poisson_check_with_a_potential() {
    let (g, _) = geometry("kenmotsu5");
    let mut inp = inputs(instance("STAR_KAPPA_RBS_1_9", v5()));
    inp.potential = Some(ex("x5^2"));
    let r = theorem_check(&g, "3.2", &inp).unwrap();
    assert!(!r.hard_failure());
}

#[test]
fn conformal_check_applies_to_killing_fields() {
    let (g, _) = geometry("kenmotsu5");
    let d1 = g.manifold.coordinate_to_frame(&[k(1), k(0), k(0), k(0), k(0)]).unwrap();
    let r = theorem_check(&g, "3.4", &inputs(instance("STAR_KAPPA_RBS_1_9", d1))).unwrap();
    assert_ne!(r.outcome, CheckOutcome::NotApplicable);
}

#[test]
fn unknown_check_is_an_error() {
    let (g, _) = geometry("kenmotsu5");
    let r = theorem_check(&g, "9.9", &inputs(instance("STAR_KAPPA_RBS_1_9", v5())));
    assert!(matches!(r, Err(SolitonError::UnknownCheck(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_solution_matches_oracle(
        preset in prop::sample::select(SolitonConvention::preset_ids()),
        kn in -6i64..=6, kd in 1i64..=4, tn in -6i64..=6, td in 1i64..=4,
    ) {
        let (g, _) = geometry("kenmotsu5");
        let (kappa, theta) = (qq(kn, kd), qq(tn, td));
        let inst = bound(preset, v5(), kappa.clone(), theta.clone());
        let omega = solve_omega_trace(&g, &inst).unwrap();
        let want = trace_oracle(inst.convention(), &kappa, &theta);
        prop_assert_eq!(omega.as_constant(), Some(want.clone()));

        let solved = inst.with_omega(ParamValue::Value(want));
        let r = soliton_residual(&g, &solved).unwrap();
        prop_assert!(g.manifold.trace(&r).is_zero());
        prop_assert!(!r.components().iter().any(|c| c.symbols().contains(&omega_symbol())));
    }
}
