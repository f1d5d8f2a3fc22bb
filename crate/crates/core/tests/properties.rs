//! Property tests for the structural invariants: monotonicity, identities
//! between the closed forms, agreement between the reduced equations and the
//! master functionals, and root sandwiches.

use proptest::prelude::*;

use bohr_core::functionals::{phi_main, phi_star, reference_constants, FunctionalId, ParamSet};
use bohr_core::radius::{self, DEFAULT_TOL};
use bohr_core::series::{
    self, boundary_distance, class_param_sup, growth_majorant, poly_eval, quadratic_tail,
    tail_majorant, ClassParam, FVariant, Radius,
};
use bohr_core::specfun::li2;

fn r(v: f64) -> Radius {
    Radius::new(v).unwrap()
}

fn m(v: f64) -> ClassParam {
    ClassParam::new(v).unwrap()
}

fn class_strategy() -> impl Strategy<Value = f64> {
    (0.0..0.999f64).prop_map(|u| u * class_param_sup())
}

fn all_reduced_ids() -> Vec<FunctionalId> {
    vec![
        FunctionalId::Cor38,
        FunctionalId::Cor39,
        FunctionalId::Cor35,
        FunctionalId::Cor36,
        FunctionalId::Cor311,
        FunctionalId::Cor312 { lambda2: reference_constants().quartic_weight },
        FunctionalId::Cor313,
        FunctionalId::Cor325,
        FunctionalId::Cor326,
    ]
}

proptest! {
    #[test]
    fn li2_is_monotone(a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(li2(lo).unwrap() <= li2(hi).unwrap());
    }

    #[test]
    fn li2_reflection(x in 1e-6..0.999999f64) {
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let defect = li2(x).unwrap() + li2(1.0 - x).unwrap() - zeta2
            + x.ln() * (1.0 - x).ln();
        prop_assert!(defect.abs() <= 1e-12, "defect {defect:e} at x = {x}");
    }

    #[test]
    fn growth_is_increasing_in_r(mv in class_strategy(), a in 1e-6..0.999f64, b in 1e-6..0.999f64) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(growth_majorant(r(lo), m(mv)) < growth_majorant(r(hi), m(mv)));
    }

    #[test]
    fn tail_decreases_in_start(mv in class_strategy(), rv in 1e-4..0.999f64, start in 1u32..40) {
        let t0 = tail_majorant(r(rv), m(mv), start);
        let t1 = tail_majorant(r(rv), m(mv), start + 1);
        prop_assert!(t0 >= t1);
        prop_assert!(t1 >= 0.0);
    }

    #[test]
    fn tail_start_one_adds_exactly_r(mv in class_strategy(), rv in 1e-4..0.999f64) {
        let gap = tail_majorant(r(rv), m(mv), 1) - tail_majorant(r(rv), m(mv), 2) - rv;
        prop_assert!(gap.abs() < 1e-14);
    }

    #[test]
    fn growth_minus_r_is_tail_from_two(mv in class_strategy(), rv in 1e-4..0.999f64) {
        let gap = growth_majorant(r(rv), m(mv)) - rv - tail_majorant(r(rv), m(mv), 2);
        prop_assert!(gap.abs() < 1e-13);
    }

    #[test]
    fn quadratic_tail_decreases_in_cutoff(rv in 1e-4..0.999f64, t in 0u32..30) {
        let a = quadratic_tail(r(rv), t);
        let b = quadratic_tail(r(rv), t + 1);
        prop_assert!(a >= b && b >= 0.0);
    }

    #[test]
    fn boundary_distance_rearrangement_is_exact(mv in class_strategy()) {
        let d = boundary_distance(m(mv));
        prop_assert!(d > 0.0);
        prop_assert_eq!(d + 2.0 * mv * (2.0 * std::f64::consts::LN_2 - 1.0), 1.0);
    }

    #[test]
    fn poly_eval_is_monotone(a in 0.0..2.0f64, b in 0.0..2.0f64,
                             coeffs in proptest::collection::vec(0.0..5.0f64, 0..5)) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(poly_eval(lo, &coeffs).unwrap() <= poly_eval(hi, &coeffs).unwrap());
    }

    #[test]
    fn phi_star_equals_phi_main_without_polynomial(
        mv in class_strategy(),
        rv in 1e-4..0.99f64,
        beta in 0.0..3.0f64,
        lambda in 0.0..3.0f64,
        power in 1u32..4,
        start in 1u32..9,
    ) {
        let p = ParamSet::new(beta, 0.5, lambda, power, start, vec![], m(mv)).unwrap();
        prop_assert_eq!(phi_main(r(rv), &p), phi_star(r(rv), &p).unwrap());
    }

    #[test]
    fn phi_increases_pointwise_in_weights(
        mv in class_strategy(),
        rv in 1e-3..0.9f64,
        beta in 0.0..2.0f64,
        extra in 1e-6..1.0f64,
    ) {
        // enlarging any weight can only increase the functional, hence only
        // shrink the eventual root
        let base = ParamSet::new(beta, 0.1, 0.1, 1, 5, vec![0.5], m(mv)).unwrap();
        let more_beta = ParamSet::new(beta + extra, 0.1, 0.1, 1, 5, vec![0.5], m(mv)).unwrap();
        let more_lambda = ParamSet::new(beta, 0.1, 0.1 + extra, 1, 5, vec![0.5], m(mv)).unwrap();
        let more_poly = ParamSet::new(beta, 0.1, 0.1, 1, 5, vec![0.5 + extra], m(mv)).unwrap();
        let v = phi_main(r(rv), &base);
        prop_assert!(phi_main(r(rv), &more_beta) >= v);
        prop_assert!(phi_main(r(rv), &more_lambda) >= v);
        prop_assert!(phi_main(r(rv), &more_poly) >= v);
    }

    #[test]
    fn reduced_matches_master_pointwise(mv in class_strategy(), rv in 1e-4..0.45f64) {
        for id in all_reduced_ids() {
            let class = m(mv);
            let p = id.reduced_params(class, FVariant::Squared).unwrap();
            let reduced = bohr_core::functionals::corollary_lhs(&id, r(rv), class, FVariant::Squared).unwrap();
            let master = if id.is_starred() {
                phi_star(r(rv), &p).unwrap()
            } else {
                phi_main(r(rv), &p)
            };
            prop_assert!((reduced - master).abs() <= 1e-12,
                "{:?} at (r={}, M={}): {} vs {}", id, rv, mv, reduced, master);
        }
    }

    #[test]
    fn solved_roots_are_sandwiched(mv in class_strategy(), idx in 0usize..9) {
        let id = all_reduced_ids()[idx].clone();
        let p = ParamSet::new(0.0, 0.0, 0.0, 1, 1, vec![], m(mv)).unwrap();
        let res = radius::radius_for(&id, &p, DEFAULT_TOL).unwrap();
        prop_assert!(res.unique);
        let pp = id.reduced_params(m(mv), FVariant::Squared).unwrap();
        let eval = |x: f64| {
            let rr = Radius::new(x).unwrap();
            if id.is_starred() { phi_star(rr, &pp).unwrap() } else { phi_main(rr, &pp) }
        };
        prop_assert!(eval(res.value - 1e-6) < 0.0);
        prop_assert!(eval(res.value + 1e-6) > 0.0);
        // certified bracket straddles the root
        prop_assert!(eval(res.bracket.0) < 0.0 && eval(res.bracket.1) > 0.0);
    }
}

#[test]
fn phi_sign_structure_for_reduced_ids() {
    // negative limit at 0+, positive at the right end of the solve domain
    for id in all_reduced_ids() {
        for &mv in &[0.14, 0.7, 1.26] {
            let class = m(mv);
            let p = id.reduced_params(class, FVariant::Squared).unwrap();
            let hi = if id.is_starred() {
                radius::starred_wall(class, FVariant::Squared)
            } else {
                1.0 - 1e-9
            };
            let at = |x: f64| {
                let rr = Radius::new(x).unwrap();
                if id.is_starred() { phi_star(rr, &p).unwrap() } else { phi_main(rr, &p) }
            };
            assert!(at(1e-9) < 0.0);
            assert!(at(hi) > 0.0);
            let origin_limit = at(1e-9) + boundary_distance(class);
            assert!(origin_limit.abs() < 1e-7, "{id:?} M={mv}: {origin_limit}");
        }
    }
}

#[test]
fn master_functional_monotone_for_higher_start_indices() {
    // the master form with all blocks active, N >= 5
    for start in [5u32, 6, 7, 8] {
        for &mv in &[0.14, 0.84] {
            let p = ParamSet::new(1.0, 0.7, 0.3, 2, start, vec![0.4, 0.2], m(mv)).unwrap();
            let f = |x: f64| phi_main(r(x), &p);
            assert!(radius::verify_unique(&f, (1e-6, 1.0 - 1e-6), 200), "N={start} M={mv}");
        }
    }
}

#[test]
fn area_majorant_derivative_positive() {
    // finite differences on a 100-point grid, both variants
    let h = 1e-6;
    for &mv in &[0.14, 0.7, 1.26] {
        for variant in [FVariant::Squared, FVariant::Linear] {
            for k in 1..100 {
                let x = k as f64 / 101.0;
                let d = series::area_majorant(r(x + h), m(mv), variant)
                    - series::area_majorant(r(x), m(mv), variant);
                assert!(d > 0.0, "variant {variant:?} M={mv} r={x}");
            }
        }
    }
}
