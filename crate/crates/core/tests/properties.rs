use proptest::prelude::*;
use rharmonic::critical_points::{clifford_kind, SolutionKind};
use rharmonic::fd_oracle::{routes_agree, scan_roots, verify_clifford_criticality};
use rharmonic::reduced_energy::{eps_c, eps_c_deriv};
use rharmonic::{build_p, discriminant_condition, root_solve, solve_clifford, CliffordConfig};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn roots_are_sorted_admissible_and_critical(p in 1u32..20, q in 1u32..20, r in 2u32..60) {
        let reports = solve_clifford(p, q, r).unwrap();
        prop_assert!(!reports.is_empty());
        prop_assert!(reports.len() <= 3);
        for w in reports.windows(2) {
            prop_assert!(w[0].parameter < w[1].parameter);
        }
        for rep in &reports {
            prop_assert!(rep.parameter > 0.0 && rep.parameter < 1.0);
            let check = verify_clifford_criticality(rep.parameter, p, q, r, 1e-8).unwrap();
            prop_assert!(check.passed, "{}", check);
            prop_assert!(routes_agree(&check, 1e-8));
        }
    }

    #[test]
    fn positive_condition_means_three_roots(p in 1u32..30, q in 1u32..30, r in 3u32..80) {
        let solved = solve_clifford(p, q, r).unwrap().len();
        if discriminant_condition(p, q, r).unwrap() > 0.0 {
            prop_assert_eq!(solved, 3);
        }
        let poly = build_p(p, q, r);
        let brackets = scan_roots(|t| poly.eval(t), (0.0, 1.0), 20_000);
        let roots = root_solve(&poly, (0.0, 1.0), 1e-9);
        // Every scanned bracket holds one of the solver's roots.
        for (a, b) in brackets {
            prop_assert!(roots.iter().any(|t| *t >= a && *t <= b));
        }
    }

    #[test]
    fn non_roots_are_not_critical(p in 1u32..10, q in 1u32..10, r in 3u32..30, t in 0.02f64..0.98) {
        let poly = build_p(p, q, r);
        prop_assume!(poly.eval(t).abs() > 1e-3);
        let cfg = CliffordConfig::from_r1_squared(p, q, r, t).unwrap();
        prop_assume!(cfg.tension_factor().abs() > 1e-6);
        let check = verify_clifford_criticality(t, p, q, r, 1e-8).unwrap();
        prop_assert!(!check.passed);
        prop_assert!(routes_agree(&check, 1e-8));
    }

    #[test]
    fn minimal_torus_is_classified(p in 1u32..100, q in 1u32..100) {
        let t = f64::from(p) / f64::from(p + q);
        prop_assert_eq!(clifford_kind(p, q, t), SolutionKind::Minimal);
        prop_assert_ne!(clifford_kind(p, q, t + 1e-6), SolutionKind::Minimal);
    }

    #[test]
    fn clifford_energy_positive_and_flat_at_roots(p in 1u32..8, q in 1u32..8, r in 3u32..25) {
        for rep in solve_clifford(p, q, r).unwrap() {
            let cfg = CliffordConfig::from_r1_squared(p, q, r, rep.parameter).unwrap();
            let e = eps_c(rep.alpha_star, &cfg).unwrap();
            prop_assert!(e > 0.0);
            prop_assert!(eps_c_deriv(rep.alpha_star, &cfg).unwrap().abs() < 1e-9 * e);
        }
    }
}
