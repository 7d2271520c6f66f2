mod common;

use std::f64::consts::PI;

use approx::assert_relative_eq;
use moyal_geom::fit::loglog_slope;
use moyal_geom::recurrence::*;
use moyal_geom::{Error, Precision};
use proptest::prelude::*;

const GOLDEN: f64 = 1.618_033_988_749_895;

fn frame(curvature: f64, phi0: f64, len: usize) -> Vec<f64> {
    solve(&RecurrenceProblem::frame(curvature, phi0, len)).unwrap().phi
}

#[test]
fn first_step_examples() {
    assert_relative_eq!(first_step(1.0, 1.0).unwrap(), GOLDEN, max_relative = 1e-12);
    assert_eq!(first_step(2.5, 0.0).unwrap(), 2.5);
    let expected = (0.5 + (0.25f64 + 16.0).sqrt()) / 2.0;
    assert_relative_eq!(first_step(2.0, 1.0).unwrap(), expected, max_relative = 1e-14);
    assert_relative_eq!(first_step(2.0, 1.0).unwrap(), 2.265_564_4, max_relative = 1e-7);
    for bad in [0.0, -1.0, f64::NAN] {
        assert!(first_step(bad, 1.0).is_err());
    }
}

#[test]
fn second_step_matches_the_quadratic() {
    let p = RecurrenceProblem::frame(1.0, 1.0, 3);
    let phi2 = step(1, 1.0, GOLDEN, &p).unwrap();
    assert_relative_eq!(
        phi2,
        common::naive_step(1, 1.0, GOLDEN, 1.0 / GOLDEN),
        max_relative = 1e-14
    );
    assert_relative_eq!(phi2, 2.270_897_243_910_497, max_relative = 1e-13);
    assert_eq!(step(4, 3.0, 3.0, &RecurrenceProblem::frame(0.0, 3.0, 10)).unwrap(), 3.0);
    assert!(step(1, -1.0, 2.0, &p).is_err());
    assert!(step(1, 1.0, 0.0, &p).is_err());
}

#[test]
fn variants_agree_when_sources_coincide() {
    let (curvature, prev, cur) = (1.3, 0.8, 1.7);
    let f = RecurrenceProblem::frame(curvature, prev, 10);
    let r = RecurrenceProblem::rosenberg(-curvature * cur, prev, 10);
    for n in 1..5 {
        assert_relative_eq!(
            step(n, prev, cur, &f).unwrap(),
            step(n, prev, cur, &r).unwrap(),
            max_relative = 1e-15
        );
    }
}

#[test]
fn solve_examples() {
    let phi = frame(1.0, 1.0, 5);
    assert_eq!(phi.len(), 5);
    assert_eq!(phi[0], 1.0);
    assert_relative_eq!(phi[1], 1.618_034, max_relative = 1e-6);
    assert_relative_eq!(phi[2], 2.270_897, max_relative = 1e-6);
    assert!(phi.windows(2).all(|w| w[1] > w[0]));
    assert!(frame(0.0, 3.0, 100).iter().all(|&v| v == 3.0));
}

#[test]
fn solver_matches_the_textbook_quadratic() {
    for (curvature, phi0) in [(1.0, 1.0), (0.3, 2.0), (4.0, 0.5)] {
        let lib = frame(curvature, phi0, 2000);
        let naive = common::naive_frame_solve(curvature, phi0, 2000);
        for n in 0..2000 {
            assert!(
                common::rel(lib[n], naive[n]) < 1e-10,
                "n={n}: {} vs {}",
                lib[n],
                naive[n]
            );
        }
    }
}

#[test]
fn solution_diagnostics() {
    let sol = solve(&RecurrenceProblem::frame(1.0, 1.0, 6001)).unwrap();
    assert!(sol.monotone);
    assert!(
        sol.residuals_within_bound(),
        "{} > {}",
        sol.max_residual(),
        sol.residual_bound
    );
    assert_eq!(sol.residuals.len(), 6000);
    assert_eq!(sol.gb_partials.len(), 6000);
    assert_relative_eq!(sol.gb_partials[5000], gauss_bonnet_estimate(&sol.phi, 5000).unwrap());
    let e = sol.exponent.unwrap();
    assert!(e.brackets());
    assert!(sol.volume.summable && sol.volume.tail_growth_exponent > 0.9);
    assert!(solve(&RecurrenceProblem::frame(1.0, 1.0, 6000))
        .unwrap()
        .exponent
        .is_none());
}

#[test]
fn invalid_problems_are_rejected() {
    for p in [
        RecurrenceProblem::frame(1.0, 0.0, 10),
        RecurrenceProblem::frame(1.0, -2.0, 10),
        RecurrenceProblem::frame(1.0, 1.0, 0),
        RecurrenceProblem::frame(f64::NAN, 1.0, 10),
        RecurrenceProblem::rosenberg(f64::INFINITY, 1.0, 10),
    ] {
        assert!(matches!(solve(&p), Err(Error::InvalidParameter { .. })), "{p:?}");
    }
}

#[test]
fn gauss_bonnet_model_sequences() {
    let n = 40_000;
    let lin = common::model_sequence(1.0, 1.0, 1.0, n + 2);
    assert_relative_eq!(gauss_bonnet_estimate(&lin, n).unwrap(), 8.0 * PI, max_relative = 1e-4);
    let sq = common::model_sequence(2.0, 1.0, 1.0, n + 2);
    assert_relative_eq!(gauss_bonnet_estimate(&sq, n).unwrap(), 16.0 * PI, max_relative = 1e-4);
    assert_eq!(gauss_bonnet_estimate(&[4.0; 10], 5).unwrap(), 0.0);
    assert!(matches!(
        gauss_bonnet_estimate(&lin[..10], 9),
        Err(Error::InsufficientLength { .. })
    ));
}

#[test]
fn telescoping_examples() {
    let mut rng = common::rng(1);
    let phi = common::random_positive_sequence(&mut rng, 52);
    assert!(telescoping_check(&phi, 50).unwrap().relative() <= 1e-10);
    let lin = common::model_sequence(1.0, 1.0, 1.0, 12);
    assert!(telescoping_check(&lin, 10).unwrap().difference.abs() <= 1e-12);
    let sol = frame(1.0, 1.0, 1002);
    assert!(telescoping_check(&sol, 1000).unwrap().relative() <= 1e-9);
    assert!(telescoping_check(&[1.0, -1.0, 2.0], 1).is_err());
}

#[test]
fn exponent_model_sequences() {
    for a in [0.5, 1.0, 2.3] {
        let e = exponent_estimate(&common::model_sequence(a, 1.0, 0.0, 6001)).unwrap();
        assert_relative_eq!(e.a_hat, a, max_relative = 1e-14);
        assert_relative_eq!(e.bar_low, a, max_relative = 1e-14);
        assert_relative_eq!(e.bar_high, a, max_relative = 1e-14);
        let scaled = common::model_sequence(a, 7.0, 0.0, 6001);
        let e = exponent_estimate(&scaled).unwrap();
        assert_relative_eq!(e.a_hat, a + 7f64.ln() / 5000f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(exponent_slope(&scaled).unwrap(), a, max_relative = 1e-12);
    }
    assert!(matches!(
        exponent_estimate(&[1.0; 6000]),
        Err(Error::InsufficientLength { .. })
    ));
}

/// The central estimate carries the `ln A / ln N` bias of `phi_n ~ A n^a`;
/// the Gauss-Bonnet estimator tracks the log-log slope instead.
#[test]
fn gauss_bonnet_tracks_the_local_slope() {
    for phi0 in [0.5, 1.0, 2.0, 5.0] {
        let phi = frame(1.0, phi0, 6001);
        let gb = gauss_bonnet_estimate(&phi, CENTRAL_INDEX).unwrap() / (8.0 * PI);
        let slope = exponent_slope(&phi).unwrap();
        assert!(common::rel(gb, slope) < 1e-3, "phi0={phi0}: {gb} vs {slope}");
    }
}

#[test]
fn series_examples() {
    let expected = 100.0 + 1.0 + 0.00125 - 22.0 / 144.0 * 1e-4 + (-0.25 + 26.0 / 9.0 + 29.0 / 18.0) / 32.0 * 1e-6;
    assert_relative_eq!(fs_series(100, 1.0).unwrap(), expected, max_relative = 1e-15);
    for r in [0.5, 1.0, 2.0] {
        assert!((fs_series(10_000_000, r).unwrap() - 1e7 - 0.5 * (r + 1.0)).abs() < 1e-7);
    }
    assert!(fs_series(0, 1.0).is_err());
}

#[test]
fn series_residual_decays_fast() {
    for r in [0.5, 1.0, 2.0] {
        let pts: Vec<(f64, f64)> = [100, 200, 400, 800, 1600, 2000]
            .iter()
            .map(|&n| (n as f64, fs_series_residual(n, r).unwrap()))
            .collect();
        let slope = loglog_slope(&pts);
        assert!(slope <= -3.0, "R={r}: slope {slope}");
    }
}

#[test]
fn shooting_finds_the_unit_exponent() {
    let found = find_fs_seed(1.0, 1e-3).unwrap();
    assert!((found.exponent.a_hat - 1.0).abs() <= 1e-3);
    assert_eq!(found.scan.len(), 50);
    let again = exponent_for_seed(1.0, found.seed, Precision::Standard).unwrap();
    assert_eq!(again, found.exponent);

    // The central estimate is not scale invariant: at the rescaled seed it
    // is shifted by ln(lambda)/ln(5000), so the unit-exponent seed of the
    // rescaled problem is not lambda times the original one.
    let lambda: f64 = 3.0;
    let moved = exponent_for_seed(lambda * lambda, lambda * found.seed, Precision::Standard).unwrap();
    let shift = lambda.ln() / (CENTRAL_INDEX as f64).ln();
    assert!((moved.a_hat - found.exponent.a_hat - shift).abs() < 1e-12);
    let scaled = find_fs_seed(lambda * lambda, 1e-3).unwrap();
    assert!((scaled.exponent.a_hat - 1.0).abs() <= 1e-3);
    assert!(
        scaled.seed > 1.5 * lambda * found.seed,
        "{} vs {}",
        scaled.seed,
        found.seed
    );
}

#[test]
fn shooting_reports_missing_brackets() {
    let search = SeedSearch {
        target: 0.3,
        ..SeedSearch::default()
    };
    match find_fs_seed_with(1.0, &search) {
        Err(Error::NoBracket { trace }) => assert_eq!(trace.len(), 50),
        other => panic!("{other:?}"),
    }
}

#[test]
fn extended_precision_agrees() {
    let p = RecurrenceProblem::frame(1.0, 1.0, 6001);
    let check = precision_check(&p, 5000).unwrap();
    assert!(check.relative_difference() < 1e-10, "{check:?}");
    let ext = solve(&p.with_len(300).with_precision(Precision::Extended)).unwrap();
    let std = frame(1.0, 1.0, 300);
    for (e, s) in ext.phi.iter().zip(&std) {
        assert!(common::rel(*e, *s) < 1e-12);
    }
    assert!(ext.residual_bound < 1e-30);
    assert!(ext.residuals_within_bound());
}

#[test]
fn rosenberg_sign_regimes() {
    let growing = solve(&RecurrenceProblem::rosenberg(-1.0, 1.0, 2000)).unwrap();
    assert!(growing.monotone);
    // n = 0 condition: phi_1^2 - phi_0^2 = -c phi_1 / phi_0^2
    let (p0, p1) = (growing.phi[0], growing.phi[1]);
    assert_relative_eq!(p1 * p1 - p0 * p0, p1 / (p0 * p0), max_relative = 1e-14);

    let p = RecurrenceProblem::rosenberg(1.0, 1.0, 1000);
    assert!(matches!(solve(&p), Err(Error::NonFinite { .. })));
    let (prefix, failure) = solve_prefix(&p).unwrap();
    assert!(matches!(failure, Some(Error::NonFinite { step }) if step == prefix.len()));
    assert!(prefix.windows(2).all(|w| w[1] < w[0]));

    // a strong negative source relative to phi0^3 overflows within a few
    // hundred steps
    let p = RecurrenceProblem::rosenberg(-3.0, 0.2, 1000);
    let (prefix, failure) = solve_prefix(&p).unwrap();
    assert!(failure.is_some() && prefix.len() < 1000);
    assert!(prefix[2] / prefix[1] > 100.0);
}

#[test]
fn solutions_round_trip_through_csv() {
    let sol = solve(&RecurrenceProblem::frame(0.7, 1.3, 500)).unwrap();
    let mut buf = Vec::new();
    write_solution_csv(&sol, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), "n,phi_n,gb_partial_n,residual_n");
    assert_eq!(text.lines().count(), 501);
    assert_eq!(read_phi_column(&buf[..]).unwrap(), sol.phi);
}

#[test]
fn small_seeds_overflow() {
    assert!(matches!(
        solve(&RecurrenceProblem::frame(6.37, 0.05, 3000)),
        Err(Error::NonFinite { .. })
    ));
}

fn scaling_defect(p: &RecurrenceProblem, lambda: f64) -> f64 {
    let base = solve(p).unwrap().phi;
    let scaled = solve(&p.scaled(lambda)).unwrap().phi;
    base.iter()
        .zip(&scaled)
        .map(|(b, s)| common::rel(*s, lambda * b))
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_of_two_scaling_is_exact(
        curvature in 0.05f64..5.0, s in 0.3f64..10.0, k in -6i32..6,
    ) {
        let p = RecurrenceProblem::frame(curvature, s * curvature.sqrt(), 2000);
        prop_assert_eq!(scaling_defect(&p, 2f64.powi(k)), 0.0);
    }

    #[test]
    fn scaling_covariance(curvature in 0.05f64..5.0, s in 0.3f64..10.0, lambda in 0.1f64..10.0) {
        let p = RecurrenceProblem::frame(curvature, s * curvature.sqrt(), 2000);
        prop_assert!(scaling_defect(&p, lambda) < 1e-10);
    }

    #[test]
    fn scaled_exponent_is_shifted(curvature in 0.2f64..3.0, phi0 in 0.3f64..3.0, lambda in 0.2f64..5.0) {
        let p = RecurrenceProblem::frame(curvature, phi0, 6001);
        let base = solve(&p).unwrap().exponent.unwrap();
        let scaled = solve(&p.scaled(lambda)).unwrap().exponent.unwrap();
        let shift = lambda.ln() / (CENTRAL_INDEX as f64).ln();
        prop_assert!((scaled.a_hat - base.a_hat - shift).abs() < 1e-10);
    }

    #[test]
    fn rosenberg_scaling(kappa in -1.5f64..-0.01, phi0 in 0.2f64..4.0, lambda in 0.2f64..5.0) {
        let p = RecurrenceProblem::rosenberg(kappa * phi0.powi(3), phi0, 1500);
        prop_assert!(scaling_defect(&p, lambda) < 1e-10);
    }

    #[test]
    // seeds below about 0.12 sqrt(R) blow up, see small_seeds_overflow
    fn frame_solutions_increase(curvature in 0.01f64..10.0, s in 0.3f64..20.0) {
        let sol = solve(&RecurrenceProblem::frame(curvature, s * curvature.sqrt(), 3000)).unwrap();
        prop_assert!(sol.monotone);
        prop_assert!(sol.residuals_within_bound());
    }

    #[test]
    fn telescoping_holds_for_any_positive_sequence(seed in any::<u64>(), len in 3usize..400) {
        let mut rng = common::rng(seed);
        let phi = common::random_positive_sequence(&mut rng, len);
        prop_assert!(telescoping_check(&phi, len - 2).unwrap().relative() <= 1e-10);
    }
}
