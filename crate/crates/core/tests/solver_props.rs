use std::f64::consts::PI;

use dbar_core::solver::{
    cauchy_transform, cauchy_transform_at, fock_bergman_project, fock_bergman_project_dense,
    fock_bergman_project_terms, solve_dbar, uniqueness_probe, CauchyRule, SolveOptions, SumPath,
};
use dbar_core::suite::{bump_suite, SuiteParams};
use dbar_core::weights::Weight;
use dbar_core::{sample, Error, Field, Grid};
use num_complex::Complex64;
use proptest::prelude::*;

fn gaussian(g: &Grid) -> Field {
    sample(g, |z| Complex64::new((-z.norm_sqr()).exp(), 0.0)).unwrap()
}

/// Cauchy transform of `e^{−|z|²}`: `(1 − e^{−|z|²})/z`, zero at the origin.
fn gaussian_transform(z: Complex64) -> Complex64 {
    let r2 = z.norm_sqr();
    if r2 == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    z.conj() * (-(-r2).exp_m1() / r2)
}

fn gaussian_error(n: usize, rule: CauchyRule) -> f64 {
    let g = Grid::new(6.0, n).unwrap();
    let u = cauchy_transform(&gaussian(&g), rule);
    let exact = sample(&g, gaussian_transform).unwrap();
    (&u - &exact).max_abs_interior()
}

#[test]
fn punctured_rule_converges_on_the_gaussian() {
    let e: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&n| gaussian_error(n, CauchyRule::Punctured))
        .collect();
    for p in e.windows(2) {
        assert!((p[0] / p[1]).log2() > 1.5, "{e:?}");
    }
}

#[test]
fn regularized_rule_is_far_more_accurate() {
    let reg = gaussian_error(256, CauchyRule::Regularized);
    let punct = gaussian_error(256, CauchyRule::Punctured);
    assert!(reg < 1e-8, "{reg:e}");
    assert!(reg < punct / 100.0);
}

#[test]
fn compactly_supported_solutions_are_recovered() {
    let g = Grid::new(6.0, 512).unwrap();
    for bp in bump_suite(9, 2, SuiteParams::default()) {
        let f = bp.sample_dbar(&g).unwrap();
        let exact = bp.sample_value(&g).unwrap();
        let u = cauchy_transform(&f, CauchyRule::Regularized);
        let err = (&u - &exact).max_abs_interior();
        assert!(err < 1e-4 * exact.max_abs(), "{err:e}");
    }
}

#[test]
fn dense_and_fft_paths_agree() {
    let g = Grid::new(4.0, 32).unwrap();
    let f = bump_suite(1, 1, SuiteParams::default())[0]
        .sample_dbar(&g)
        .unwrap();
    for rule in [CauchyRule::Punctured, CauchyRule::Regularized] {
        let a = cauchy_transform_at(&f, &g, rule, SumPath::Dense).unwrap();
        let b = cauchy_transform_at(&f, &g, rule, SumPath::Fft).unwrap();
        assert!((&a - &b).max_abs() < 1e-12 * a.max_abs(), "{rule:?}");
    }
    let other = Grid::new(4.0, 24).unwrap();
    assert!(cauchy_transform_at(&f, &other, CauchyRule::Punctured, SumPath::Dense).is_ok());
    assert!(matches!(
        cauchy_transform_at(&f, &other, CauchyRule::Regularized, SumPath::Dense),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn tail_tracks_the_moments() {
    // Vanishing moments give a solution supported with the datum; the
    // Gaussian has m_0 = π and a 1/z tail.
    let g = Grid::new(6.0, 1024).unwrap();
    let w = Weight::fock(1.0).unwrap();
    let opts = SolveOptions::default();
    let bp = &bump_suite(2, 1, SuiteParams::default())[0];
    let compliant = solve_dbar(&bp.sample_dbar(&g).unwrap(), &w, &opts).unwrap();
    assert!(!compliant.non_orthogonal);
    assert!(compliant.tail_mass < 1e-6, "{:e}", compliant.tail_mass);

    let gauss = solve_dbar(&gaussian(&g), &w, &opts).unwrap();
    assert!(gauss.non_orthogonal);
    assert!(gauss.h2_informational);
    assert!((gauss.moments.m[0] - PI).norm() < 1e-8);
    assert!(gauss.tail_mass > 0.1, "{:e}", gauss.tail_mass);
}

#[test]
fn weighted_bound_holds_on_suite_data() {
    let g = Grid::new(6.0, 512).unwrap();
    let w = Weight::fock(1.0).unwrap();
    for bp in bump_suite(21, 3, SuiteParams::default()) {
        let r = solve_dbar(&bp.sample_dbar(&g).unwrap(), &w, &SolveOptions::default()).unwrap();
        assert!(r.h2_passes, "ratio {}", r.h2_ratio);
        assert!(r.h2_ratio > 0.0 && r.h2_ratio < 1.0);
        assert!(r.residual_inf < 1e-3 * bp.sample_dbar(&g).unwrap().max_abs());
    }
}

#[test]
fn solver_rejects_weights_without_positive_curvature() {
    let g = Grid::new(4.0, 32).unwrap();
    let f = gaussian(&g);
    assert!(matches!(
        solve_dbar(&f, &Weight::Quartic, &SolveOptions::default()),
        Err(Error::WeightInvariantViolation(_))
    ));
}

#[test]
fn projection_fixes_entire_functions_and_kills_their_complement() {
    let g = Grid::new(6.0, 256).unwrap();
    let entire = sample(&g, |z| z * z - z * 0.5 + 1.0).unwrap();
    let p = fock_bergman_project(&entire).unwrap();
    let near = |i: usize| g.node(i).norm() < 2.0;
    assert!((&p - &entire).max_abs_where(near) < 1e-8);
    // z̄^k is orthogonal to every z^j with j ≠ k under e^{−|z|²}; z̄² pairs
    // with nothing of lower degree, so its projection vanishes.
    let anti = sample(&g, |z| z.conj() * z.conj()).unwrap();
    assert!(fock_bergman_project(&anti).unwrap().max_abs_where(near) < 1e-8);
}

#[test]
fn series_and_dense_projection_agree() {
    let g = Grid::new(3.0, 48).unwrap();
    let u = sample(&g, |z| z.conj() * (-0.5 * (z - 0.4).norm_sqr()).exp()).unwrap();
    let (a, terms) = fock_bergman_project_terms(&u).unwrap();
    let b = fock_bergman_project_dense(&u).unwrap();
    assert!(terms > 0 && terms <= 512);
    assert!((&a - &b).max_abs() < 1e-9 * b.max_abs().max(1.0));
}

#[test]
fn projection_guard_rejects_wide_grids() {
    let g = Grid::new(20.0, 16).unwrap();
    assert!(matches!(
        fock_bergman_project(&Field::zeros(g)),
        Err(Error::DynamicRange(_))
    ));
}

#[test]
fn uniqueness_probe_energies() {
    let g = Grid::new(6.0, 128).unwrap();
    let w = Weight::fock(1.0).unwrap();
    let u = cauchy_transform(&gaussian(&g), CauchyRule::Regularized);
    let radii = [1.0, 2.0, 3.0, 4.0, 5.0];
    let zero = uniqueness_probe(&u, &w, None, &radii).unwrap();
    assert!(zero.energies.iter().all(|&e| e == 0.0));
    assert!(!zero.grows_without_bound);
    for p in 0..3 {
        let r = uniqueness_probe(&u, &w, Some(p), &radii).unwrap();
        assert!(r.monotone && r.grows_without_bound, "{p}: {:?}", r.energies);
    }
    assert!(uniqueness_probe(&u, &Weight::Quartic, Some(0), &radii).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cauchy_transform_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0, seed in 0u64..1000) {
        let g = Grid::new(5.0, 32).unwrap();
        let f1 = bump_suite(seed, 1, SuiteParams::default())[0].sample_dbar(&g).unwrap();
        let f2 = gaussian(&g);
        let s = Complex64::new(a, b);
        let lhs = cauchy_transform(&(&f1.scale(s) + &f2), CauchyRule::Regularized);
        let rhs = &cauchy_transform(&f1, CauchyRule::Regularized).scale(s)
            + &cauchy_transform(&f2, CauchyRule::Regularized);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12 * (1.0 + rhs.max_abs()));
    }
}
