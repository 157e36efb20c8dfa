use dbar_core::weights::{
    curvature_margin, curvature_margin_discrete, Normalization, Weight, WeightSpec,
};
use dbar_core::{laplacian_hat, Error, Grid, Scheme};
use num_complex::Complex64;
use proptest::prelude::*;

fn catalog() -> Vec<Weight> {
    vec![
        Weight::fock(1.0).unwrap(),
        Weight::fock(2.0).unwrap(),
        Weight::fock_plus_harmonic(1.0, 0.125).unwrap(),
        Weight::CoshX,
    ]
}

#[test]
fn discrete_laplacian_of_phi_matches_closed_form_at_fd4_order() {
    for w in catalog() {
        let err = |n: usize| {
            let g = Grid::new(3.0, n).unwrap();
            let phi = w.sample_phi(&g).unwrap();
            let lap = laplacian_hat(&phi, Scheme::Fd4);
            let exact = w.sample_lap_hat_phi(&g).unwrap();
            (&lap - &exact).max_abs_where(|i| !g.in_band(i, 2))
        };
        let e = [err(32), err(64), err(128)];
        // Quadratic weights are reproduced exactly by the stencil.
        if e[0] < 1e-9 {
            assert!(e.iter().all(|&x| x < 1e-9), "{w:?}: {e:?}");
            continue;
        }
        let o1 = (e[0] / e[1]).log2();
        let o2 = (e[1] / e[2]).log2();
        assert!(o1 > 3.5 && o2 > 3.5, "{w:?}: {e:?}");
    }
}

#[test]
fn catalog_examples() {
    let z = Complex64::new(0.7, -1.3);
    let fph = Weight::fock_plus_harmonic(1.0, 0.125).unwrap();
    assert!((fph.lap_hat_phi(z) - 0.5).abs() < 1e-15);
    let cosh = Weight::CoshX;
    assert!((cosh.lap_hat_phi(z) - z.re.cosh() / 4.0).abs() < 1e-15);
    assert!((cosh.dphi(z) - Complex64::new(z.re.sinh() / 2.0, 0.0)).norm() < 1e-15);
    let f1 = Weight::fock(1.0).unwrap();
    assert_eq!(f1.lap_hat_phi(z), 0.5);
    assert_eq!(
        f1.dbarphi(Complex64::new(2.0, 0.0)),
        Complex64::new(1.0, 0.0)
    );
    let f2 = Weight::fock(2.0).unwrap();
    assert!(((2.0 * f2.phi(z)).exp() - (2.0 * z.norm_sqr()).exp()).abs() < 1e-9);
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(Weight::fock(0.0), Err(Error::InvalidArgument(_))));
    assert!(matches!(Weight::fock(-1.0), Err(Error::InvalidArgument(_))));
    assert!(Weight::fock_plus_harmonic(-1.0, 0.1).is_err());
    let spec = WeightSpec {
        name: "no-such-weight".into(),
        ..Default::default()
    };
    assert!(Weight::from_spec(&spec).is_err());
}

#[test]
fn catalog_parses_from_config_json() {
    let w: Weight = serde_json::from_str(r#"{"name": "fock", "t": 1.0}"#).unwrap();
    assert_eq!(w, Weight::Fock { t: 1.0 });
    let w: Weight = serde_json::from_str(r#"{"name": "cosh-x"}"#).unwrap();
    assert_eq!(w, Weight::CoshX);
    let w: Weight = serde_json::from_str(r#"{"name": "fock-plus-harmonic", "b": 0.25}"#).unwrap();
    assert_eq!(w, Weight::FockPlusHarmonic { t: 1.0, b: 0.25 });
    let err = serde_json::from_str::<Weight>(r#"{"name": "fock", "tt": 1.0}"#).unwrap_err();
    assert!(err.to_string().contains("tt"), "{err}");
    let spec = WeightSpec {
        name: "fock".into(),
        t: Some(2.0),
        b: None,
    };
    assert_eq!(Weight::from_spec(&spec).unwrap(), Weight::Fock { t: 2.0 });
}

#[test]
fn curvature_examples() {
    let g = Grid::new(6.0, 128).unwrap();
    let cosh = curvature_margin(&Weight::CoshX, &g).unwrap();
    for (i, v) in cosh.margin_field.values().iter().enumerate() {
        let x = g.node(i).re;
        let want = 1.0 / x.cosh().powi(3) + 2.0;
        assert!((v.re - want).abs() < 1e-12);
        assert!(v.re >= 2.0);
    }
    let disc = curvature_margin_discrete(&Weight::CoshX, &g, Normalization::Full, 1e-9).unwrap();
    let gap = (0..g.len())
        .filter(|&i| !g.in_band(i, 2))
        .map(|i| (disc.margin_field.get(i).re - cosh.margin_field.get(i).re).abs())
        .fold(0.0, f64::max);
    assert!(gap < 1e-4, "{gap}");
    assert!(matches!(
        curvature_margin(&Weight::Quartic, &g),
        Err(Error::WeightInvariantViolation(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dbarphi_is_exact_conjugate_of_dphi(x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let z = Complex64::new(x, y);
        for w in catalog() {
            let a = w.dbarphi(z);
            let b = w.dphi(z).conj();
            prop_assert!(a.re == b.re && a.im == b.im);
        }
    }

    #[test]
    fn fock_margin_is_exactly_two(t in 0.01f64..10.0) {
        let g = Grid::new(4.0, 16).unwrap();
        let r = curvature_margin(&Weight::fock(t).unwrap(), &g).unwrap();
        prop_assert_eq!(r.min_margin, 2.0);
        prop_assert!(r.margin_field.values().iter().all(|v| v.re == 2.0));
        prop_assert!(r.passes);
    }

    #[test]
    fn fock_plus_harmonic_margin_is_two(b in -2.0f64..2.0) {
        let g = Grid::new(3.0, 16).unwrap();
        let r = curvature_margin(&Weight::fock_plus_harmonic(1.0, b).unwrap(), &g).unwrap();
        prop_assert_eq!(r.min_margin, 2.0);
    }
}
