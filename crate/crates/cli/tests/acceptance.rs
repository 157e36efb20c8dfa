//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use dbar_core::identity::verify_norm_identity;
use dbar_core::moments::{
    bargmann_probe, default_diagonal_samples, diagonal_restriction, moments, Reading,
};
use dbar_core::solver::{
    cauchy_transform, hormander_bound_for, solve_dbar, uniqueness_probe, CauchyRule, SolveOptions,
};
use dbar_core::suite::{bump_suite, BumpPoly, SuiteParams};
use dbar_core::weights::{curvature_margin, Weight};
use dbar_core::{dbar, sample, Error, Field, Grid, Scheme};
use num_complex::Complex64;

const SEED: u64 = 42;
const SUITE_SIZE: usize = 20;
const RADIUS: f64 = 6.0;
const FINE_N: usize = 1024;

struct Outcome {
    passes: bool,
    detail: String,
}

fn suite() -> Vec<BumpPoly> {
    bump_suite(SEED, SUITE_SIZE, SuiteParams::default())
}

fn gaussian(g: &Grid) -> Field {
    sample(g, |z| Complex64::new((-z.norm_sqr()).exp(), 0.0)).unwrap()
}

fn sharp_datum(g: &Grid) -> Field {
    sample(g, |z| -z * (-z.norm_sqr()).exp()).unwrap()
}

fn norm_identity() -> Outcome {
    let start = Instant::now();
    let g = Grid::new(RADIUS, 256).unwrap();
    let weights = [
        Weight::fock(1.0).unwrap(),
        Weight::fock(2.0).unwrap(),
        Weight::fock_plus_harmonic(1.0, 0.125).unwrap(),
        Weight::CoshX,
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for bp in suite() {
        let v = bp.sample_value(&g).unwrap();
        for w in &weights {
            let r = verify_norm_identity(&v, w, Scheme::Spectral).unwrap();
            worst = worst.max(r.rel_err);
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passes: worst < 1e-6 && secs < 60.0,
        detail: format!("{count} cases, max rel_err {worst:.3e} (< 1e-6), {secs:.1} s (< 60 s)"),
    }
}

fn isometry() -> Outcome {
    let g = Grid::new(RADIUS, 256).unwrap();
    let worst = suite()
        .iter()
        .map(|bp| {
            let v = bp.sample_value(&g).unwrap();
            verify_norm_identity(&v, &Weight::Flat, Scheme::Spectral)
                .unwrap()
                .rel_err
        })
        .fold(0.0, f64::max);
    Outcome {
        passes: worst < 1e-8,
        detail: format!("max |‖∂̄v‖² − ‖∂v‖²|/‖∂v‖² = {worst:.3e} (< 1e-8)"),
    }
}

fn sharpness() -> Outcome {
    let g = Grid::new(RADIUS, 256).unwrap();
    let r = solve_dbar(
        &sharp_datum(&g),
        &Weight::fock(1.0).unwrap(),
        &SolveOptions::default(),
    )
    .unwrap();
    let (dl, dr, dq) = (
        (r.h2_lhs - PI).abs(),
        (r.h2_rhs - PI).abs(),
        (r.h2_ratio - 1.0).abs(),
    );
    Outcome {
        passes: dl < 1e-6 && dr < 1e-6 && dq < 1e-6,
        detail: format!(
            "h2_lhs − π = {:.3e}, h2_rhs − π = {:.3e}, ratio − 1 = {:.3e} (each < 1e-6)",
            r.h2_lhs - PI,
            r.h2_rhs - PI,
            r.h2_ratio - 1.0
        ),
    }
}

/// Results on the fine grid shared by several criteria.
struct FineRun {
    h2: Vec<(f64, bool, bool)>,
    moment_rel: Vec<f64>,
    diag_max: Vec<f64>,
    h1: Vec<(f64, f64, f64)>,
    gauss_m0: Complex64,
    gauss_diag_dev: f64,
    gauss_non_orthogonal: bool,
    secs: f64,
}

fn fine_run() -> FineRun {
    let start = Instant::now();
    let g = Grid::new(RADIUS, FINE_N).unwrap();
    let w = Weight::fock(1.0).unwrap();
    let opts = SolveOptions::default();
    let xis = default_diagonal_samples();
    let mut out = FineRun {
        h2: Vec::new(),
        moment_rel: Vec::new(),
        diag_max: Vec::new(),
        h1: Vec::new(),
        gauss_m0: Complex64::new(0.0, 0.0),
        gauss_diag_dev: 0.0,
        gauss_non_orthogonal: false,
        secs: 0.0,
    };
    for bp in suite() {
        let f = bp.sample_dbar(&g).unwrap();
        let r = solve_dbar(&f, &w, &opts).unwrap();
        out.h2.push((r.h2_ratio, r.h2_passes, r.h2_informational));
        out.moment_rel.push(r.moment_max / r.moment_scale);
        out.diag_max
            .push(diagonal_restriction(&f, &xis, 10).unwrap().max_abs_value());
        let b = hormander_bound_for(&f, &r.u, &w, 0.01).unwrap();
        out.h1.push((b.ratio, b.h1_lhs, b.idempotence_error));
    }
    let gauss = gaussian(&g);
    let r = solve_dbar(&gauss, &w, &opts).unwrap();
    out.gauss_non_orthogonal = r.non_orthogonal;
    out.gauss_m0 = moments(&gauss, 10).m[0];
    out.gauss_diag_dev = diagonal_restriction(&gauss, &xis, 10)
        .unwrap()
        .max_deviation_from(Complex64::new(PI, 0.0));
    out.secs = start.elapsed().as_secs_f64();
    out
}

fn max(xs: impl Iterator<Item = f64>) -> f64 {
    xs.fold(0.0, f64::max)
}

fn h2_bound(run: &FineRun) -> Outcome {
    let worst = max(run.h2.iter().map(|t| t.0));
    let ok = run.h2.iter().all(|&(_, p, info)| p && !info);
    Outcome {
        passes: ok,
        detail: format!(
            "{} compliant data at n={FINE_N}, max 2∫|u|²e^(2φ)Δ̂φ / ∫|f|²e^(2φ) = {worst:.6} (≤ 1.01)",
            run.h2.len()
        ),
    }
}

fn solver_oracle() -> Outcome {
    let data: Vec<BumpPoly> = suite().into_iter().take(5).collect();
    let mut worst_err_order = f64::INFINITY;
    let mut worst_res_order = f64::INFINITY;
    let mut rows = Vec::new();
    for bp in &data {
        let mut errs = Vec::new();
        let mut res = Vec::new();
        for n in [128, 256] {
            let g = Grid::new(RADIUS, n).unwrap();
            let f = bp.sample_dbar(&g).unwrap();
            let exact = bp.sample_value(&g).unwrap();
            let u = cauchy_transform(&f, CauchyRule::Punctured);
            errs.push((&u - &exact).max_abs_interior());
            res.push(
                dbar(&u, Scheme::Spectral)
                    .zip_with(&f, |a, b| a - b)
                    .unwrap()
                    .max_abs_interior(),
            );
        }
        let eo = (errs[0] / errs[1]).log2();
        let ro = (res[0] / res[1]).log2();
        worst_err_order = worst_err_order.min(eo);
        worst_res_order = worst_res_order.min(ro);
        rows.push(format!("{:.2e}→{:.2e}", errs[0], errs[1]));
    }
    Outcome {
        passes: worst_err_order >= 1.0 && worst_res_order >= 1.0,
        detail: format!(
            "punctured rule, n 128→256: min error order {worst_err_order:.2}, \
             min residual order {worst_res_order:.2} (≥ 1); errors {}",
            rows.join(", ")
        ),
    }
}

fn moment_condition(run: &FineRun) -> Outcome {
    let worst = max(run.moment_rel.iter().copied());
    let m0_err = (run.gauss_m0 - PI).norm();
    Outcome {
        passes: worst < 1e-8,
        detail: format!(
            "max_j≤10 |m_j|/‖f‖₁ = {worst:.3e} (< 1e-8); informational: Gaussian |m_0 − π| = \
             {m0_err:.3e} (< 1e-8: {}), flagged non-orthogonal: {}",
            m0_err < 1e-8,
            run.gauss_non_orthogonal
        ),
    }
}

fn dichotomy(run: &FineRun) -> Outcome {
    let worst = max(run.diag_max.iter().copied());
    Outcome {
        passes: worst < 1e-7 && run.gauss_diag_dev < 1e-4,
        detail: format!(
            "compliant max |f̂(ξ,iξ)| = {worst:.3e} (< 1e-7); Gaussian max |f̂(ξ,iξ) − π| = {:.3e} (< 1e-4)",
            run.gauss_diag_dev
        ),
    }
}

fn h1_bound(run: &FineRun) -> Outcome {
    let worst = max(run.h1.iter().map(|t| t.0));
    let idem = max(run.h1.iter().map(|t| t.2));
    Outcome {
        passes: worst <= 1.01 && idem < 1e-6,
        detail: format!(
            "max h1_lhs/h1_rhs = {worst:.6} (≤ 1.01), max idempotence error {idem:.3e} (< 1e-6)"
        ),
    }
}

fn curvature() -> Outcome {
    let g = Grid::new(RADIUS, 256).unwrap();
    let fock = curvature_margin(&Weight::fock(1.0).unwrap(), &g).unwrap();
    let fock_exact = fock.margin_field.values().iter().all(|v| v.re == 2.0);
    let cosh = curvature_margin(&Weight::CoshX, &g).unwrap();
    let quartic = curvature_margin(&Weight::Quartic, &g);
    let rejected = matches!(quartic, Err(Error::WeightInvariantViolation(_)));
    Outcome {
        passes: fock_exact && fock.passes && cosh.min_margin >= 2.0 && rejected,
        detail: format!(
            "fock margin ≡ 2: {fock_exact}; cosh-x min margin {:.12} (≥ 2); quartic rejected: {rejected}",
            cosh.min_margin
        ),
    }
}

fn uniqueness() -> Outcome {
    let g = Grid::new(RADIUS, 256).unwrap();
    let w = Weight::fock(1.0).unwrap();
    let u = solve_dbar(&sharp_datum(&g), &w, &SolveOptions::default())
        .unwrap()
        .u;
    let radii: Vec<f64> = (1..=6).map(f64::from).collect();
    let mut ok = true;
    let mut growth = Vec::new();
    for p in 0..=3 {
        let r = uniqueness_probe(&u, &w, Some(p), &radii).unwrap();
        ok &= r.grows_without_bound;
        growth.push(format!("p={p}: {:.3e}", r.growth));
    }
    Outcome {
        passes: ok,
        detail: format!("E(6)/E(1) {} (> 1e3, monotone)", growth.join(", ")),
    }
}

fn bargmann() -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    let mut readings = Vec::new();
    for a in [1.5, 2.0, 3.0] {
        let r = bargmann_probe(1.0, a, 1.0).unwrap();
        ok &= matches!(r.matching, Reading::Literal | Reading::Quadratic);
        readings.push(r.matching);
        rows.push(format!(
            "a={a}: lhs {:.10}, literal {:.10}, quadratic {:.10} → {:?}",
            r.lhs, r.rhs_literal, r.rhs_quadratic, r.matching
        ));
    }
    ok &= readings.windows(2).all(|p| p[0] == p[1]);
    Outcome {
        passes: ok,
        detail: rows.join("; "),
    }
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut report = |id: usize, name: &'static str, o: Outcome| {
        println!(
            "[{}] {id:>2} {name}: {}",
            if o.passes { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((id, name, o));
    };
    report(1, "norm identity", norm_identity());
    report(2, "flat-weight isometry", isometry());
    report(3, "sharpness", sharpness());
    let run = fine_run();
    eprintln!("fine-grid run: {:.1} s", run.secs);
    report(4, "growing-weight bound", h2_bound(&run));
    report(5, "solver oracle", solver_oracle());
    report(6, "moment condition", moment_condition(&run));
    report(7, "diagonal dichotomy", dichotomy(&run));
    report(8, "classical bound via projection", h1_bound(&run));
    report(9, "curvature condition", curvature());
    report(10, "uniqueness probe", uniqueness());
    report(11, "bargmann probe", bargmann());
    let failed: Vec<usize> = results
        .iter()
        .filter(|r| !r.2.passes)
        .map(|r| r.0)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
