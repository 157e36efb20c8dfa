//! One pipeline per subcommand. Each returns check records plus module
//! reports for the `details` section and fields for CSV dumps.

use std::f64::consts::PI;
use std::time::Instant;

use dbar_core::identity::verify_norm_identity_with_tolerance;
use dbar_core::moments::{
    bargmann_probe, default_diagonal_samples, diagonal_restriction, moments, Reading,
    DEFAULT_MOMENT_COUNT,
};
use dbar_core::solver::{
    cauchy_transform, hormander_bound_for, solve_dbar, uniqueness_probe, CauchyRule, SolveOptions,
    GROWTH_RATIO,
};
use dbar_core::suite::{bump_suite, BumpPoly, SuiteParams};
use dbar_core::weights::{curvature_margin, Weight, CURVATURE_TOLERANCE};
use dbar_core::{sample, Field, Grid};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::report::CheckRecord;
use crate::CliError;

/// Number of seeded compliant data per pipeline.
pub const SUITE_SIZE: usize = 20;
/// Absolute tolerance on the Gaussian sharpness integrals and their ratio.
pub const SHARPNESS_TOL: f64 = 1e-6;
/// `|f̂(ξ, iξ)|` below this counts as vanishing for compliant data.
pub const DIAGONAL_TOL: f64 = 1e-7;
/// Allowed deviation of the Gaussian diagonal transform from `π`.
pub const GAUSSIAN_DIAGONAL_TOL: f64 = 1e-4;
pub const IDEMPOTENCE_TOL: f64 = 1e-6;
/// Largest monomial degree added by the uniqueness probe.
pub const MAX_PROBE_DEGREE: u32 = 3;
pub const BARGMANN_BETA: f64 = 1.0;
pub const BARGMANN_WIDTHS: [f64; 3] = [1.5, 2.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    VerifyIdentity,
    Solve,
    CheckH1,
    Sharpness,
    Moments,
    Diagonal,
    BargmannProbe,
    Curvature,
    UniquenessProbe,
    All,
}

impl Subcommand {
    pub const PIPELINES: [Subcommand; 9] = [
        Subcommand::VerifyIdentity,
        Subcommand::Solve,
        Subcommand::CheckH1,
        Subcommand::Sharpness,
        Subcommand::Moments,
        Subcommand::Diagonal,
        Subcommand::BargmannProbe,
        Subcommand::Curvature,
        Subcommand::UniquenessProbe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::VerifyIdentity => "verify-identity",
            Subcommand::Solve => "solve",
            Subcommand::CheckH1 => "check-h1",
            Subcommand::Sharpness => "sharpness",
            Subcommand::Moments => "moments",
            Subcommand::Diagonal => "diagonal",
            Subcommand::BargmannProbe => "bargmann-probe",
            Subcommand::Curvature => "curvature",
            Subcommand::UniquenessProbe => "uniqueness-probe",
            Subcommand::All => "all",
        }
    }
}

/// Output of a single pipeline.
#[derive(Debug, Default)]
pub struct Stage {
    pub checks: Vec<CheckRecord>,
    pub details: Value,
    pub fields: Vec<(String, Field)>,
    pub series: Vec<(String, dbar_core::moments::DiagonalSeries)>,
}

/// Shared state: the grid, suite, and a clock that is silenced in
/// sequential mode.
pub struct Context<'a> {
    pub config: &'a RunConfig,
    pub grid: Grid,
    pub suite: Vec<BumpPoly>,
    pub timed: bool,
}

impl<'a> Context<'a> {
    pub fn new(config: &'a RunConfig, sequential: bool) -> Self {
        Self {
            config,
            grid: config.grid(),
            suite: bump_suite(config.seed, SUITE_SIZE, SuiteParams::default()),
            timed: !sequential,
        }
    }

    fn elapsed(&self, start: Instant) -> Option<f64> {
        self.timed.then(|| start.elapsed().as_secs_f64() * 1e3)
    }

    fn solve_options(&self) -> SolveOptions {
        let t = &self.config.tolerances;
        SolveOptions {
            scheme: self.config.scheme,
            moment_tol: t.moment_abs,
            bound_slack: t.bound_slack,
            ..SolveOptions::default()
        }
    }
}

fn gaussian(g: &Grid) -> Result<Field, CliError> {
    Ok(sample(g, |z| Complex64::new((-z.norm_sqr()).exp(), 0.0))?)
}

/// The extremal datum `−z e^{−|z|²}`.
fn sharp_datum(g: &Grid) -> Result<Field, CliError> {
    Ok(sample(g, |z| -z * (-z.norm_sqr()).exp())?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize to JSON")
}

pub fn run_stage(ctx: &Context, sub: Subcommand) -> Result<Stage, CliError> {
    log::info!("running {}", sub.name());
    match sub {
        Subcommand::VerifyIdentity => verify_identity(ctx),
        Subcommand::Solve => solve(ctx),
        Subcommand::CheckH1 => check_h1(ctx),
        Subcommand::Sharpness => sharpness(ctx),
        Subcommand::Moments => moment_check(ctx),
        Subcommand::Diagonal => diagonal(ctx),
        Subcommand::BargmannProbe => bargmann(ctx),
        Subcommand::Curvature => curvature(ctx),
        Subcommand::UniquenessProbe => uniqueness(ctx),
        Subcommand::All => all(ctx),
    }
}

fn verify_identity(ctx: &Context) -> Result<Stage, CliError> {
    let w = &ctx.config.weight;
    let tol = ctx.config.tolerances.identity_rel;
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for (k, bp) in ctx.suite.iter().enumerate() {
        let start = Instant::now();
        let v = bp.sample_value(&ctx.grid)?;
        let r = verify_norm_identity_with_tolerance(&v, w, ctx.config.scheme, tol)?;
        stage.checks.push(CheckRecord {
            name: format!("verify-identity/{k}"),
            passes: r.passes,
            informational: false,
            measured: r.lhs,
            bound: r.rhs,
            tolerance: tol,
            runtime_ms: ctx.elapsed(start),
        });
        if k == 0 {
            stage.fields.push(("verify-identity-v".into(), v));
        }
        reports.push(to_value(&r));
    }
    stage.details = json!({ "weight": w, "reports": reports });
    Ok(stage)
}

fn solve(ctx: &Context) -> Result<Stage, CliError> {
    let w = &ctx.config.weight;
    let opts = ctx.solve_options();
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for (k, bp) in ctx.suite.iter().enumerate() {
        let start = Instant::now();
        let f = bp.sample_dbar(&ctx.grid)?;
        let r = solve_dbar(&f, w, &opts)?;
        let runtime_ms = ctx.elapsed(start);
        stage.checks.push(CheckRecord {
            name: format!("solve/h2/{k}"),
            passes: r.h2_passes,
            informational: r.h2_informational,
            measured: r.h2_lhs,
            bound: r.h2_rhs,
            tolerance: r.bound_slack,
            runtime_ms,
        });
        stage.checks.push(CheckRecord {
            name: format!("solve/moments/{k}"),
            passes: !r.non_orthogonal,
            informational: false,
            measured: r.moment_max,
            bound: 0.0,
            tolerance: opts.moment_tol * r.moment_scale,
            runtime_ms,
        });
        if k == 0 {
            stage.fields.push(("solve-f".into(), f));
            stage.fields.push(("solve-u".into(), r.u.clone()));
        }
        reports.push(to_value(&r));
    }
    // Counterexample: the solver must flag the Gaussian as non-orthogonal.
    let start = Instant::now();
    let r = solve_dbar(&gaussian(&ctx.grid)?, w, &opts)?;
    stage.checks.push(CheckRecord {
        name: "solve/gaussian-flagged".into(),
        passes: r.non_orthogonal && r.h2_informational,
        informational: true,
        measured: r.moment_max,
        bound: 0.0,
        tolerance: opts.moment_tol * r.moment_scale,
        runtime_ms: ctx.elapsed(start),
    });
    stage.details = json!({ "weight": w, "reports": reports, "gaussian": to_value(&r) });
    Ok(stage)
}

fn check_h1(ctx: &Context) -> Result<Stage, CliError> {
    let w = &ctx.config.weight;
    let slack = ctx.config.tolerances.bound_slack;
    let rule = CauchyRule::default();
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for (k, bp) in ctx.suite.iter().enumerate() {
        let start = Instant::now();
        let f = bp.sample_dbar(&ctx.grid)?;
        let u = cauchy_transform(&f, rule);
        let b = hormander_bound_for(&f, &u, w, slack)?;
        let runtime_ms = ctx.elapsed(start);
        stage.checks.push(CheckRecord {
            name: format!("check-h1/bound/{k}"),
            passes: b.passes,
            informational: false,
            measured: b.h1_lhs,
            bound: b.h1_rhs,
            tolerance: slack,
            runtime_ms,
        });
        stage.checks.push(CheckRecord {
            name: format!("check-h1/idempotence/{k}"),
            passes: b.idempotence_error < IDEMPOTENCE_TOL,
            informational: false,
            measured: b.idempotence_error,
            bound: 0.0,
            tolerance: IDEMPOTENCE_TOL,
            runtime_ms,
        });
        if k == 0 {
            stage
                .fields
                .push(("check-h1-u-min".into(), b.u_min.clone()));
        }
        reports.push(to_value(&b));
    }
    let start = Instant::now();
    let f = sharp_datum(&ctx.grid)?;
    let b = hormander_bound_for(&f, &cauchy_transform(&f, rule), w, slack)?;
    stage.checks.push(CheckRecord {
        name: "check-h1/sharp-datum-finite".into(),
        passes: b.h1_lhs.is_finite() && b.h1_rhs.is_finite(),
        informational: true,
        measured: b.h1_lhs,
        bound: b.h1_rhs,
        tolerance: slack,
        runtime_ms: ctx.elapsed(start),
    });
    stage.details = json!({ "weight": w, "reports": reports, "sharp_datum": to_value(&b) });
    Ok(stage)
}

/// Always evaluated with `fock(1)`, the weight for which the datum is
/// extremal.
fn sharpness(ctx: &Context) -> Result<Stage, CliError> {
    let w = Weight::Fock { t: 1.0 };
    let start = Instant::now();
    let f = sharp_datum(&ctx.grid)?;
    let r = solve_dbar(&f, &w, &ctx.solve_options())?;
    let runtime_ms = ctx.elapsed(start);
    let rec = |name: &str, measured: f64, bound: f64| CheckRecord {
        name: format!("sharpness/{name}"),
        passes: (measured - bound).abs() < SHARPNESS_TOL,
        informational: false,
        measured,
        bound,
        tolerance: SHARPNESS_TOL,
        runtime_ms,
    };
    let checks = vec![
        rec("h2_lhs", r.h2_lhs, PI),
        rec("h2_rhs", r.h2_rhs, PI),
        rec("ratio", r.h2_ratio, 1.0),
    ];
    let details = json!({ "weight": w, "report": to_value(&r) });
    Ok(Stage {
        checks,
        details,
        fields: vec![("sharpness-f".into(), f), ("sharpness-u".into(), r.u)],
        series: Vec::new(),
    })
}

fn moment_check(ctx: &Context) -> Result<Stage, CliError> {
    let tol = ctx.config.tolerances.moment_abs;
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for (k, bp) in ctx.suite.iter().enumerate() {
        let start = Instant::now();
        let f = bp.sample_dbar(&ctx.grid)?;
        let mv = moments(&f, DEFAULT_MOMENT_COUNT);
        let scale = f.norm_l1();
        stage.checks.push(CheckRecord {
            name: format!("moments/{k}"),
            passes: mv.max_abs() < tol * scale,
            informational: false,
            measured: mv.max_abs(),
            bound: 0.0,
            tolerance: tol * scale,
            runtime_ms: ctx.elapsed(start),
        });
        reports.push(json!({ "moments": to_value(&mv), "l1_norm": scale }));
    }
    let start = Instant::now();
    let mv = moments(&gaussian(&ctx.grid)?, DEFAULT_MOMENT_COUNT);
    stage.checks.push(CheckRecord {
        name: "moments/gaussian-m0".into(),
        passes: (mv.m[0] - PI).norm() < tol,
        informational: true,
        measured: mv.m[0].re,
        bound: PI,
        tolerance: tol,
        runtime_ms: ctx.elapsed(start),
    });
    stage.details = json!({ "reports": reports, "gaussian": to_value(&mv) });
    Ok(stage)
}

fn diagonal(ctx: &Context) -> Result<Stage, CliError> {
    let xis = default_diagonal_samples();
    let mut stage = Stage::default();
    let mut maxima = Vec::new();
    for (k, bp) in ctx.suite.iter().enumerate() {
        let start = Instant::now();
        let f = bp.sample_dbar(&ctx.grid)?;
        let d = diagonal_restriction(&f, &xis, DEFAULT_MOMENT_COUNT)?;
        let m = d.max_abs_value();
        stage.checks.push(CheckRecord {
            name: format!("diagonal/{k}"),
            passes: m < DIAGONAL_TOL,
            informational: false,
            measured: m,
            bound: 0.0,
            tolerance: DIAGONAL_TOL,
            runtime_ms: ctx.elapsed(start),
        });
        maxima.push(m);
        if k == 0 {
            stage.series.push(("diagonal-0".into(), d));
        }
    }
    let start = Instant::now();
    let d = diagonal_restriction(&gaussian(&ctx.grid)?, &xis, DEFAULT_MOMENT_COUNT)?;
    let dev = d.max_deviation_from(Complex64::new(PI, 0.0));
    stage.checks.push(CheckRecord {
        name: "diagonal/gaussian-constant".into(),
        passes: dev < GAUSSIAN_DIAGONAL_TOL,
        informational: true,
        measured: dev,
        bound: 0.0,
        tolerance: GAUSSIAN_DIAGONAL_TOL,
        runtime_ms: ctx.elapsed(start),
    });
    stage.details = json!({ "max_abs_values": maxima, "gaussian": to_value(&d) });
    stage.series.push(("diagonal-gaussian".into(), d));
    Ok(stage)
}

fn bargmann(ctx: &Context) -> Result<Stage, CliError> {
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for a in BARGMANN_WIDTHS {
        let start = Instant::now();
        let r = bargmann_probe(BARGMANN_BETA, a, 1.0)?;
        let err = match r.matching {
            Reading::Literal => r.literal_rel_err,
            _ => r.quadratic_rel_err,
        };
        stage.checks.push(CheckRecord {
            name: format!("bargmann-probe/a={a}"),
            passes: matches!(r.matching, Reading::Literal | Reading::Quadratic),
            informational: false,
            measured: err,
            bound: 0.0,
            tolerance: dbar_core::moments::BARGMANN_MATCH_TOL,
            runtime_ms: ctx.elapsed(start),
        });
        reports.push(to_value(&r));
    }
    stage.details = json!({ "reports": reports });
    Ok(stage)
}

fn curvature(ctx: &Context) -> Result<Stage, CliError> {
    let w = &ctx.config.weight;
    let start = Instant::now();
    let r = curvature_margin(w, &ctx.grid)?;
    let check = CheckRecord {
        name: format!("curvature/{}", w.name()),
        passes: r.passes,
        informational: false,
        measured: r.min_margin,
        bound: 0.0,
        tolerance: CURVATURE_TOLERANCE,
        runtime_ms: ctx.elapsed(start),
    };
    let details = json!({
        "weight": w,
        "min_margin": r.min_margin,
        "passes": r.passes,
        "path": to_value(&r.path),
        "flagged_rings": r.flagged_rings,
        "tolerance": r.tolerance,
    });
    Ok(Stage {
        checks: vec![check],
        details,
        fields: vec![("curvature-margin".into(), r.margin_field)],
        series: Vec::new(),
    })
}

fn uniqueness(ctx: &Context) -> Result<Stage, CliError> {
    let w = &ctx.config.weight;
    let f = ctx.suite[0].sample_dbar(&ctx.grid)?;
    let u = solve_dbar(&f, w, &ctx.solve_options())?.u;
    let r_max = ctx.grid.radius();
    let radii: Vec<f64> = (1..=r_max.floor() as usize).map(|r| r as f64).collect();
    let mut stage = Stage::default();
    let mut reports = Vec::new();
    for p in 0..=MAX_PROBE_DEGREE {
        let start = Instant::now();
        let r = uniqueness_probe(&u, w, Some(p), &radii)?;
        stage.checks.push(CheckRecord {
            name: format!("uniqueness-probe/z^{p}"),
            passes: r.grows_without_bound,
            informational: false,
            measured: r.growth,
            bound: GROWTH_RATIO,
            tolerance: 0.0,
            runtime_ms: ctx.elapsed(start),
        });
        reports.push(to_value(&r));
    }
    stage.details = json!({ "weight": w, "reports": reports });
    Ok(stage)
}

/// Every pipeline in turn. `check-h1` needs `fock(1)` and is skipped for
/// other weights.
fn all(ctx: &Context) -> Result<Stage, CliError> {
    let mut out = Stage::default();
    let mut details = Map::new();
    for sub in Subcommand::PIPELINES {
        if sub == Subcommand::CheckH1 && ctx.config.weight != (Weight::Fock { t: 1.0 }) {
            log::warn!("all: skipping check-h1, which needs the fock(t = 1) weight");
            continue;
        }
        let stage = run_stage(ctx, sub)?;
        out.checks.extend(stage.checks);
        out.fields.extend(stage.fields);
        out.series.extend(stage.series);
        details.insert(sub.name().into(), stage.details);
    }
    out.details = Value::Object(details);
    Ok(out)
}
