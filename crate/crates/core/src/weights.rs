//! Closed-form weights `φ` with analytic derivatives, and the curvature-type
//! uniqueness margin `(Δ̂ log Δ̂φ)/Δ̂φ + 2`.
//!
//! The margin is written with the normalized Laplacian throughout. The ratio
//! `(Δ log Δφ)/Δφ` is unchanged when `Δ = 4Δ̂` is used instead: the factor 4
//! cancels in the quotient and `log 4` is annihilated by the Laplacian.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diff::{laplacian_hat, Scheme};
use crate::error::{Error, Result};
use crate::field::{sample_real, Field};
use crate::grid::Grid;

/// Default slack for the curvature pass flag; analytic margins are exact up
/// to rounding.
pub const CURVATURE_TOLERANCE: f64 = 1e-9;

/// Catalog of weights. Serialized as `{"name": "fock", "t": 1.0}` etc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Weight {
    /// `φ = t|z|²/2`.
    Fock {
        #[serde(default = "default_scale")]
        t: f64,
    },
    /// `φ = t|z|²/2 + Re(b z²)` with real `b`.
    FockPlusHarmonic {
        #[serde(default = "default_scale")]
        t: f64,
        b: f64,
    },
    /// `φ = cosh x`.
    CoshX,
    /// `φ = |z|⁴`; `Δ̂φ = 4|z|²` vanishes at the origin, so this weight
    /// violates the standing assumption and is rejected by validation.
    Quartic,
    /// `φ = 0`; only meaningful for the isometry case of the norm identity.
    Flat,
}

fn default_scale() -> f64 {
    1.0
}

impl Weight {
    pub fn fock(t: f64) -> Result<Self> {
        let w = Weight::Fock { t };
        w.check_params()?;
        Ok(w)
    }

    pub fn fock_plus_harmonic(t: f64, b: f64) -> Result<Self> {
        let w = Weight::FockPlusHarmonic { t, b };
        w.check_params()?;
        Ok(w)
    }

    /// Builds a catalog weight from its JSON-style description.
    pub fn from_spec(spec: &WeightSpec) -> Result<Self> {
        let w = match spec.name.as_str() {
            "fock" => Weight::Fock {
                t: spec.t.unwrap_or(1.0),
            },
            "fock-plus-harmonic" => Weight::FockPlusHarmonic {
                t: spec.t.unwrap_or(1.0),
                b: spec.b.ok_or_else(|| {
                    Error::InvalidArgument("fock-plus-harmonic requires parameter b".into())
                })?,
            },
            "cosh-x" => Weight::CoshX,
            "quartic" => Weight::Quartic,
            "flat" => Weight::Flat,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown weight `{other}` (catalog: fock, fock-plus-harmonic, cosh-x, quartic, flat)"
                )))
            }
        };
        w.check_params()?;
        Ok(w)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Weight::Fock { .. } => "fock",
            Weight::FockPlusHarmonic { .. } => "fock-plus-harmonic",
            Weight::CoshX => "cosh-x",
            Weight::Quartic => "quartic",
            Weight::Flat => "flat",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Weight::Fock { t } => vec![t],
            Weight::FockPlusHarmonic { t, b } => vec![t, b],
            _ => Vec::new(),
        }
    }

    /// Catalog parameter constraints.
    pub fn check_params(&self) -> Result<()> {
        match *self {
            Weight::Fock { t } | Weight::FockPlusHarmonic { t, .. }
                if !(t.is_finite() && t > 0.0) =>
            {
                Err(Error::InvalidArgument(format!(
                    "{}: scale t must be positive, got {t}",
                    self.name()
                )))
            }
            Weight::FockPlusHarmonic { b, .. } if !b.is_finite() => Err(Error::InvalidArgument(
                "fock-plus-harmonic: b must be finite".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn phi(&self, z: Complex64) -> f64 {
        match *self {
            Weight::Fock { t } => 0.5 * t * z.norm_sqr(),
            Weight::FockPlusHarmonic { t, b } => 0.5 * t * z.norm_sqr() + b * (z * z).re,
            Weight::CoshX => z.re.cosh(),
            Weight::Quartic => z.norm_sqr() * z.norm_sqr(),
            Weight::Flat => 0.0,
        }
    }

    /// `∂φ`.
    pub fn dphi(&self, z: Complex64) -> Complex64 {
        match *self {
            Weight::Fock { t } => z.conj() * (0.5 * t),
            Weight::FockPlusHarmonic { t, b } => z.conj() * (0.5 * t) + z * b,
            Weight::CoshX => Complex64::new(0.5 * z.re.sinh(), 0.0),
            Weight::Quartic => z.conj() * (2.0 * z.norm_sqr()),
            Weight::Flat => Complex64::new(0.0, 0.0),
        }
    }

    /// `∂̄φ = conj(∂φ)` since `φ` is real.
    pub fn dbarphi(&self, z: Complex64) -> Complex64 {
        self.dphi(z).conj()
    }

    /// `Δ̂φ`.
    pub fn lap_hat_phi(&self, z: Complex64) -> f64 {
        match *self {
            Weight::Fock { t } | Weight::FockPlusHarmonic { t, .. } => 0.5 * t,
            Weight::CoshX => 0.25 * z.re.cosh(),
            Weight::Quartic => 4.0 * z.norm_sqr(),
            Weight::Flat => 0.0,
        }
    }

    /// Analytic `Δ̂ log Δ̂φ`, where the catalog provides it.
    pub fn lap_hat_log_lap_hat(&self, z: Complex64) -> Option<f64> {
        match *self {
            Weight::Fock { .. } | Weight::FockPlusHarmonic { .. } => Some(0.0),
            Weight::CoshX => {
                let s = 1.0 / z.re.cosh();
                Some(0.25 * s * s)
            }
            // log|z|² is harmonic off the origin; the origin itself is where
            // the standing assumption fails.
            Weight::Quartic => Some(0.0),
            Weight::Flat => None,
        }
    }

    /// Infimum of `Δ̂φ` over the closed square `[-R, R]²`.
    pub fn lap_hat_infimum(&self, grid: &Grid) -> f64 {
        let _ = grid;
        match *self {
            Weight::Fock { t } | Weight::FockPlusHarmonic { t, .. } => 0.5 * t,
            Weight::CoshX => 0.25,
            Weight::Quartic => 0.0,
            Weight::Flat => 0.0,
        }
    }

    /// Checks the standing assumption `Δ̂φ > 0` on the whole square and at
    /// every node.
    pub fn validate_on(&self, grid: &Grid) -> Result<()> {
        self.check_params()?;
        let inf = self.lap_hat_infimum(grid);
        if !(inf > 0.0) {
            return Err(Error::WeightInvariantViolation(format!(
                "{}: inf of lap_hat(phi) over the square is {inf}, must be > 0",
                self.name()
            )));
        }
        for (i, z) in grid.nodes().enumerate() {
            let l = self.lap_hat_phi(z);
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::WeightInvariantViolation(format!(
                    "{}: lap_hat(phi) = {l} at node {i}",
                    self.name()
                )));
            }
        }
        Ok(())
    }

    pub fn sample_phi(&self, grid: &Grid) -> Result<Field> {
        sample_real(grid, |z| self.phi(z))
    }

    pub fn sample_lap_hat_phi(&self, grid: &Grid) -> Result<Field> {
        sample_real(grid, |z| self.lap_hat_phi(z))
    }

    pub fn sample_dphi(&self, grid: &Grid) -> Result<Field> {
        crate::field::sample(grid, |z| self.dphi(z))
    }

    pub fn sample_dbarphi(&self, grid: &Grid) -> Result<Field> {
        crate::field::sample(grid, |z| self.dbarphi(z))
    }

    /// Samples `e^{factor·φ}`, failing with a dynamic-range error at the first
    /// node where the exponential overflows or underflows to zero.
    pub fn sample_exp(&self, grid: &Grid, factor: f64) -> Result<Field> {
        let mut values = Vec::with_capacity(grid.len());
        for (i, z) in grid.nodes().enumerate() {
            let e = (factor * self.phi(z)).exp();
            if !e.is_finite() || e == 0.0 {
                return Err(Error::DynamicRange(format!(
                    "exp({factor}·phi) = {e} at node {i} (z = {z}) for weight {}",
                    self.name()
                )));
            }
            values.push(Complex64::new(e, 0.0));
        }
        Field::new(*grid, values)
    }
}

/// Loose description of a catalog weight, for callers that assemble weights
/// from key/value input.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightSpec {
    pub name: String,
    pub t: Option<f64>,
    pub b: Option<f64>,
}

/// Which path produced a curvature margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MarginPath {
    Analytic,
    DiscreteFd4,
}

/// Laplacian normalization used when evaluating the margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `Δ̂ = ¼Δ`.
    Hat,
    /// The full Laplacian `Δ = 4Δ̂`.
    Full,
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    /// `(Δ̂ log Δ̂φ)/Δ̂φ + 2` at each node (real field).
    pub margin_field: Field,
    pub min_margin: f64,
    pub passes: bool,
    pub tolerance: f64,
    pub path: MarginPath,
    /// Node rings excluded from `min_margin` (the fd4 boundary band).
    pub flagged_rings: usize,
}

/// Curvature-type margin evaluated analytically where the catalog provides
/// `Δ̂ log Δ̂φ`, and by fourth-order differences otherwise.
pub fn curvature_margin(w: &Weight, grid: &Grid) -> Result<CurvatureReport> {
    curvature_margin_with_tolerance(w, grid, CURVATURE_TOLERANCE)
}

pub fn curvature_margin_with_tolerance(
    w: &Weight,
    grid: &Grid,
    tolerance: f64,
) -> Result<CurvatureReport> {
    w.validate_on(grid)?;
    if w.lap_hat_log_lap_hat(Complex64::new(0.0, 0.0)).is_none() {
        return curvature_margin_discrete(w, grid, Normalization::Hat, tolerance);
    }
    let margin_field = sample_real(grid, |z| {
        let l = w.lap_hat_phi(z);
        w.lap_hat_log_lap_hat(z).expect("analytic path") / l + 2.0
    })?;
    Ok(finish(margin_field, tolerance, MarginPath::Analytic, 0))
}

/// Discrete margin from `laplacian_hat(sample(log Δ̂φ))` with the fd4 scheme
/// (the log of a weight is not periodic, so the spectral scheme does not
/// apply). The two outer rings are excluded.
pub fn curvature_margin_discrete(
    w: &Weight,
    grid: &Grid,
    normalization: Normalization,
    tolerance: f64,
) -> Result<CurvatureReport> {
    w.validate_on(grid)?;
    let scale = match normalization {
        Normalization::Hat => 1.0,
        Normalization::Full => 4.0,
    };
    let log_lap = sample_real(grid, |z| (scale * w.lap_hat_phi(z)).ln())?;
    let lap_log = laplacian_hat(&log_lap, Scheme::Fd4);
    let rings = Scheme::Fd4.flagged_rings();
    let values = (0..grid.len())
        .map(|i| {
            if grid.in_band(i, rings) {
                Complex64::new(0.0, 0.0)
            } else {
                let z = grid.node(i);
                let num = scale * lap_log.get(i).re;
                Complex64::new(num / (scale * w.lap_hat_phi(z)) + 2.0, 0.0)
            }
        })
        .collect();
    let margin_field = Field::new(*grid, values)?;
    Ok(finish(
        margin_field,
        tolerance,
        MarginPath::DiscreteFd4,
        rings,
    ))
}

fn finish(margin_field: Field, tolerance: f64, path: MarginPath, rings: usize) -> CurvatureReport {
    let g = *margin_field.grid();
    let min_margin = margin_field
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| rings == 0 || !g.in_band(*i, rings))
        .map(|(_, v)| v.re)
        .fold(f64::INFINITY, f64::min);
    CurvatureReport {
        passes: min_margin >= -tolerance,
        min_margin,
        tolerance,
        path,
        flagged_rings: rings,
        margin_field,
    }
}
