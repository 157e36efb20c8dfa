//! The weighted norm identity
//!
//! ```text
//! ‖∂̄v − v∂̄φ‖² − ‖∂v + v∂φ‖² = 2∫|v|² Δ̂φ dA
//! ```
//!
//! for compactly supported `v`, together with the operators
//! `T = ∂̄ − ∂̄φ`, `T* = −∂ − ∂φ` and the change of picture `v = e^φ u`.

use num_complex::Complex64;
use serde::Serialize;

use crate::diff::{dbar, dbar_and_del, del, Scheme};
use crate::error::{Error, Result};
use crate::field::{sample, Field};
use crate::grid::Grid;
use crate::weights::Weight;

/// Floor for the relative-error denominator.
pub const REL_ERR_FLOOR: f64 = 1e-30;

/// Default pass threshold on `rel_err`.
pub const IDENTITY_REL_TOL: f64 = 1e-6;

/// Boundary mass above which a field is reported as not compactly
/// supported inside the grid.
pub const BOUNDARY_MASS_WARN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    /// `‖Tv‖² − ‖T*v‖²`.
    pub lhs: f64,
    /// `2∫|v|² Δ̂φ dA`.
    pub rhs: f64,
    pub abs_err: f64,
    /// `abs_err / max(|rhs|, 1e-30)`; for `φ = 0` the denominator is `‖∂v‖²`.
    pub rel_err: f64,
    pub scheme: Scheme,
    pub passes: bool,
    pub tolerance: f64,
    pub boundary_mass: f64,
}

/// `Tv = ∂̄v − (∂̄φ) v`.
pub fn apply_t(v: &Field, w: &Weight, scheme: Scheme) -> Result<Field> {
    let dbp = w.sample_dbarphi(v.grid())?;
    let d = dbar(v, scheme);
    d.zip_with(&(&dbp * v), |a, b| a - b)
}

/// `T*v = −∂v − (∂φ) v`.
pub fn apply_tstar(v: &Field, w: &Weight, scheme: Scheme) -> Result<Field> {
    let dp = w.sample_dphi(v.grid())?;
    let d = del(v, scheme);
    d.zip_with(&(&dp * v), |a, b| -a - b)
}

pub fn verify_norm_identity(v: &Field, w: &Weight, scheme: Scheme) -> Result<IdentityReport> {
    verify_norm_identity_with_tolerance(v, w, scheme, IDENTITY_REL_TOL)
}

pub fn verify_norm_identity_with_tolerance(
    v: &Field,
    w: &Weight,
    scheme: Scheme,
    tolerance: f64,
) -> Result<IdentityReport> {
    let grid = v.grid();
    w.check_params()?;
    let boundary_mass = v.boundary_mass();
    if boundary_mass > BOUNDARY_MASS_WARN {
        log::warn!("identity: boundary mass {boundary_mass:e} exceeds {BOUNDARY_MASS_WARN:e}");
    }
    let (db, d) = dbar_and_del(v, scheme);
    let dbp = w.sample_dbarphi(grid)?;
    let dp = w.sample_dphi(grid)?;
    let lap = w.sample_lap_hat_phi(grid)?;
    let tv = db.zip_with(&(&dbp * v), |a, b| a - b)?;
    let tsv = d.zip_with(&(&dp * v), |a, b| a + b)?;
    let t_sq = tv.norm_sq();
    let ts_sq = tsv.norm_sq();
    let lhs = t_sq - ts_sq;
    let rhs = 2.0 * (&v.abs_sq() * &lap).integrate().re;
    let abs_err = (lhs - rhs).abs();
    let denom = if matches!(w, Weight::Flat) {
        ts_sq
    } else {
        rhs.abs()
    };
    let rel_err = abs_err / denom.max(REL_ERR_FLOOR);
    Ok(IdentityReport {
        lhs,
        rhs,
        abs_err,
        rel_err,
        scheme,
        passes: rel_err < tolerance,
        tolerance,
        boundary_mass,
    })
}

/// Multiplies by `e^{factor·φ}`, naming the first node where the factor
/// leaves the floating-point range.
fn times_exp_phi(v: &Field, w: &Weight, factor: f64) -> Result<Field> {
    let e = w.sample_exp(v.grid(), factor)?;
    let out = &e * v;
    Field::new(*v.grid(), out.into_values()).map_err(|err| match err {
        Error::Sampling { index, value } => Error::DynamicRange(format!(
            "identity: e^({factor}·phi)·v = {value} at node {index}"
        )),
        other => other,
    })
}

/// `v = e^φ u`.
pub fn to_dual_picture(u: &Field, w: &Weight) -> Result<Field> {
    times_exp_phi(u, w, 1.0)
}

/// `u = e^{−φ} v`.
pub fn from_dual_picture(v: &Field, w: &Weight) -> Result<Field> {
    times_exp_phi(v, w, -1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelReport {
    /// `max |T*k|` over interior nodes, `k = e^{−φ} conj(g)`.
    pub residual: f64,
    pub boundary_mass: f64,
}

/// Checks whether `k = e^{−φ} ḡ` lies in the kernel of `T*`, which holds
/// exactly when `g` is entire.
pub fn kernel_check<G>(g: G, w: &Weight, grid: &Grid, scheme: Scheme) -> Result<KernelReport>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    let k = sample(grid, |z| (-w.phi(z)).exp() * g(z).conj())?;
    let boundary_mass = k.boundary_mass();
    if boundary_mass > BOUNDARY_MASS_WARN {
        log::warn!("identity: kernel test function has boundary mass {boundary_mass:e}");
    }
    let r = apply_tstar(&k, w, scheme)?;
    Ok(KernelReport {
        residual: r.max_abs_interior(),
        boundary_mass,
    })
}
