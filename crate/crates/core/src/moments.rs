//! Moment functionals, the bilinear pairing, the two-variable Fourier
//! transform evaluated at complex arguments, its restriction to the diagonal
//! `η = iξ`, and a probe of the Gaussian Bargmann-type identity.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{fmt_sig17, Field};

/// Largest admissible `R·(|Im ξ| + |Im η|)` in [`fourier2`].
pub const FOURIER_EXPONENT_GUARD: f64 = 30.0;

/// Default number of moments `J` (moments `m_0..=m_J`).
pub const DEFAULT_MOMENT_COUNT: usize = 10;

/// Relative agreement required for a Bargmann reading to count as a match.
pub const BARGMANN_MATCH_TOL: f64 = 1e-4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `m_j = ∫ z^j f dA` for `j = 0..=j_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentVector {
    pub j_max: usize,
    pub m: Vec<Complex64>,
}

impl MomentVector {
    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

pub fn moments(f: &Field, j_max: usize) -> MomentVector {
    let g = f.grid();
    let mut m = vec![ZERO; j_max + 1];
    for (i, &v) in f.values().iter().enumerate() {
        if v == ZERO {
            continue;
        }
        let z = g.node(i);
        let mut p = v;
        for mj in m.iter_mut() {
            *mj += p;
            p *= z;
        }
    }
    let area = g.cell_area();
    for mj in m.iter_mut() {
        *mj *= area;
    }
    MomentVector { j_max, m }
}

/// Absolute moments `∫ |z|^j |f| dA` for `j = 0..=j_max`.
pub fn abs_moments(f: &Field, j_max: usize) -> Vec<f64> {
    let g = f.grid();
    let mut e = vec![0.0; j_max + 1];
    for (i, v) in f.values().iter().enumerate() {
        let a = v.norm();
        if a == 0.0 {
            continue;
        }
        let r = g.node(i).norm();
        let mut p = a;
        for ej in e.iter_mut() {
            *ej += p;
            p *= r;
        }
    }
    e.iter().map(|x| x * g.cell_area()).collect()
}

/// The bilinear pairing `∫ f g dA` (no conjugation).
pub fn pairing(f: &Field, g: &Field) -> Result<Complex64> {
    Ok(f.zip_with(g, |a, b| a * b)?.integrate())
}

/// `f̂(ξ, η) = ∫ e^{−i(ξx + ηy)} f(x + iy) dx dy` by direct quadrature of
/// the analytically continued exponential. The kernel factors over the two
/// axes, so the sum is taken row by row.
pub fn fourier2(f: &Field, xi: Complex64, eta: Complex64) -> Result<Complex64> {
    let g = f.grid();
    let r = g.radius();
    let growth = r * (xi.im.abs() + eta.im.abs());
    if !(growth <= FOURIER_EXPONENT_GUARD) {
        return Err(Error::DynamicRange(format!(
            "moments-fourier: R·(|Im ξ| + |Im η|) = {growth} exceeds {FOURIER_EXPONENT_GUARD} \
             at ξ = {xi}, η = {eta}"
        )));
    }
    let n = g.n();
    let minus_i = Complex64::new(0.0, -1.0);
    let ex: Vec<Complex64> = (0..n).map(|j| (minus_i * xi * g.coord(j)).exp()).collect();
    let mut total = ZERO;
    for k in 0..n {
        let row = &f.values()[k * n..(k + 1) * n];
        if row.iter().all(|v| *v == ZERO) {
            continue;
        }
        let s: Complex64 = row.iter().zip(&ex).map(|(v, e)| v * e).sum();
        total += (minus_i * eta * g.coord(k)).exp() * s;
    }
    let out = total * g.cell_area();
    if !out.is_finite() {
        return Err(Error::DynamicRange(format!(
            "moments-fourier: transform at ξ = {xi}, η = {eta} is not finite"
        )));
    }
    Ok(out)
}

/// The default diagonal sample set: `ξ ∈ {−2, −1.9, …, 2}` plus 16 points
/// on the unit circle.
pub fn default_diagonal_samples() -> Vec<Complex64> {
    let mut xs: Vec<Complex64> = (-20..=20)
        .map(|k| Complex64::new(k as f64 / 10.0, 0.0))
        .collect();
    xs.extend((0..16).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 16.0)));
    xs
}

/// `f̂(ξ, iξ)` next to its moment series `Σ_{j≤J} (−iξ)^j m_j / j!`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalSeries {
    pub xi_samples: Vec<Complex64>,
    pub values: Vec<Complex64>,
    pub series_values: Vec<Complex64>,
    /// Bound on `|values − series_values|` from the dropped terms,
    /// `Σ_{j>J} |ξ|^j/j! ∫|z|^j|f|`.
    pub truncation_bound: Vec<f64>,
    pub j_max: usize,
}

impl DiagonalSeries {
    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation `|f̂(ξ, iξ) − c|` from a constant `c`.
    pub fn max_deviation_from(&self, c: Complex64) -> f64 {
        self.values
            .iter()
            .map(|v| (v - c).norm())
            .fold(0.0, f64::max)
    }

    /// Columns `xi_re,xi_im,fhat_re,fhat_im,series_re,series_im`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "xi_re,xi_im,fhat_re,fhat_im,series_re,series_im")?;
        for ((x, v), s) in self
            .xi_samples
            .iter()
            .zip(&self.values)
            .zip(&self.series_values)
        {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_sig17(x.re),
                fmt_sig17(x.im),
                fmt_sig17(v.re),
                fmt_sig17(v.im),
                fmt_sig17(s.re),
                fmt_sig17(s.im)
            )?;
        }
        Ok(())
    }
}

/// Extra absolute moments summed explicitly before the geometric tail bound.
const TAIL_TERMS: usize = 60;

pub fn diagonal_restriction(
    f: &Field,
    xi_samples: &[Complex64],
    j_max: usize,
) -> Result<DiagonalSeries> {
    let mv = moments(f, j_max);
    let env = abs_moments(f, j_max + TAIL_TERMS);
    let g = f.grid();
    let r_max = std::f64::consts::SQRT_2 * g.radius();
    let i = Complex64::new(0.0, 1.0);
    let values = xi_samples
        .par_iter()
        .map(|&xi| fourier2(f, xi, i * xi))
        .collect::<Result<Vec<_>>>()?;
    let series_values = xi_samples
        .iter()
        .map(|&xi| {
            let mut term = Complex64::new(1.0, 0.0);
            let mut s = ZERO;
            for (j, m) in mv.m.iter().enumerate() {
                if j > 0 {
                    term *= -i * xi / j as f64;
                }
                s += term * m;
            }
            s
        })
        .collect();
    let truncation_bound = xi_samples
        .iter()
        .map(|xi| truncation_bound(xi.norm(), &env, j_max, r_max, f.norm_l1()))
        .collect();
    Ok(DiagonalSeries {
        xi_samples: xi_samples.to_vec(),
        values,
        series_values,
        truncation_bound,
        j_max,
    })
}

/// `Σ_{j>J} a^j/j! e_j`, explicit while the envelope is tabulated and then
/// bounded by a geometric series using `e_j ≤ r_max^j ‖f‖₁`.
fn truncation_bound(a: f64, env: &[f64], j_max: usize, r_max: f64, l1: f64) -> f64 {
    let mut coef = 1.0;
    let mut sum = 0.0;
    for (j, e) in env.iter().enumerate() {
        if j > 0 {
            coef *= a / j as f64;
        }
        if j > j_max {
            sum += coef * e;
        }
    }
    // Remaining terms: j ≥ env.len(), each ≤ (a r_max)^j / j! ‖f‖₁.
    let mut j = env.len();
    let mut term = (0..j).fold(1.0, |t, k| t * a * r_max / (k + 1) as f64) * l1;
    loop {
        let q = a * r_max / (j + 1) as f64;
        if q < 0.5 {
            return sum + term / (1.0 - q);
        }
        sum += term;
        term *= q;
        j += 1;
    }
}

/// Which reading of the right-hand side matches the stated constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// `∫ |f(x)| e^{x²/β} dx`.
    Literal,
    /// `∫ |f(x)|² e^{x²/β} dx`.
    Quadratic,
    Both,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BargmannReport {
    pub beta: f64,
    pub a: f64,
    pub amplitude: f64,
    /// `2π^{3/2}/√β`.
    pub constant: f64,
    /// `∫_ℂ |f̂(ξ)|² e^{−β (Im ξ)²} dA(ξ)`.
    pub lhs: f64,
    /// `constant · ∫ |f| e^{x²/β} dx`.
    pub rhs_literal: f64,
    /// `constant · ∫ |f|² e^{x²/β} dx`.
    pub rhs_quadratic: f64,
    pub literal_rel_err: f64,
    pub quadratic_rel_err: f64,
    pub matching: Reading,
    /// Share of the left-hand quadrature carried by the outermost ring of
    /// the truncated ξ box.
    pub truncation_mass: f64,
}

/// Quadrature controls for [`bargmann_probe`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannQuadrature {
    /// Points per axis of the ξ box.
    pub xi_points: usize,
    /// Spacing of the x quadrature.
    pub x_spacing: f64,
    /// Box half-widths are chosen so the integrand drops by `e^{−decay}`.
    pub decay: f64,
}

impl Default for BargmannQuadrature {
    fn default() -> Self {
        Self {
            xi_points: 400,
            x_spacing: 0.05,
            decay: 40.0,
        }
    }
}

pub fn bargmann_probe(beta: f64, a: f64, amplitude: f64) -> Result<BargmannReport> {
    bargmann_probe_with(beta, a, amplitude, BargmannQuadrature::default())
}

/// Probes `∫_ℂ |f̂|² e^{−β|Im ξ|²} dA = (2π^{3/2}/√β) ∫_ℝ |f|^p e^{x²/β} dx`
/// for `f(x) = amplitude·e^{−a x²}` and `p ∈ {1, 2}`. The transform `f̂` is
/// itself computed by quadrature of `f` at complex `ξ`.
pub fn bargmann_probe_with(
    beta: f64,
    a: f64,
    amplitude: f64,
    q: BargmannQuadrature,
) -> Result<BargmannReport> {
    if !(beta > 0.0 && beta.is_finite() && a.is_finite() && amplitude.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "moments-fourier: bargmann probe needs finite beta > 0, got beta = {beta}, a = {a}"
        )));
    }
    if !(a > 1.0 / beta) {
        return Err(Error::InvalidArgument(format!(
            "moments-fourier: bargmann probe needs a > 1/beta, got a = {a}, beta = {beta}"
        )));
    }
    let f = |x: f64| amplitude * (-a * x * x).exp();

    // Integrand in ξ = s + it is |f̂|² e^{−βt²}, which for the Gaussian
    // behaves like e^{−s²/(2a)} e^{−(β − 1/(2a)) t²}.
    let s_max = (2.0 * a * q.decay).sqrt();
    let t_max = (q.decay / (beta - 0.5 / a)).sqrt();
    // x range where e^{−a x² + t_max |x|} has dropped far below its peak.
    let x_max = (t_max + (2.0 * t_max * t_max + 4.0 * a * (q.decay + 6.0)).sqrt()) / (2.0 * a);
    let nx = (2.0 * x_max / q.x_spacing).ceil() as usize;
    let hx = 2.0 * x_max / nx as f64;
    let xs: Vec<f64> = (0..nx).map(|j| -x_max + (j as f64 + 0.5) * hx).collect();
    let fx: Vec<f64> = xs.iter().map(|&x| f(x) * hx).collect();

    let m = q.xi_points;
    let hs = 2.0 * s_max / m as f64;
    let ht = 2.0 * t_max / m as f64;
    let ss: Vec<f64> = (0..m).map(|j| -s_max + (j as f64 + 0.5) * hs).collect();
    let ts: Vec<f64> = (0..m).map(|k| -t_max + (k as f64 + 0.5) * ht).collect();
    // e^{−isx}, one row per s.
    let phase: Vec<Complex64> = ss
        .iter()
        .flat_map(|&s| xs.iter().map(move |&x| Complex64::from_polar(1.0, -s * x)))
        .collect();

    // Row k holds |f̂(s_j + i t_k)|² e^{−β t_k²} for all j.
    let rows: Vec<Vec<f64>> = ts
        .par_iter()
        .map(|&t| {
            let gt: Vec<f64> = xs
                .iter()
                .zip(&fx)
                .map(|(&x, &fv)| (t * x).exp() * fv)
                .collect();
            let damp = (-beta * t * t).exp();
            (0..m)
                .map(|j| {
                    let row = &phase[j * nx..(j + 1) * nx];
                    let fh: Complex64 = row.iter().zip(&gt).map(|(p, g)| p * g).sum();
                    fh.norm_sqr() * damp
                })
                .collect()
        })
        .collect();
    let mut total = 0.0;
    let mut ring = 0.0;
    for (k, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            total += v;
            if j == 0 || k == 0 || j + 1 == m || k + 1 == m {
                ring += v;
            }
        }
    }
    let lhs = total * hs * ht;
    let truncation_mass = if total > 0.0 { ring / total } else { 0.0 };
    if truncation_mass > 1e-10 {
        log::warn!("moments-fourier: ξ-box truncation mass {truncation_mass:e}");
    }

    let constant = 2.0 * PI.powf(1.5) / beta.sqrt();
    // 1D integrals on a range wide enough for e^{−(a − 1/β) x²}.
    let decay_rate = a - 1.0 / beta;
    let y_max = ((q.decay + 6.0) / decay_rate).sqrt();
    let ny = (2.0 * y_max / q.x_spacing).ceil() as usize;
    let hy = 2.0 * y_max / ny as f64;
    let (mut lit, mut quad) = (0.0, 0.0);
    for j in 0..ny {
        let y = -y_max + (j as f64 + 0.5) * hy;
        let e = (y * y / beta).exp();
        let v = f(y).abs();
        lit += v * e;
        quad += v * v * e;
    }
    let rhs_literal = constant * lit * hy;
    let rhs_quadratic = constant * quad * hy;
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
    let literal_rel_err = rel(lhs, rhs_literal);
    let quadratic_rel_err = rel(lhs, rhs_quadratic);
    let matching = match (
        literal_rel_err < BARGMANN_MATCH_TOL,
        quadratic_rel_err < BARGMANN_MATCH_TOL,
    ) {
        (true, true) => Reading::Both,
        (true, false) => Reading::Literal,
        (false, true) => Reading::Quadratic,
        (false, false) => Reading::Neither,
    };
    Ok(BargmannReport {
        beta,
        a,
        amplitude,
        constant,
        lhs,
        rhs_literal,
        rhs_quadratic,
        literal_rel_err,
        quadratic_rel_err,
        matching,
        truncation_mass,
    })
}
