//! The complex differential operators `∂̄ = ½(∂x + i∂y)`, `∂ = ½(∂x − i∂y)`
//! and the normalized Laplacian `Δ̂ = ¼(∂x² + ∂y²)` on grid fields.
//!
//! Two discretizations are provided:
//!
//! * [`Scheme::Spectral`] treats the field as periodic on the square and
//!   differentiates with FFT symbols along each axis. It is only meaningful
//!   for data that vanish near the boundary.
//! * [`Scheme::Fd4`] uses fourth-order centered stencils. No one-sided
//!   stencils are used: the outermost two node rings are set to zero and
//!   reported through [`Scheme::flagged_rings`].
//!
//! Both schemes act on the real and imaginary parts separately with real
//! arithmetic, which makes `del(conj v) == conj(dbar v)` hold bit for bit.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Spectral,
    Fd4,
}

impl Scheme {
    /// Number of outer node rings whose derivative values are zeroed.
    pub fn flagged_rings(self) -> usize {
        match self {
            Scheme::Spectral => 0,
            Scheme::Fd4 => 2,
        }
    }

    /// Formal order of accuracy (spectral is reported as `usize::MAX`).
    pub fn order(self) -> usize {
        match self {
            Scheme::Spectral => usize::MAX,
            Scheme::Fd4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Spectral => "spectral",
            Scheme::Fd4 => "fd4",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spectral" => Ok(Scheme::Spectral),
            "fd4" => Ok(Scheme::Fd4),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown scheme `{other}` (expected spectral or fd4)"
            ))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

/// Angular wavenumber of FFT bin `i` on a periodic interval of `n` cells of
/// width `h`.
pub(crate) fn wavenumber(i: usize, n: usize, h: f64) -> f64 {
    let m = if i <= n / 2 {
        i as f64
    } else {
        i as f64 - n as f64
    };
    2.0 * std::f64::consts::PI * m / (n as f64 * h)
}

struct AxisFft {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl AxisFft {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }
}

/// Multiplies each length-`n` row of `data` by `symbol` in Fourier space.
fn spectral_rows(data: &[f64], n: usize, symbol: &[Complex64], fft: &AxisFft) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    let scale = 1.0 / n as f64;
    out.par_chunks_mut(n)
        .zip(data.par_chunks(n))
        .for_each(|(dst, src)| {
            let mut buf: Vec<Complex64> = src.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            fft.forward.process(&mut buf);
            for (b, s) in buf.iter_mut().zip(symbol) {
                *b *= s;
            }
            fft.inverse.process(&mut buf);
            for (d, b) in dst.iter_mut().zip(&buf) {
                *d = b.re * scale;
            }
        });
    out
}

fn fd4_rows(data: &[f64], n: usize, h: f64, second: bool) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    out.par_chunks_mut(n)
        .zip(data.par_chunks(n))
        .for_each(|(dst, a)| {
            for j in 2..n - 2 {
                dst[j] = if second {
                    (-a[j + 2] + 16.0 * a[j + 1] - 30.0 * a[j] + 16.0 * a[j - 1] - a[j - 2])
                        / (12.0 * h * h)
                } else {
                    (-a[j + 2] + 8.0 * a[j + 1] - 8.0 * a[j - 1] + a[j - 2]) / (12.0 * h)
                };
            }
        });
    out
}

fn transpose(data: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    for k in 0..n {
        for j in 0..n {
            out[j * n + k] = data[k * n + j];
        }
    }
    out
}

/// Real-valued derivative operator of a fixed order along both axes.
struct RealDerivative {
    grid: Grid,
    scheme: Scheme,
    second: bool,
    fft: Option<AxisFft>,
    symbol: Vec<Complex64>,
}

impl RealDerivative {
    fn new(grid: &Grid, scheme: Scheme, second: bool) -> Self {
        let n = grid.n();
        let h = grid.spacing();
        let (fft, symbol) = match scheme {
            Scheme::Spectral => {
                let symbol = (0..n)
                    .map(|i| {
                        let k = wavenumber(i, n, h);
                        if second {
                            Complex64::new(-k * k, 0.0)
                        } else if n.is_multiple_of(2) && i == n / 2 {
                            // Nyquist mode has no real first derivative.
                            Complex64::new(0.0, 0.0)
                        } else {
                            Complex64::new(0.0, k)
                        }
                    })
                    .collect();
                (Some(AxisFft::new(n)), symbol)
            }
            Scheme::Fd4 => (None, Vec::new()),
        };
        Self {
            grid: *grid,
            scheme,
            second,
            fft,
            symbol,
        }
    }

    fn apply(&self, data: &[f64], axis: Axis) -> Vec<f64> {
        let n = self.grid.n();
        let run = |d: &[f64]| match self.scheme {
            Scheme::Spectral => spectral_rows(
                d,
                n,
                &self.symbol,
                self.fft.as_ref().expect("spectral plan"),
            ),
            Scheme::Fd4 => fd4_rows(d, n, self.grid.spacing(), self.second),
        };
        match axis {
            Axis::X => run(data),
            Axis::Y => transpose(&run(&transpose(data, n)), n),
        }
    }
}

fn zero_flagged(grid: &Grid, scheme: Scheme, values: &mut [Complex64]) {
    let rings = scheme.flagged_rings();
    if rings == 0 {
        return;
    }
    for (i, v) in values.iter_mut().enumerate() {
        if grid.in_band(i, rings) {
            *v = Complex64::new(0.0, 0.0);
        }
    }
}

/// First partials of the real and imaginary parts.
struct Partials {
    ax: Vec<f64>,
    ay: Vec<f64>,
    bx: Vec<f64>,
    by: Vec<f64>,
}

fn first_partials(v: &Field, scheme: Scheme) -> Partials {
    let d = RealDerivative::new(v.grid(), scheme, false);
    let a = v.re();
    let b = v.im();
    Partials {
        ax: d.apply(&a, Axis::X),
        ay: d.apply(&a, Axis::Y),
        bx: d.apply(&b, Axis::X),
        by: d.apply(&b, Axis::Y),
    }
}

fn assemble<F>(v: &Field, scheme: Scheme, p: &Partials, combine: F) -> Field
where
    F: Fn(f64, f64, f64, f64) -> Complex64,
{
    let mut values: Vec<Complex64> = (0..v.grid().len())
        .map(|i| combine(p.ax[i], p.ay[i], p.bx[i], p.by[i]))
        .collect();
    zero_flagged(v.grid(), scheme, &mut values);
    Field::from_vec_unchecked(*v.grid(), values)
}

/// Discrete `∂̄v = ½(∂x + i∂y) v`.
pub fn dbar(v: &Field, scheme: Scheme) -> Field {
    let p = first_partials(v, scheme);
    assemble(v, scheme, &p, |ax, ay, bx, by| {
        Complex64::new(0.5 * (ax - by), 0.5 * (bx + ay))
    })
}

/// Discrete `∂v = ½(∂x − i∂y) v`.
pub fn del(v: &Field, scheme: Scheme) -> Field {
    let p = first_partials(v, scheme);
    assemble(v, scheme, &p, |ax, ay, bx, by| {
        Complex64::new(0.5 * (ax + by), 0.5 * (bx - ay))
    })
}

/// Both `∂̄v` and `∂v` from one set of partial derivatives.
pub fn dbar_and_del(v: &Field, scheme: Scheme) -> (Field, Field) {
    let p = first_partials(v, scheme);
    let db = assemble(v, scheme, &p, |ax, ay, bx, by| {
        Complex64::new(0.5 * (ax - by), 0.5 * (bx + ay))
    });
    let d = assemble(v, scheme, &p, |ax, ay, bx, by| {
        Complex64::new(0.5 * (ax + by), 0.5 * (bx - ay))
    });
    (db, d)
}

/// Discrete `Δ̂v = ¼(∂x² + ∂y²) v`, built from second-derivative symbols or
/// stencils directly rather than by composing first derivatives.
pub fn laplacian_hat(v: &Field, scheme: Scheme) -> Field {
    let d = RealDerivative::new(v.grid(), scheme, true);
    let a = v.re();
    let b = v.im();
    let axx = d.apply(&a, Axis::X);
    let ayy = d.apply(&a, Axis::Y);
    let bxx = d.apply(&b, Axis::X);
    let byy = d.apply(&b, Axis::Y);
    let mut values: Vec<Complex64> = (0..v.grid().len())
        .map(|i| Complex64::new(0.25 * (axx[i] + ayy[i]), 0.25 * (bxx[i] + byy[i])))
        .collect();
    zero_flagged(v.grid(), scheme, &mut values);
    Field::from_vec_unchecked(*v.grid(), values)
}
