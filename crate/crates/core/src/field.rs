//! Complex fields sampled on a [`Grid`] and midpoint quadrature over them.

use std::io::{self, Write};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{Grid, BOUNDARY_BAND_FRACTION};

/// A complex-valued function sampled at the nodes of a grid, in row-major
/// node order. Fields are immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
}

impl Field {
    /// Wraps raw node values, checking length and finiteness.
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some((index, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Sampling {
                index,
                value: v.to_string(),
            });
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_vec_unchecked(grid: Grid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Real-valued field from real node values.
    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self> {
        Self::new(
            grid,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    pub fn re(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.im).collect()
    }

    pub fn conj(&self) -> Field {
        self.map(|_, v| v.conj())
    }

    /// Pointwise `|v|²` as a real field.
    pub fn abs_sq(&self) -> Field {
        self.map(|_, v| Complex64::new(v.norm_sqr(), 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Field {
        self.map(|_, v| v * c)
    }

    /// Applies `op(node, value)` at every node.
    pub fn map<F>(&self, op: F) -> Field
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    {
        let grid = self.grid;
        let values = self
            .values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| op(grid.node(i), v))
            .collect();
        Field::from_vec_unchecked(grid, values)
    }

    /// Like [`Field::map`] but fails on the first non-finite result.
    pub fn try_map<F>(&self, op: F) -> Result<Field>
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    {
        Field::new(self.grid, self.map(op).values)
    }

    pub fn zip_with<F>(&self, other: &Field, op: F) -> Result<Field>
    where
        F: Fn(Complex64, Complex64) -> Complex64 + Sync,
    {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .par_iter()
            .zip(other.values.par_iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Field::from_vec_unchecked(self.grid, values))
    }

    /// Midpoint-rule approximation of `∫ v dA`: `h² Σ v(z_jk)`.
    ///
    /// The sum is always accumulated sequentially in node order, so the
    /// result does not depend on the thread schedule.
    pub fn integrate(&self) -> Complex64 {
        let s: Complex64 = self.values.iter().sum();
        s * self.grid.cell_area()
    }

    /// `∫ |v|² w dA` for a strictly positive weight field `w` (only the real
    /// part of `w` is used).
    pub fn weighted_norm_sq(&self, w: &Field) -> Result<f64> {
        if self.grid != w.grid {
            return Err(Error::GridMismatch);
        }
        if let Some((index, wv)) = w
            .values
            .iter()
            .enumerate()
            .find(|(_, wv)| !(wv.re > 0.0) || !wv.re.is_finite())
        {
            return Err(Error::InvalidWeight {
                index,
                value: wv.re,
            });
        }
        let s: f64 = self
            .values
            .iter()
            .zip(&w.values)
            .map(|(v, wv)| v.norm_sqr() * wv.re)
            .sum();
        Ok(s * self.grid.cell_area())
    }

    /// Unweighted `∫ |v|² dA`.
    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        s * self.grid.cell_area()
    }

    /// `∫ |v| dA`.
    pub fn norm_l1(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm()).sum();
        s * self.grid.cell_area()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Maximum of `|v|` over the nodes selected by `keep`.
    pub fn max_abs_where<P: Fn(usize) -> bool>(&self, keep: P) -> f64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Maximum of `|v|` away from the 5% boundary band.
    pub fn max_abs_interior(&self) -> f64 {
        let g = self.grid;
        self.max_abs_where(|i| g.is_interior(i))
    }

    /// Ratio of the largest value in the 5% boundary band to the largest
    /// value overall (0 for the zero field).
    pub fn boundary_mass(&self) -> f64 {
        let total = self.max_abs();
        if total == 0.0 {
            return 0.0;
        }
        let g = self.grid;
        let rings = g.band_rings(BOUNDARY_BAND_FRACTION);
        self.max_abs_where(|i| g.in_band(i, rings)) / total
    }

    /// Writes the field as CSV: header `re,im,val_re,val_im`, one row per
    /// node in row-major order, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "re,im,val_re,val_im")?;
        for (i, v) in self.values.iter().enumerate() {
            let z = self.grid.node(i);
            writeln!(
                out,
                "{},{},{},{}",
                fmt_sig17(z.re),
                fmt_sig17(z.im),
                fmt_sig17(v.re),
                fmt_sig17(v.im)
            )?;
        }
        Ok(())
    }
}

/// Decimal rendering with 17 significant digits (scientific notation).
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Samples a closed-form function at every node of `grid`.
pub fn sample<F>(grid: &Grid, f: F) -> Result<Field>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|i| f(grid.node(i)))
        .collect();
    Field::new(*grid, values)
}

/// Samples a real closed-form function.
pub fn sample_real<F>(grid: &Grid, f: F) -> Result<Field>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    sample(grid, |z| Complex64::new(f(z), 0.0))
}

impl<'a> Add<&'a Field> for &'a Field {
    type Output = Field;
    fn add(self, rhs: &'a Field) -> Field {
        self.zip_with(rhs, |a, b| a + b)
            .expect("grid mismatch in field addition")
    }
}

impl<'a> Sub<&'a Field> for &'a Field {
    type Output = Field;
    fn sub(self, rhs: &'a Field) -> Field {
        self.zip_with(rhs, |a, b| a - b)
            .expect("grid mismatch in field subtraction")
    }
}

impl<'a> Mul<&'a Field> for &'a Field {
    type Output = Field;
    fn mul(self, rhs: &'a Field) -> Field {
        self.zip_with(rhs, |a, b| a * b)
            .expect("grid mismatch in field product")
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.map(|_, v| -v)
    }
}
