//! Cell-centered uniform grids on the square `[-R, R]²`.
//!
//! Nodes are stored in row-major order: the node with column index `j`
//! (x direction) and row index `k` (y direction) lives at flat index
//! `k * n + j`, and sits at
//!
//! ```text
//! z_jk = (-R + (j + 1/2) h) + i (-R + (k + 1/2) h),   h = 2R / n.
//! ```
//!
//! This ordering is fixed; CSV dumps and every FFT-based operator rely on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible number of points per axis.
pub const MIN_POINTS: usize = 8;

/// Fraction of the half-side treated as the boundary band in which data
/// must be negligible.
pub const BOUNDARY_BAND_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    radius: f64,
    n: usize,
    spacing: f64,
}

impl Grid {
    /// Builds the `n × n` cell-centered grid on `[-radius, radius]²`.
    pub fn new(radius: f64, n: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grid radius must be positive and finite, got {radius}"
            )));
        }
        if n < MIN_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {MIN_POINTS} points per axis, got {n}"
            )));
        }
        Ok(Self {
            radius,
            n,
            spacing: 2.0 * radius / n as f64,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Total number of nodes, `n²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Midpoint-rule weight of one cell, `h²`.
    pub fn cell_area(&self) -> f64 {
        self.spacing * self.spacing
    }

    /// 1D coordinate of the `i`-th cell center along either axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.radius + (i as f64 + 0.5) * self.spacing
    }

    /// Flat row-major index of column `j`, row `k`.
    #[inline]
    pub fn index(&self, j: usize, k: usize) -> usize {
        k * self.n + j
    }

    /// `(j, k)` for a flat index.
    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx % self.n, idx / self.n)
    }

    #[inline]
    pub fn node(&self, idx: usize) -> Complex64 {
        let (j, k) = self.split(idx);
        Complex64::new(self.coord(j), self.coord(k))
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    /// Distance from node `idx` to the boundary of the square.
    pub fn distance_to_boundary(&self, idx: usize) -> f64 {
        let z = self.node(idx);
        (self.radius - z.re.abs()).min(self.radius - z.im.abs())
    }

    /// Number of node rings making up the outer band of width
    /// `fraction * n` (at least one ring).
    pub fn band_rings(&self, fraction: f64) -> usize {
        ((fraction * self.n as f64).ceil() as usize).max(1)
    }

    /// True if the node lies within the outermost `rings` rings.
    #[inline]
    pub fn in_band(&self, idx: usize, rings: usize) -> bool {
        let (j, k) = self.split(idx);
        j < rings || k < rings || j + rings >= self.n || k + rings >= self.n
    }

    /// True if the node is outside the standard 5% boundary band.
    pub fn is_interior(&self, idx: usize) -> bool {
        !self.in_band(idx, self.band_rings(BOUNDARY_BAND_FRACTION))
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        QuadratureSpec {
            rule: QuadratureRule::Midpoint,
            cell_area: self.cell_area(),
            nodes: self.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    /// Cell-centered midpoint rule, weight `h²` per node.
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rule: QuadratureRule,
    pub cell_area: f64,
    pub nodes: usize,
}

impl QuadratureSpec {
    /// Sum of all weights; equals the area `(2R)²` of the square.
    pub fn total_weight(&self) -> f64 {
        self.cell_area * self.nodes as f64
    }
}
