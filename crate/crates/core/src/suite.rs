//! Closed-form test functions with exact derivatives.
//!
//! The compliant data of the verification suite are `f = ∂̄(b·p)` where
//! `b(z) = exp(1/(|z−c|²/ρ² − 1))` inside the disk `|z−c| < ρ` (zero
//! outside) and `p` is a polynomial in `z` and `z̄`. Every derivative needed
//! by an oracle is available in closed form.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::{sample, Field};
use crate::grid::Grid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The standard compactly supported bump `exp(1/(|z−c|²/ρ² − 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub center: Complex64,
    pub rho: f64,
}

/// Values of `g(s) = exp(1/(s−1))` and its first two derivatives.
fn profile(s: f64) -> (f64, f64, f64) {
    if s >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let t = s - 1.0;
    let g = (1.0 / t).exp();
    if g == 0.0 {
        return (0.0, 0.0, 0.0);
    }
    let g1 = -g / (t * t);
    let g2 = g / (t * t * t * t) + 2.0 * g / (t * t * t);
    (g, g1, g2)
}

impl Bump {
    pub fn new(center: Complex64, rho: f64) -> Self {
        Self { center, rho }
    }

    pub fn support_radius(&self) -> f64 {
        self.center.norm() + self.rho
    }

    fn s(&self, z: Complex64) -> f64 {
        (z - self.center).norm_sqr() / (self.rho * self.rho)
    }

    pub fn value(&self, z: Complex64) -> f64 {
        profile(self.s(z)).0
    }

    /// `∂̄b = g'(s) (z − c) / ρ²`.
    pub fn dbar(&self, z: Complex64) -> Complex64 {
        let (_, g1, _) = profile(self.s(z));
        (z - self.center) * (g1 / (self.rho * self.rho))
    }

    /// `∂b = g'(s) conj(z − c) / ρ²`.
    pub fn del(&self, z: Complex64) -> Complex64 {
        self.dbar(z).conj()
    }

    /// `Δ̂b = g''(s) |z−c|²/ρ⁴ + g'(s)/ρ²`.
    pub fn lap_hat(&self, z: Complex64) -> f64 {
        let r2 = self.rho * self.rho;
        let w2 = (z - self.center).norm_sqr();
        let (_, g1, g2) = profile(w2 / r2);
        g2 * w2 / (r2 * r2) + g1 / r2
    }
}

/// A smooth radial cutoff equal to 1 on `|z−c| ≤ inner` and 0 for
/// `|z−c| ≥ outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoff {
    pub center: Complex64,
    pub inner: f64,
    pub outer: f64,
}

impl Cutoff {
    pub fn new(center: Complex64, inner: f64, outer: f64) -> Self {
        assert!(0.0 < inner && inner < outer);
        Self {
            center,
            inner,
            outer,
        }
    }

    pub fn value(&self, z: Complex64) -> f64 {
        let psi = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
        let t = (self.outer - (z - self.center).norm()) / (self.outer - self.inner);
        let a = psi(t);
        let b = psi(1.0 - t);
        if a + b == 0.0 {
            0.0
        } else {
            a / (a + b)
        }
    }
}

/// Polynomial `Σ a_pq z^p z̄^q`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    pub terms: Vec<(u32, u32, Complex64)>,
}

fn mono(z: Complex64, p: u32, q: u32) -> Complex64 {
    z.powu(p) * z.conj().powu(q)
}

impl Poly {
    pub fn constant(c: Complex64) -> Self {
        Self {
            terms: vec![(0, 0, c)],
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(p, q, _)| p + q).max().unwrap_or(0)
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|&(p, q, a)| a * mono(z, p, q)).sum()
    }

    pub fn dbar(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.1 > 0)
            .map(|&(p, q, a)| a * q as f64 * mono(z, p, q - 1))
            .sum()
    }

    pub fn del(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.0 > 0)
            .map(|&(p, q, a)| a * p as f64 * mono(z, p - 1, q))
            .sum()
    }

    pub fn lap_hat(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.0 > 0 && t.1 > 0)
            .map(|&(p, q, a)| a * (p * q) as f64 * mono(z, p - 1, q - 1))
            .sum()
    }
}

/// A bump times a polynomial: the test function `v = b·p` of the suite.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpPoly {
    pub bump: Bump,
    pub poly: Poly,
}

impl BumpPoly {
    pub fn value(&self, z: Complex64) -> Complex64 {
        let b = self.bump.value(z);
        if b == 0.0 {
            return ZERO;
        }
        self.poly.value(z) * b
    }

    pub fn dbar(&self, z: Complex64) -> Complex64 {
        let b = self.bump.value(z);
        if b == 0.0 {
            return ZERO;
        }
        self.bump.dbar(z) * self.poly.value(z) + self.poly.dbar(z) * b
    }

    pub fn del(&self, z: Complex64) -> Complex64 {
        let b = self.bump.value(z);
        if b == 0.0 {
            return ZERO;
        }
        self.bump.del(z) * self.poly.value(z) + self.poly.del(z) * b
    }

    pub fn lap_hat(&self, z: Complex64) -> Complex64 {
        let b = self.bump.value(z);
        if b == 0.0 {
            return ZERO;
        }
        self.poly.value(z) * self.bump.lap_hat(z)
            + self.bump.del(z) * self.poly.dbar(z)
            + self.bump.dbar(z) * self.poly.del(z)
            + self.poly.lap_hat(z) * b
    }

    pub fn sample_value(&self, grid: &Grid) -> Result<Field> {
        sample(grid, |z| self.value(z))
    }

    pub fn sample_dbar(&self, grid: &Grid) -> Result<Field> {
        sample(grid, |z| self.dbar(z))
    }

    pub fn sample_del(&self, grid: &Grid) -> Result<Field> {
        sample(grid, |z| self.del(z))
    }

    pub fn sample_lap_hat(&self, grid: &Grid) -> Result<Field> {
        sample(grid, |z| self.lap_hat(z))
    }

    pub fn support_radius(&self) -> f64 {
        self.bump.support_radius()
    }
}

/// Parameters of the seeded suite generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteParams {
    /// Bump centers are drawn uniformly from the disk of this radius.
    pub max_center: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    /// Total degree bound of the polynomial factor.
    pub degree: u32,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            max_center: 1.0,
            rho_min: 2.0,
            rho_max: 3.0,
            degree: 4,
        }
    }
}

fn unit_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let th = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
    Complex64::from_polar(r, th)
}

/// `count` seeded test functions `b·p`: bump centers in a disk, radii in
/// `[rho_min, rho_max]`, polynomial coefficients uniform in the unit disk.
pub fn bump_suite(seed: u64, count: usize, params: SuiteParams) -> Vec<BumpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let center = unit_disk(&mut rng, params.max_center);
            let rho = rng.gen_range(params.rho_min..=params.rho_max);
            let mut terms = Vec::new();
            for p in 0..=params.degree {
                for q in 0..=(params.degree - p) {
                    terms.push((p, q, unit_disk(&mut rng, 1.0)));
                }
            }
            BumpPoly {
                bump: Bump::new(center, rho),
                poly: Poly { terms },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_dbar<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64) -> Complex64 {
        let e = 1e-5;
        let dx = (f(z + e) - f(z - e)) / (2.0 * e);
        let dy = (f(z + Complex64::new(0.0, e)) - f(z - Complex64::new(0.0, e))) / (2.0 * e);
        (dx + Complex64::i() * dy) * 0.5
    }

    fn fd_del<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64) -> Complex64 {
        let e = 1e-5;
        let dx = (f(z + e) - f(z - e)) / (2.0 * e);
        let dy = (f(z + Complex64::new(0.0, e)) - f(z - Complex64::new(0.0, e))) / (2.0 * e);
        (dx - Complex64::i() * dy) * 0.5
    }

    #[test]
    fn closed_form_derivatives_match_finite_differences() {
        let suite = bump_suite(7, 4, SuiteParams::default());
        let pts = [
            Complex64::new(0.3, -0.2),
            Complex64::new(1.1, 0.7),
            Complex64::new(-0.9, 1.4),
        ];
        for v in &suite {
            for &z in &pts {
                let scale = 1.0 + v.value(z).norm();
                let d = v.dbar(z) - fd_dbar(|w| v.value(w), z);
                assert!(d.norm() < 1e-6 * scale * 10.0, "dbar {d}");
                let d = v.del(z) - fd_del(|w| v.value(w), z);
                assert!(d.norm() < 1e-6 * scale * 10.0, "del {d}");
                // Δ̂ = ∂ ∂̄
                let l = v.lap_hat(z) - fd_del(|w| v.dbar(w), z);
                assert!(l.norm() < 1e-5 * scale * 10.0, "lap {l}");
            }
        }
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let b = Bump::new(Complex64::new(0.5, 0.0), 1.0);
        assert_eq!(b.value(Complex64::new(1.6, 0.0)), 0.0);
        assert_eq!(b.dbar(Complex64::new(1.5, 0.0)), ZERO);
        assert!((b.value(Complex64::new(0.5, 0.0)) - (-1.0f64).exp()).abs() < 1e-15);
        // Extremely close to the edge the profile must stay finite.
        let edge = Complex64::new(0.5 + 1.0 - 1e-300, 0.0);
        assert!(b.lap_hat(edge).is_finite());
    }

    #[test]
    fn cutoff_has_plateau() {
        let c = Cutoff::new(ZERO, 1.0, 2.0);
        assert_eq!(c.value(Complex64::new(0.9, 0.0)), 1.0);
        assert_eq!(c.value(Complex64::new(2.1, 0.0)), 0.0);
        let mid = c.value(Complex64::new(1.5, 0.0));
        assert!((mid - 0.5).abs() < 1e-12);
    }

    #[test]
    fn suite_is_seeded_and_bounded() {
        let a = bump_suite(42, 20, SuiteParams::default());
        let b = bump_suite(42, 20, SuiteParams::default());
        assert_eq!(a, b);
        assert_ne!(a, bump_suite(43, 20, SuiteParams::default()));
        for v in &a {
            assert!(v.bump.center.norm() <= 1.0);
            assert!((2.0..=3.0).contains(&v.bump.rho));
            assert!(v.support_radius() <= 4.0);
            assert_eq!(v.poly.degree(), 4);
            assert!(v.poly.terms.iter().all(|t| t.2.norm() <= 1.0));
        }
    }
}
