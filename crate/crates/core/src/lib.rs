//! Numerical toolkit for the `∂̄`-equation on the plane with growing weights.
//!
//! The crate is organized bottom-up:
//!
//! * [`grid`], [`field`], [`diff`]: cell-centered grids, complex fields,
//!   the operators `∂`, `∂̄`, `Δ̂` and midpoint quadrature.
//! * [`weights`]: closed-form weights `φ` with analytic derivatives and the
//!   curvature-type uniqueness margin.
//! * [`identity`]: the weighted norm identity and the dual-picture operators
//!   `T = ∂̄ − ∂̄φ` and `T* = −∂ − ∂φ`.
//! * [`solver`]: Cauchy-transform solutions, the growing-weight and classical
//!   bounds, the Fock-Bergman projection and the uniqueness probe.
//! * [`moments`]: moment functionals, the two-variable Fourier transform on
//!   the diagonal, and the Gaussian Bargmann probe.
//! * [`suite`]: seeded compactly supported test functions with exact
//!   derivatives.

pub mod diff;
pub mod error;
pub mod field;
pub mod grid;
pub mod identity;
pub mod moments;
pub mod solver;
pub mod suite;
pub mod weights;

pub use diff::{dbar, del, laplacian_hat, Scheme};
pub use error::{Error, Result};
pub use field::{sample, sample_real, Field};
pub use grid::Grid;
