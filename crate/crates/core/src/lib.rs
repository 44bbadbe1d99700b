//! Pseudo-spectral kernels for the Chern–Simons–Dirac system in Coulomb gauge
//! on the periodic torus `[0, L)²`, together with an exact admissibility checker
//! for bilinear wave-Sobolev product estimates.
//!
//! The crate is `no_std` (it needs `alloc`). Discrete Fourier transforms are
//! delegated to an [`FftBackend`]; [`NaiveDft`] is a slow reference backend
//! that works everywhere, and the `csd-sim` crate supplies a fast one.
//!
//! Layout:
//!
//! - [`grid`], [`field`], [`dirac`], [`multiplier`], [`spectral`]: torus grid,
//!   field storage, Dirac matrix algebra, Fourier multipliers and the
//!   half-wave projections.
//! - [`model`]: currents, Coulomb-gauge potentials, the cubic nonlinearity,
//!   constraint residuals and the quadrilinear form.
//! - [`integrator`]: interaction-picture RK4 for the split half-wave system.
//! - [`spacetime`]: discrete `H^s`, `X^{s,b}_±` and `H^{s,b}` estimators.
//! - [`admissibility`]: exact evaluation of the product-estimate conditions.

#![no_std]

extern crate alloc;

pub mod admissibility;
pub mod dirac;
pub mod error;
pub mod fft;
pub mod field;
pub mod grid;
pub mod integrator;
pub mod model;
pub mod multiplier;
pub mod spacetime;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
pub use fft::{Direction, FftBackend, NaiveDft};
pub use field::{RealField, Representation, ScalarField, Spinor2, SpinorField};
pub use grid::TorusGrid;
pub use spectral::{HalfWave, Torus};

pub use num_complex::Complex64;
