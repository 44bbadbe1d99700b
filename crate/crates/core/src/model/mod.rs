//! The Chern–Simons–Dirac system in Coulomb gauge.
//!
//! The gauge potentials are slaved to the spinor through elliptic solves, so
//! everything here is a function of `ψ` alone.

mod currents;
mod diagnostics;
mod nonlinearity;
mod potentials;
mod quadrilinear;
mod residual;

pub use currents::{currents, CurrentFields, HERMITICITY_TOLERANCE};
pub use diagnostics::{potential_regularity_report, trilinear_l2_ratio, RegularityReport};
pub use nonlinearity::{nonlinearity, nonlinearity_spectral, SignConvention};
pub use potentials::{potentials, GaugePotentials};
pub use quadrilinear::{quadrilinear_form, QuadrilinearValue};
pub use residual::{chern_simons_residual, time_derivative_stencil, ResidualReport};
