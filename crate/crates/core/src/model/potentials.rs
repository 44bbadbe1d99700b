use crate::error::Result;
use crate::field::{RealField, SpinorField};
use crate::spectral::Torus;

use super::currents::{currents, CurrentFields};

/// Coulomb-gauge potentials `A₀, A₁, A₂` (covariant components).
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePotentials {
    pub a0: RealField,
    pub a1: RealField,
    pub a2: RealField,
}

impl GaugePotentials {
    /// Elliptic solves from given currents:
    ///
    /// `A₀ = Δ⁻¹(∂₂J₁ − ∂₁J₂)`, `A₁ = Δ⁻¹∂₂J₀`, `A₂ = −Δ⁻¹∂₁J₀`,
    ///
    /// with covariant currents `J₀ = J⁰`, `J_j = −J^j` (metric
    /// `diag(1, −1, −1)`). With this placement all three components of
    /// `½ε^{μνρ}F_{νρ} = −J^μ` hold on the mean-free part; see
    /// [`chern_simons_residual`](super::chern_simons_residual).
    pub fn from_currents(torus: &Torus, j: &CurrentFields) -> Result<Self> {
        let lower1 = j.j1.map(|v| -v);
        let lower2 = j.j2.map(|v| -v);
        let t1 = torus.inverse_laplacian_derivative(&lower1, 1)?;
        let t2 = torus.inverse_laplacian_derivative(&lower2, 0)?;
        let a0 = t1.zip_with(&t2, |a, b| a - b)?;
        let a1 = torus.inverse_laplacian_derivative(&j.j0, 1)?;
        let a2 = torus.inverse_laplacian_derivative(&j.j0, 0)?.map(|v| -v);
        Ok(Self { a0, a1, a2 })
    }

    pub fn components(&self) -> [&RealField; 3] {
        [&self.a0, &self.a1, &self.a2]
    }

    /// `∂₁A₁ + ∂₂A₂`
    pub fn coulomb_divergence(&self, torus: &Torus) -> Result<RealField> {
        let d1 = torus.derivative(&self.a1, 0)?;
        let d2 = torus.derivative(&self.a2, 1)?;
        d1.zip_with(&d2, |a, b| a + b)
    }

    /// `F₁₂ = ∂₁A₂ − ∂₂A₁`
    pub fn curvature_12(&self, torus: &Torus) -> Result<RealField> {
        let d1 = torus.derivative(&self.a2, 0)?;
        let d2 = torus.derivative(&self.a1, 1)?;
        d1.zip_with(&d2, |a, b| a - b)
    }
}

/// Potentials determined by `ψ`.
pub fn potentials(torus: &Torus, psi: &SpinorField) -> Result<GaugePotentials> {
    GaugePotentials::from_currents(torus, &currents(torus, psi)?)
}
