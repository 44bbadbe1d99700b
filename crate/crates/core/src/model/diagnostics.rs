// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::field::SpinorField;
use crate::spectral::Torus;

use super::nonlinearity::{nonlinearity, SignConvention};
use super::potentials::potentials;

/// `‖N(ψ,ψ,ψ)‖_{L²} / ‖ψ‖³_{H^{1/3}}`.
pub fn trilinear_l2_ratio(torus: &Torus, psi: &SpinorField, sign: SignConvention) -> Result<f64> {
    let den = torus.sobolev_norm(psi, 1.0 / 3.0, false)?;
    if den == 0.0 {
        return Err(Error::ZeroInput("trilinear ratio of a vanishing field"));
    }
    let n = nonlinearity(torus, psi, psi, psi, sign)?;
    Ok(n.l2_norm() / den.powi(3))
}

/// Homogeneous norms of the potentials built from `ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityReport {
    /// `max_μ ‖A_μ‖_{Ḣ^{2s}}`
    pub a_2s: f64,
    /// `max_μ ‖A_μ‖_{Ḣ^ε}`
    pub a_eps: f64,
    /// `‖ψ‖²_{H^s}`
    pub psi_hs_sq: f64,
}

impl RegularityReport {
    /// `‖A‖_{Ḣ^{2s}} / ‖ψ‖²_{H^s}`, or 0 for vanishing `ψ`.
    pub fn ratio(&self) -> f64 {
        if self.psi_hs_sq == 0.0 {
            0.0
        } else {
            self.a_2s / self.psi_hs_sq
        }
    }
}

pub fn potential_regularity_report(
    torus: &Torus,
    psi: &SpinorField,
    s: f64,
    eps: f64,
) -> Result<RegularityReport> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidConfig(alloc::format!(
            "regularity s must lie in (0, 1), got {s}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidConfig(alloc::format!(
            "ε must lie in (0, 1), got {eps}"
        )));
    }
    let a = potentials(torus, psi)?;
    let mut a_2s: f64 = 0.0;
    let mut a_eps: f64 = 0.0;
    for c in a.components() {
        a_2s = a_2s.max(torus.sobolev_norm_real(c, 2.0 * s, true)?);
        a_eps = a_eps.max(torus.sobolev_norm_real(c, eps, true)?);
    }
    let h = torus.sobolev_norm(psi, s, false)?;
    Ok(RegularityReport {
        a_2s,
        a_eps,
        psi_hs_sq: h * h,
    })
}
