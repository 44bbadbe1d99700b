use crate::dirac::Mat2;
use crate::error::{Error, Result};
use crate::field::{RealField, SpinorField};
use crate::spectral::Torus;

/// Relative bound on `Im J^μ` before a current is declared non-real.
pub const HERMITICITY_TOLERANCE: f64 = 1e-13;

/// `J^μ = ⟨α^μψ, ψ⟩` for `μ = 0, 1, 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentFields {
    pub j0: RealField,
    pub j1: RealField,
    pub j2: RealField,
}

impl CurrentFields {
    pub fn components(&self) -> [&RealField; 3] {
        [&self.j0, &self.j1, &self.j2]
    }
}

/// Pointwise Dirac currents of `ψ`.
pub fn currents(torus: &Torus, psi: &SpinorField) -> Result<CurrentFields> {
    let p = torus.spinor_physical(psi)?;
    let grid = *torus.grid();
    let alphas = [Mat2::identity(), Mat2::alpha1(), Mat2::alpha2()];
    let mut out = [
        RealField::zeros(grid),
        RealField::zeros(grid),
        RealField::zeros(grid),
    ];
    let mut worst: f64 = 0.0;
    for i in 0..grid.len() {
        let v = p.get(i);
        let scale = v.norm_sqr().max(1.0);
        for (mu, a) in alphas.iter().enumerate() {
            let j = a.apply(v).inner(v);
            worst = worst.max(j.im.abs() / scale);
            out[mu].values_mut()[i] = j.re;
        }
    }
    if worst > HERMITICITY_TOLERANCE {
        return Err(Error::Hermiticity(worst));
    }
    let [j0, j1, j2] = out;
    Ok(CurrentFields { j0, j1, j2 })
}
