use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dirac::Mat2;
use crate::error::Result;
use crate::fft::Direction;
use crate::field::{Representation, SpinorField};
use crate::spectral::Torus;

/// Overall sign in front of the cubic term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SignConvention {
    /// The nonlinearity exactly as displayed.
    #[default]
    Positive,
    Negative,
}

impl SignConvention {
    pub fn value(self) -> f64 {
        match self {
            SignConvention::Positive => 1.0,
            SignConvention::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SignConvention::Positive => SignConvention::Negative,
            SignConvention::Negative => SignConvention::Positive,
        }
    }

    pub fn from_value(v: i32) -> Option<Self> {
        match v {
            1 => Some(SignConvention::Positive),
            -1 => Some(SignConvention::Negative),
            _ => None,
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `N(ψ₁, ψ₂, ψ₃)` with the given sign, returned dealiased in the
/// representation of `ψ₃`.
///
/// `N = σ·(s₀ + s₁α¹ + s₂α²)ψ₃` where
/// `s₀ = Δ⁻¹(∂₂⟨α¹ψ₁,ψ₂⟩ − ∂₁⟨α²ψ₁,ψ₂⟩)`, `s₁ = Δ⁻¹∂₂⟨ψ₁,ψ₂⟩`,
/// `s₂ = −Δ⁻¹∂₁⟨ψ₁,ψ₂⟩`. Linear in `ψ₁, ψ₃`, conjugate-linear in `ψ₂`.
pub fn nonlinearity(
    torus: &Torus,
    psi1: &SpinorField,
    psi2: &SpinorField,
    psi3: &SpinorField,
    sign: SignConvention,
) -> Result<SpinorField> {
    let p1 = torus.spinor_physical(psi1)?;
    let p2 = torus.spinor_physical(psi2)?;
    let p3 = torus.spinor_physical(psi3)?;
    let out = nonlinearity_spectral(torus, &p1, &p2, &p3, sign.value());
    torus.spinor_as(&out, psi3.repr())
}

/// Core evaluation on physical inputs that already share the torus grid.
/// Returns dealiased spectral coefficients. `sign` multiplies the result.
pub fn nonlinearity_spectral(
    torus: &Torus,
    p1: &SpinorField,
    p2: &SpinorField,
    p3: &SpinorField,
    sign: f64,
) -> SpinorField {
    debug_assert!(p1.repr == Representation::Physical);
    debug_assert!(p2.repr == Representation::Physical);
    debug_assert!(p3.repr == Representation::Physical);
    let grid = *torus.grid();
    let len = grid.len();
    let (a1, a2) = (Mat2::alpha1(), Mat2::alpha2());

    let mut b = Vec::with_capacity(len);
    let mut b1 = Vec::with_capacity(len);
    let mut b2 = Vec::with_capacity(len);
    for i in 0..len {
        let (u, v) = (p1.get(i), p2.get(i));
        b.push(u.inner(v));
        b1.push(a1.apply(u).inner(v));
        b2.push(a2.apply(u).inner(v));
    }
    for f in [&mut b, &mut b1, &mut b2] {
        torus.fft2(f, Direction::Forward);
    }

    let mut s0 = alloc::vec![ZERO; len];
    let mut s1 = alloc::vec![ZERO; len];
    let mut s2 = alloc::vec![ZERO; len];
    for i in 1..len {
        if grid.is_nyquist(i) {
            continue;
        }
        let xi = grid.frequency(i);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        // Δ⁻¹∂_j has symbol −iξ_j/|ξ|²
        let g1 = Complex64::new(0.0, -xi[0] / r2);
        let g2 = Complex64::new(0.0, -xi[1] / r2);
        s0[i] = g2 * b1[i] - g1 * b2[i];
        s1[i] = g2 * b[i];
        s2[i] = -(g1 * b[i]);
    }
    for f in [&mut s0, &mut s1, &mut s2] {
        torus.fft2(f, Direction::Inverse);
    }

    let mut out = SpinorField::zeros(grid, Representation::Physical);
    for i in 0..len {
        let w = p3.get(i);
        let v = w * s0[i] + a1.apply(w) * s1[i] + a2.apply(w) * s2[i];
        out.set(i, v * Complex64::new(sign, 0.0));
    }
    for c in out.comps.iter_mut() {
        torus.fft2(c, Direction::Forward);
    }
    out.repr = Representation::Spectral;
    torus.dealias_spectral(&mut out);
    out
}
