//! Spectral operations on the torus: transforms, multipliers, half-wave
//! projections, Sobolev norms and dealiasing.
//!
//! The zero mode of `Π_±` is fixed to `½(I ± α¹)` so that all projection
//! identities stay exact on the torus; this only affects the spatial mean
//! of a spinor.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirac::Mat2;
use crate::error::{Error, Result};
use crate::fft::{transpose_square, Direction, FftBackend, NaiveDft};
use crate::field::{RealField, Representation, ScalarField, Spinor2, SpinorField};
use crate::grid::TorusGrid;
use crate::multiplier::{japanese, MatrixSymbol, MultiplierSymbol, ScalarSymbol, SymbolValue};

/// Tolerance for the two-path evaluation in [`Torus::dirac_derivative`].
pub const DIRAC_SPLIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfWave {
    Plus,
    Minus,
}

impl HalfWave {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            HalfWave::Plus => 1.0,
            HalfWave::Minus => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            HalfWave::Plus => HalfWave::Minus,
            HalfWave::Minus => HalfWave::Plus,
        }
    }
}

/// A grid together with a transform backend. Cheap to clone.
#[derive(Clone)]
pub struct Torus {
    grid: TorusGrid,
    fft: Arc<dyn FftBackend>,
}

impl core::fmt::Debug for Torus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Torus")
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl Torus {
    pub fn new(grid: TorusGrid, fft: Arc<dyn FftBackend>) -> Self {
        Self { grid, fft }
    }

    /// Torus backed by the O(n²) reference DFT.
    pub fn naive(grid: TorusGrid) -> Self {
        Self::new(grid, Arc::new(NaiveDft))
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn backend(&self) -> &Arc<dyn FftBackend> {
        &self.fft
    }

    /// Same backend on a different grid.
    pub fn with_grid(&self, grid: TorusGrid) -> Self {
        Self {
            grid,
            fft: self.fft.clone(),
        }
    }

    fn check(&self, grid: &TorusGrid) -> Result<()> {
        self.grid.ensure_same(grid)
    }

    /// 2-D transform in place. Forward carries the `1/n²` factor.
    pub(crate) fn fft2(&self, data: &mut [Complex64], direction: Direction) {
        let n = self.grid.n();
        self.fft.transform(data, n, direction);
        transpose_square(data, n);
        self.fft.transform(data, n, direction);
        transpose_square(data, n);
        if direction == Direction::Forward {
            let s = 1.0 / (n * n) as f64;
            for z in data.iter_mut() {
                *z *= s;
            }
        }
    }

    // ---- representation changes -------------------------------------

    pub fn scalar_spectral(&self, f: &ScalarField) -> Result<ScalarField> {
        self.check(&f.grid)?;
        let mut out = f.clone();
        if f.repr == Representation::Physical {
            self.fft2(&mut out.data, Direction::Forward);
            out.repr = Representation::Spectral;
        }
        Ok(out)
    }

    pub fn scalar_physical(&self, f: &ScalarField) -> Result<ScalarField> {
        self.check(&f.grid)?;
        let mut out = f.clone();
        if f.repr == Representation::Spectral {
            self.fft2(&mut out.data, Direction::Inverse);
            out.repr = Representation::Physical;
        }
        Ok(out)
    }

    pub fn real_spectrum(&self, f: &RealField) -> Result<ScalarField> {
        self.check(f.grid())?;
        let mut data: Vec<Complex64> = f.values().iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fft2(&mut data, Direction::Forward);
        Ok(ScalarField {
            grid: self.grid,
            repr: Representation::Spectral,
            data,
        })
    }

    /// Inverse transform keeping the real part. Callers guarantee Hermitian
    /// symmetry of the spectrum.
    pub fn real_from_spectrum(&self, f: &ScalarField) -> Result<RealField> {
        let p = self.scalar_physical(f)?;
        Ok(p.real_part())
    }

    pub fn spinor_spectral(&self, f: &SpinorField) -> Result<SpinorField> {
        self.check(&f.grid)?;
        let mut out = f.clone();
        if f.repr == Representation::Physical {
            for c in out.comps.iter_mut() {
                self.fft2(c, Direction::Forward);
            }
            out.repr = Representation::Spectral;
        }
        Ok(out)
    }

    pub fn spinor_physical(&self, f: &SpinorField) -> Result<SpinorField> {
        self.check(&f.grid)?;
        let mut out = f.clone();
        if f.repr == Representation::Spectral {
            for c in out.comps.iter_mut() {
                self.fft2(c, Direction::Inverse);
            }
            out.repr = Representation::Physical;
        }
        Ok(out)
    }

    /// Convert to the requested representation.
    pub fn spinor_as(&self, f: &SpinorField, repr: Representation) -> Result<SpinorField> {
        match repr {
            Representation::Physical => self.spinor_physical(f),
            Representation::Spectral => self.spinor_spectral(f),
        }
    }

    /// Physical field from samples, with the Nyquist row/column projected out.
    pub fn spinor_from_physical(
        &self,
        upper: Vec<Complex64>,
        lower: Vec<Complex64>,
    ) -> Result<SpinorField> {
        let f = SpinorField::from_components(self.grid, Representation::Physical, upper, lower)?;
        let mut s = self.spinor_spectral(&f)?;
        s.clear_nyquist();
        self.spinor_physical(&s)
    }

    pub fn spinor_from_fn(&self, f: impl Fn([f64; 2]) -> Spinor2) -> SpinorField {
        let n = self.grid.len();
        let mut upper = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n);
        for i in 0..n {
            let v = f(self.grid.point(i));
            upper.push(v.0);
            lower.push(v.1);
        }
        self.spinor_from_physical(upper, lower)
            .expect("sizes match the grid by construction")
    }

    // ---- multipliers ---------------------------------------------------

    /// Multiply spectral coefficients in place.
    pub(crate) fn multiply_spectral<T: SymbolValue>(
        &self,
        f: &mut SpinorField,
        symbol: &MultiplierSymbol<T>,
    ) {
        debug_assert_eq!(f.repr, Representation::Spectral);
        for i in 0..self.grid.len() {
            if self.grid.is_nyquist(i) {
                f.set(i, Spinor2::ZERO);
                continue;
            }
            let s = symbol.at(self.grid.frequency(i), i == 0);
            f.set(i, s.act(f.get(i)));
        }
    }

    /// Apply a scalar or matrix symbol mode by mode. The output has the
    /// representation of the input.
    pub fn apply_multiplier<T: SymbolValue>(
        &self,
        field: &SpinorField,
        symbol: &MultiplierSymbol<T>,
    ) -> Result<SpinorField> {
        let mut s = self.spinor_spectral(field)?;
        self.multiply_spectral(&mut s, symbol);
        self.spinor_as(&s, field.repr)
    }

    pub fn apply_scalar_multiplier(
        &self,
        field: &ScalarField,
        symbol: &ScalarSymbol,
    ) -> Result<ScalarField> {
        let mut s = self.scalar_spectral(field)?;
        for (i, z) in s.data.iter_mut().enumerate() {
            if self.grid.is_nyquist(i) {
                *z = Complex64::new(0.0, 0.0);
            } else {
                *z *= symbol.at(self.grid.frequency(i), i == 0);
            }
        }
        match field.repr {
            Representation::Physical => self.scalar_physical(&s),
            Representation::Spectral => Ok(s),
        }
    }

    /// Multiplier applied to a real field, returning the complex result in
    /// physical representation (used to inspect realness).
    pub fn apply_to_real(&self, f: &RealField, symbol: &ScalarSymbol) -> Result<ScalarField> {
        self.apply_scalar_multiplier(&f.to_complex(), symbol)
    }

    /// Constant matrix applied pointwise.
    pub fn apply_matrix(&self, field: &SpinorField, m: &Mat2) -> SpinorField {
        field.map(|_, v| m.apply(v))
    }

    /// `Δ⁻¹∂_j f` for real `f`; axis 0 is `x₁`. The zero mode is mapped to 0.
    pub fn inverse_laplacian_derivative(&self, f: &RealField, axis: usize) -> Result<RealField> {
        if axis > 1 {
            return Err(Error::Shape(alloc::format!(
                "axis index {axis} out of range"
            )));
        }
        let out = self.apply_to_real(f, &ScalarSymbol::inverse_laplacian_derivative(axis))?;
        Ok(out.real_part())
    }

    /// `∂_j f` for real `f`.
    pub fn derivative(&self, f: &RealField, axis: usize) -> Result<RealField> {
        if axis > 1 {
            return Err(Error::Shape(alloc::format!(
                "axis index {axis} out of range"
            )));
        }
        let out = self.apply_to_real(f, &ScalarSymbol::derivative(axis))?;
        Ok(out.real_part())
    }

    // ---- half waves and the Dirac operator ----------------------------

    /// `Π_±(D)ψ`.
    pub fn half_wave_projection(&self, psi: &SpinorField, sign: HalfWave) -> Result<SpinorField> {
        self.apply_multiplier(psi, &MatrixSymbol::half_wave_projection(sign.sign()))
    }

    /// `−iα·∇ψ`, evaluated once with the symbol `ξ·α` and once as
    /// `|D|Π₊ψ − |D|Π₋ψ`. Returns the first; fails if the two disagree by
    /// more than [`DIRAC_SPLIT_TOLERANCE`] relative to `‖ψ‖_{H¹}`.
    pub fn dirac_derivative(&self, psi: &SpinorField) -> Result<SpinorField> {
        let (direct, split) = self.dirac_derivative_paths(psi)?;
        let scale = self.sobolev_norm(psi, 1.0, false)?;
        let dev = (&direct - &split).l2_norm();
        let rel = if scale > 0.0 { dev / scale } else { dev };
        if rel > DIRAC_SPLIT_TOLERANCE {
            return Err(Error::Consistency {
                what: "direct and projection-split Dirac operator disagree",
                deviation: rel,
                tolerance: DIRAC_SPLIT_TOLERANCE,
            });
        }
        self.spinor_as(&direct, psi.repr)
    }

    /// Both evaluations of `−iα·∇ψ`, in spectral representation.
    pub fn dirac_derivative_paths(&self, psi: &SpinorField) -> Result<(SpinorField, SpinorField)> {
        let s = self.spinor_spectral(psi)?;
        let mut direct = s.clone();
        self.multiply_spectral(&mut direct, &MatrixSymbol::dirac());
        let abs_d = ScalarSymbol::abs_d();
        let mut plus = s.clone();
        self.multiply_spectral(&mut plus, &MatrixSymbol::half_wave_projection(1.0));
        self.multiply_spectral(&mut plus, &abs_d);
        let mut minus = s;
        self.multiply_spectral(&mut minus, &MatrixSymbol::half_wave_projection(-1.0));
        self.multiply_spectral(&mut minus, &abs_d);
        Ok((direct, &plus - &minus))
    }

    // ---- norms and dealiasing ------------------------------------------

    fn sobolev_weight(&self, i: usize, s: f64, homogeneous: bool) -> f64 {
        let xi = self.grid.frequency(i);
        let r = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        if homogeneous {
            if i == 0 {
                0.0
            } else {
                r.powf(2.0 * s)
            }
        } else {
            japanese(r).powf(2.0 * s)
        }
    }

    /// `L·(Σ_ξ w(ξ)|ψ̂(ξ)|²)^{1/2}` with `w = ⟨ξ⟩^{2s}`, or `|ξ|^{2s}` with
    /// the zero mode dropped when `homogeneous`. At `s = 0` (inhomogeneous)
    /// this is the physical `L²` norm.
    pub fn sobolev_norm(&self, psi: &SpinorField, s: f64, homogeneous: bool) -> Result<f64> {
        let f = self.spinor_spectral(psi)?;
        let mut acc = 0.0;
        for i in 0..self.grid.len() {
            let w = self.sobolev_weight(i, s, homogeneous);
            if w != 0.0 {
                acc += w * f.get(i).norm_sqr();
            }
        }
        Ok((acc * self.grid.area()).sqrt())
    }

    pub fn sobolev_norm_real(&self, f: &RealField, s: f64, homogeneous: bool) -> Result<f64> {
        self.sobolev_norm_scalar(&f.to_complex(), s, homogeneous)
    }

    pub fn sobolev_norm_scalar(&self, f: &ScalarField, s: f64, homogeneous: bool) -> Result<f64> {
        let f = self.scalar_spectral(f)?;
        let mut acc = 0.0;
        for (i, z) in f.data.iter().enumerate() {
            let w = self.sobolev_weight(i, s, homogeneous);
            if w != 0.0 {
                acc += w * z.norm_sqr();
            }
        }
        Ok((acc * self.grid.area()).sqrt())
    }

    pub(crate) fn dealias_spectral(&self, f: &mut SpinorField) {
        debug_assert_eq!(f.repr, Representation::Spectral);
        for i in 0..self.grid.len() {
            if !self.grid.is_resolved(i) {
                f.set(i, Spinor2::ZERO);
            }
        }
    }

    /// Zero every mode with `max(|k₁|, |k₂|) ≥ n/4`.
    pub fn dealias(&self, f: &SpinorField) -> Result<SpinorField> {
        let mut s = self.spinor_spectral(f)?;
        self.dealias_spectral(&mut s);
        self.spinor_as(&s, f.repr)
    }

    pub fn dealias_scalar(&self, f: &ScalarField) -> Result<ScalarField> {
        let mut s = self.scalar_spectral(f)?;
        for (i, z) in s.data.iter_mut().enumerate() {
            if !self.grid.is_resolved(i) {
                *z = Complex64::new(0.0, 0.0);
            }
        }
        match f.repr {
            Representation::Physical => self.scalar_physical(&s),
            Representation::Spectral => Ok(s),
        }
    }

    /// True when no mode outside the dealiasing band carries more than
    /// `tol` (absolute, on the normalized coefficients).
    pub fn is_band_limited(&self, f: &SpinorField, tol: f64) -> Result<bool> {
        let s = self.spinor_spectral(f)?;
        Ok((0..self.grid.len())
            .all(|i| self.grid.is_resolved(i) || s.get(i).norm_sqr().sqrt() <= tol))
    }
}
