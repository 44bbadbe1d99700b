//! Field storage on a [`TorusGrid`].
//!
//! Complex fields carry a [`Representation`] tag: physical samples, or
//! Fourier coefficients normalized with `1/n²` (so a coefficient is the
//! Fourier coefficient of the sampled function). Conversions between the two
//! go through [`Torus`](crate::spectral::Torus).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::TorusGrid;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A point value in `ℂ²`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor2(pub Complex64, pub Complex64);

impl Spinor2 {
    pub const ZERO: Self = Self(ZERO, ZERO);

    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self(a, b)
    }

    /// `⟨u, v⟩ = u₁v̄₁ + u₂v̄₂`, linear in the first slot.
    #[inline]
    pub fn inner(self, other: Spinor2) -> Complex64 {
        self.0 * other.0.conj() + self.1 * other.1.conj()
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.0.norm_sqr() + self.1.norm_sqr()
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self(self.0 * c, self.1 * c)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite() && self.1.is_finite()
    }
}

impl Add for Spinor2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for Spinor2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for Spinor2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0, -self.1)
    }
}

impl Mul<Complex64> for Spinor2 {
    type Output = Self;
    fn mul(self, c: Complex64) -> Self {
        self.scale(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Physical,
    Spectral,
}

/// Real scalar field sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: TorusGrid,
    values: Vec<f64>,
}

impl RealField {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_values(grid: TorusGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape(alloc::format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: TorusGrid, f: impl Fn([f64; 2]) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `(∫|f|² dx)^{1/2}` by the rectangle rule.
    pub fn l2_norm(&self) -> f64 {
        let h2 = self.grid.spacing() * self.grid.spacing();
        num_traits::Float::sqrt(self.values.iter().map(|v| v * v).sum::<f64>() * h2)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(&self, other: &RealField, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
        })
    }

    pub fn to_complex(&self) -> ScalarField {
        ScalarField {
            grid: self.grid,
            repr: Representation::Physical,
            data: self
                .values
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
        }
    }
}

/// Complex scalar field in either representation.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub(crate) grid: TorusGrid,
    pub(crate) repr: Representation,
    pub(crate) data: Vec<Complex64>,
}

impl ScalarField {
    pub fn zeros(grid: TorusGrid, repr: Representation) -> Self {
        Self {
            grid,
            repr,
            data: vec![ZERO; grid.len()],
        }
    }

    /// Wrap raw data. Spectral data has its Nyquist row/column cleared.
    pub fn from_data(grid: TorusGrid, repr: Representation, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::Shape(alloc::format!(
                "expected {} values, got {}",
                grid.len(),
                data.len()
            )));
        }
        let mut f = Self { grid, repr, data };
        if repr == Representation::Spectral {
            f.clear_nyquist();
        }
        Ok(f)
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn repr(&self) -> Representation {
        self.repr
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub(crate) fn clear_nyquist(&mut self) {
        debug_assert_eq!(self.repr, Representation::Spectral);
        for (i, c) in self.data.iter_mut().enumerate() {
            if self.grid.is_nyquist(i) {
                *c = ZERO;
            }
        }
    }

    /// Largest imaginary part in physical representation.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |m, c| f64::max(m, c.im.abs()))
    }

    /// Real part; meaningful in physical representation only.
    pub fn real_part(&self) -> RealField {
        debug_assert_eq!(self.repr, Representation::Physical);
        RealField {
            grid: self.grid,
            values: self.data.iter().map(|c| c.re).collect(),
        }
    }
}

/// Two-component spinor field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    pub(crate) grid: TorusGrid,
    pub(crate) repr: Representation,
    pub(crate) comps: [Vec<Complex64>; 2],
}

impl SpinorField {
    pub fn zeros(grid: TorusGrid, repr: Representation) -> Self {
        Self {
            grid,
            repr,
            comps: [vec![ZERO; grid.len()], vec![ZERO; grid.len()]],
        }
    }

    /// Wrap raw component arrays. Spectral data has its Nyquist row/column
    /// cleared; physical data should go through
    /// [`Torus::spinor_from_physical`](crate::spectral::Torus::spinor_from_physical)
    /// to get the same guarantee.
    pub fn from_components(
        grid: TorusGrid,
        repr: Representation,
        upper: Vec<Complex64>,
        lower: Vec<Complex64>,
    ) -> Result<Self> {
        if upper.len() != grid.len() || lower.len() != grid.len() {
            return Err(Error::Shape(alloc::format!(
                "expected {} values per component, got {} and {}",
                grid.len(),
                upper.len(),
                lower.len()
            )));
        }
        let mut f = Self {
            grid,
            repr,
            comps: [upper, lower],
        };
        if repr == Representation::Spectral {
            f.clear_nyquist();
        }
        Ok(f)
    }

    /// Spectral field with a single active mode `k` carrying `value`.
    pub fn single_mode(grid: TorusGrid, k: [i64; 2], value: Spinor2) -> Result<Self> {
        let idx = grid
            .flat_of(k)
            .ok_or_else(|| Error::Shape(alloc::format!("wavevector {:?} not on the lattice", k)))?;
        let mut f = Self::zeros(grid, Representation::Spectral);
        f.set(idx, value);
        f.clear_nyquist();
        Ok(f)
    }

    #[inline]
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    #[inline]
    pub fn repr(&self) -> Representation {
        self.repr
    }

    #[inline]
    pub fn component(&self, c: usize) -> &[Complex64] {
        &self.comps[c]
    }

    #[inline]
    pub fn component_mut(&mut self, c: usize) -> &mut [Complex64] {
        &mut self.comps[c]
    }

    #[inline]
    pub fn get(&self, i: usize) -> Spinor2 {
        Spinor2(self.comps[0][i], self.comps[1][i])
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: Spinor2) {
        self.comps[0][i] = v.0;
        self.comps[1][i] = v.1;
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn clear_nyquist(&mut self) {
        debug_assert_eq!(self.repr, Representation::Spectral);
        for i in 0..self.grid.len() {
            if self.grid.is_nyquist(i) {
                self.set(i, Spinor2::ZERO);
            }
        }
    }

    /// Pointwise map, keeping grid and representation.
    pub fn map(&self, f: impl Fn(usize, Spinor2) -> Spinor2) -> Self {
        let mut out = Self::zeros(self.grid, self.repr);
        for i in 0..self.grid.len() {
            out.set(i, f(i, self.get(i)));
        }
        out
    }

    pub fn zip_with(
        &self,
        other: &SpinorField,
        f: impl Fn(Spinor2, Spinor2) -> Spinor2,
    ) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        if self.repr != other.repr {
            return Err(Error::Shape("representation tags differ".into()));
        }
        let mut out = Self::zeros(self.grid, self.repr);
        for i in 0..self.grid.len() {
            out.set(i, f(self.get(i), other.get(i)));
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, v| v * c)
    }

    /// `Σ |u₁|² + |u₂|²` over stored values (no grid weight).
    pub fn sum_norm_sqr(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .map(|z| z.norm_sqr())
            .sum()
    }

    /// `L²` norm. Uses the rectangle rule in physical representation and
    /// Parseval (`L · (Σ|ĉ|²)^{1/2}`) in spectral representation.
    pub fn l2_norm(&self) -> f64 {
        let s = self.sum_norm_sqr();
        let w = match self.repr {
            Representation::Physical => self.grid.spacing() * self.grid.spacing(),
            Representation::Spectral => self.grid.area(),
        };
        num_traits::Float::sqrt(s * w)
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|z| z.is_finite()))
    }

    /// Largest pointwise difference between two fields of the same shape.
    pub fn max_abs_diff(&self, other: &SpinorField) -> f64 {
        let mut m: f64 = 0.0;
        for c in 0..2 {
            for (a, b) in self.comps[c].iter().zip(&other.comps[c]) {
                m = m.max((a - b).norm());
            }
        }
        m
    }
}

impl Add<&SpinorField> for &SpinorField {
    type Output = SpinorField;
    fn add(self, o: &SpinorField) -> SpinorField {
        self.zip_with(o, |a, b| a + b)
            .expect("shape mismatch in field addition")
    }
}

impl Sub<&SpinorField> for &SpinorField {
    type Output = SpinorField;
    fn sub(self, o: &SpinorField) -> SpinorField {
        self.zip_with(o, |a, b| a - b)
            .expect("shape mismatch in field subtraction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_product_convention() {
        let i = Complex64::new(0.0, 1.0);
        let u = Spinor2(i, Complex64::new(1.0, 0.0));
        let v = Spinor2(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        assert_eq!(u.inner(v), i);
        assert_eq!(v.inner(u), -i);
        assert_eq!(u.inner(u).re, u.norm_sqr());
    }

    #[test]
    fn spectral_wrapping_clears_nyquist() {
        let g = TorusGrid::standard(4).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let f =
            SpinorField::from_components(g, Representation::Spectral, vec![one; 16], vec![one; 16])
                .unwrap();
        assert_eq!(f.get(g.flat_of([2, 0]).unwrap()), Spinor2::ZERO);
        assert_eq!(f.get(g.flat_of([1, -1]).unwrap()), Spinor2(one, one));
    }

    #[test]
    fn shape_checked() {
        let g = TorusGrid::standard(4).unwrap();
        assert!(SpinorField::from_components(g, Representation::Physical, vec![], vec![]).is_err());
        let g2 = TorusGrid::standard(6).unwrap();
        let a = SpinorField::zeros(g, Representation::Physical);
        let b = SpinorField::zeros(g2, Representation::Physical);
        assert!(matches!(
            a.zip_with(&b, |x, _| x),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn real_field_mean_and_norm() {
        let g = TorusGrid::new(4, 2.0).unwrap();
        let f = RealField::from_values(g, vec![2.0; 16]).unwrap();
        assert_eq!(f.mean(), 2.0);
        assert!((f.l2_norm() - 4.0).abs() < 1e-14);
    }
}
