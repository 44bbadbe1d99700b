//! 2×2 Dirac matrix algebra.
//!
//! `γ⁰ = diag(1, −1)`, `γ¹ = [[0, i], [i, 0]]`, `γ² = [[0, 1], [−1, 0]]`,
//! from which `α^j = γ⁰γ^j` and `β = γ⁰`. The tables are stored over the
//! Gaussian integers so the Clifford identities can be checked exactly;
//! floating-point versions are derived from them.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::field::Spinor2;

/// Gaussian integer `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: Self = Self { re: 0, im: 0 };
    pub const ONE: Self = Self { re: 1, im: 0 };
    pub const I: Self = Self { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// Exact 2×2 matrix over the Gaussian integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMat2(pub [[GaussInt; 2]; 2]);

impl IntMat2 {
    pub const IDENTITY: Self = Self([
        [GaussInt::ONE, GaussInt::ZERO],
        [GaussInt::ZERO, GaussInt::ONE],
    ]);
    pub const ZERO: Self = Self([[GaussInt::ZERO; 2]; 2]);

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn to_complex(&self) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].to_complex(), m[0][1].to_complex()],
            [m[1][0].to_complex(), m[1][1].to_complex()],
        ])
    }
}

impl Add for IntMat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Mul for IntMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        let mut out = [[GaussInt::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }
}

const fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

pub const GAMMA0: IntMat2 = IntMat2([[g(1, 0), g(0, 0)], [g(0, 0), g(-1, 0)]]);
pub const GAMMA1: IntMat2 = IntMat2([[g(0, 0), g(0, 1)], [g(0, 1), g(0, 0)]]);
pub const GAMMA2: IntMat2 = IntMat2([[g(0, 0), g(1, 0)], [g(-1, 0), g(0, 0)]]);

/// Exact tables of `γ^μ`, `α^μ = γ⁰γ^μ` and `β = γ⁰`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiracMatrices {
    pub gamma: [IntMat2; 3],
    pub alpha: [IntMat2; 3],
    pub beta: IntMat2,
}

impl DiracMatrices {
    pub fn new() -> Self {
        let gamma = [GAMMA0, GAMMA1, GAMMA2];
        Self {
            gamma,
            alpha: [IntMat2::IDENTITY, GAMMA0 * GAMMA1, GAMMA0 * GAMMA2],
            beta: GAMMA0,
        }
    }

    /// Floating-point tables `(α¹, α², β)`.
    pub fn complex(&self) -> (Mat2, Mat2, Mat2) {
        (
            self.alpha[1].to_complex(),
            self.alpha[2].to_complex(),
            self.beta.to_complex(),
        )
    }
}

impl Default for DiracMatrices {
    fn default() -> Self {
        Self::new()
    }
}

/// Complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn zero() -> Self {
        Self([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub const fn identity() -> Self {
        Self([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    /// `α¹ = γ⁰γ¹ = [[0, i], [−i, 0]]`
    pub const fn alpha1() -> Self {
        Self([
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            [Complex64::new(0.0, -1.0), Complex64::new(0.0, 0.0)],
        ])
    }

    /// `α² = γ⁰γ² = [[0, 1], [1, 0]]`
    pub const fn alpha2() -> Self {
        Self([
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
    }

    /// `β = γ⁰ = diag(1, −1)`
    pub const fn beta() -> Self {
        Self([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
        ])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let m = &self.0;
        Self([[m[0][0] * c, m[0][1] * c], [m[1][0] * c, m[1][1] * c]])
    }

    pub fn apply(&self, v: Spinor2) -> Spinor2 {
        let m = &self.0;
        Spinor2(m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Mat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }
}

/// `ξ·α = ξ₁α¹ + ξ₂α²`, the symbol of `−iα·∇`.
pub fn xi_dot_alpha(xi: [f64; 2]) -> Mat2 {
    Mat2::alpha1() * xi[0] + Mat2::alpha2() * xi[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_tables_match_products() {
        let d = DiracMatrices::new();
        let (a1, a2, b) = d.complex();
        assert_eq!(a1, Mat2::alpha1());
        assert_eq!(a2, Mat2::alpha2());
        assert_eq!(b, Mat2::beta());
        assert_eq!(d.alpha[0], IntMat2::IDENTITY);
    }

    #[test]
    fn clifford_identities_are_exact() {
        let d = DiracMatrices::new();
        let (a1, a2, b) = (d.alpha[1], d.alpha[2], d.beta);
        for m in [a1, a2, b] {
            assert_eq!(m.adjoint(), m, "not Hermitian");
            assert_eq!(m * m, IntMat2::IDENTITY, "square not identity");
        }
        assert_eq!(a1 * a2 + a2 * a1, IntMat2::ZERO);
        assert_eq!(a1 * b + b * a1, IntMat2::ZERO);
        assert_eq!(a2 * b + b * a2, IntMat2::ZERO);
    }

    #[test]
    fn gamma_entries() {
        assert_eq!(GAMMA1.0[0][1], GaussInt::I);
        assert_eq!(GAMMA1.0[1][0], GaussInt::I);
        assert_eq!(GAMMA2.0[1][0], g(-1, 0));
        assert_eq!(GAMMA0.0[1][1], g(-1, 0));
    }

    #[test]
    fn xi_dot_alpha_squares_to_norm() {
        let xi = [0.3, -1.7];
        let m = xi_dot_alpha(xi);
        let sq = m * m;
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        assert!((sq - Mat2::identity() * r2).max_abs() < 1e-14);
    }
}
