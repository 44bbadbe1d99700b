//! Fourier multiplier symbols.
//!
//! A symbol is evaluated at every nonzero lattice frequency; the zero mode
//! always takes the explicitly stored `zero_mode` value so that symbols such
//! as `ξ/|ξ|` or `ξ_j/|ξ|²` never divide by zero.

use alloc::boxed::Box;

use num_complex::Complex64;
// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirac::{xi_dot_alpha, Mat2};
use crate::field::Spinor2;

/// Value types a symbol can take: scalars act on both spinor components,
/// matrices act on `ℂ²`.
pub trait SymbolValue: Copy + Send + Sync + 'static {
    fn act(&self, v: Spinor2) -> Spinor2;
}

impl SymbolValue for Complex64 {
    #[inline]
    fn act(&self, v: Spinor2) -> Spinor2 {
        v * *self
    }
}

impl SymbolValue for Mat2 {
    #[inline]
    fn act(&self, v: Spinor2) -> Spinor2 {
        self.apply(v)
    }
}

type SymbolFn<T> = Box<dyn Fn([f64; 2]) -> T + Send + Sync>;

pub struct MultiplierSymbol<T: SymbolValue> {
    eval: SymbolFn<T>,
    zero_mode: T,
}

pub type ScalarSymbol = MultiplierSymbol<Complex64>;
pub type MatrixSymbol = MultiplierSymbol<Mat2>;

impl<T: SymbolValue> MultiplierSymbol<T> {
    pub fn new(zero_mode: T, eval: impl Fn([f64; 2]) -> T + Send + Sync + 'static) -> Self {
        Self {
            eval: Box::new(eval),
            zero_mode,
        }
    }

    /// Value at frequency `xi`; `is_zero_mode` selects the stored value.
    #[inline]
    pub fn at(&self, xi: [f64; 2], is_zero_mode: bool) -> T {
        if is_zero_mode {
            self.zero_mode
        } else {
            (self.eval)(xi)
        }
    }

    pub fn zero_mode(&self) -> T {
        self.zero_mode
    }
}

#[inline]
pub(crate) fn abs_xi(xi: [f64; 2]) -> f64 {
    (xi[0] * xi[0] + xi[1] * xi[1]).sqrt()
}

/// `⟨ξ⟩ = (1 + |ξ|²)^{1/2}`
#[inline]
pub fn japanese(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

const fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl ScalarSymbol {
    pub fn identity() -> Self {
        Self::new(c(1.0), |_| c(1.0))
    }

    /// `|ξ|`, the symbol of `|D|`.
    pub fn abs_d() -> Self {
        Self::new(c(0.0), |xi| c(abs_xi(xi)))
    }

    /// `⟨ξ⟩^s`
    pub fn bessel(s: f64) -> Self {
        Self::new(c(1.0), move |xi| c(japanese(abs_xi(xi)).powf(s)))
    }

    /// `iξ_j`, the symbol of `∂_j` (axis 0 ↔ `x₁`).
    pub fn derivative(axis: usize) -> Self {
        assert!(axis < 2, "axis index must be 0 or 1");
        Self::new(c(0.0), move |xi| Complex64::new(0.0, xi[axis]))
    }

    /// `−iξ_j/|ξ|²`, the symbol of `Δ⁻¹∂_j`; zero at `ξ = 0`.
    pub fn inverse_laplacian_derivative(axis: usize) -> Self {
        assert!(axis < 2, "axis index must be 0 or 1");
        Self::new(c(0.0), move |xi| {
            let r2 = xi[0] * xi[0] + xi[1] * xi[1];
            Complex64::new(0.0, -xi[axis] / r2)
        })
    }

    /// `e^{−iσt|ξ|}` with `σ = ±1`: free half-wave propagator for `ψ_±`.
    pub fn half_wave_phase(sign: f64, t: f64) -> Self {
        Self::new(c(1.0), move |xi| {
            let th = -sign * t * abs_xi(xi);
            Complex64::new(th.cos(), th.sin())
        })
    }
}

impl MatrixSymbol {
    /// `Π_±(ξ) = ½(I ± ξ/|ξ|·α)`, with `Π_±(0) = ½(I ± α¹)`.
    pub fn half_wave_projection(sign: f64) -> Self {
        let zero = projection_matrix(sign, [1.0, 0.0]);
        Self::new(zero, move |xi| {
            let r = abs_xi(xi);
            projection_matrix(sign, [xi[0] / r, xi[1] / r])
        })
    }

    /// `ξ·α`, the symbol of `−iα·∇`.
    pub fn dirac() -> Self {
        Self::new(Mat2::zero(), xi_dot_alpha)
    }

    /// `|ξ|Π₊(ξ) − |ξ|Π₋(ξ)`, the same operator assembled from the
    /// half-wave projections.
    pub fn dirac_from_projections() -> Self {
        Self::new(Mat2::zero(), |xi| {
            let r = abs_xi(xi);
            let unit = [xi[0] / r, xi[1] / r];
            projection_matrix(1.0, unit) * r - projection_matrix(-1.0, unit) * r
        })
    }
}

/// `½(I + σ ω·α)` for a unit vector `ω`.
pub fn projection_matrix(sign: f64, unit: [f64; 2]) -> Mat2 {
    (Mat2::identity() + xi_dot_alpha(unit) * sign) * 0.5
}
