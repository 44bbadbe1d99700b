//! Discrete space-time norms of trajectories.
//!
//! A trajectory of `M` frames spaced `Δt` is treated as one period of a
//! function on `[0, MΔt) × [0, L)²`. Coefficients carry `1/(M n²)`, so that
//! `MΔt·L²·Σ|ĉ|²` equals the Riemann sum `ΔtΔx²Σ|ψ|²`.
//!
//! The estimators are periodized proxies for the continuum norms, not
//! restriction norms.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fft::Direction;
use crate::field::Spinor2;
use crate::grid::TorusGrid;
use crate::integrator::Trajectory;
use crate::multiplier::japanese;
use crate::spectral::{HalfWave, Torus};

/// Temporal window applied before the time transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    #[default]
    None,
    /// Raised-cosine taper over the first and last 10% of the frames.
    Taper,
}

impl Window {
    /// Weight of frame `j` out of `m`.
    pub fn weight(self, j: usize, m: usize) -> f64 {
        match self {
            Window::None => 1.0,
            Window::Taper => {
                if m < 2 {
                    return 1.0;
                }
                let u = j as f64 / (m - 1) as f64;
                let edge = 0.1;
                let d = u.min(1.0 - u);
                if d >= edge {
                    1.0
                } else {
                    0.5 * (1.0 - (PI * d / edge).cos())
                }
            }
        }
    }
}

/// Signed temporal wavenumber of DFT index `k` for `m` samples:
/// `{−m/2+1, …, m/2}` for even `m`, `{−(m−1)/2, …, (m−1)/2}` for odd `m`.
pub fn time_wavenumber(k: usize, m: usize) -> i64 {
    if k <= m / 2 {
        k as i64
    } else {
        k as i64 - m as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSpectrum {
    grid: TorusGrid,
    frames: usize,
    dt: f64,
    window: Window,
    /// Mode-major: `coeffs[c][flat·M + k]`.
    coeffs: [Vec<Complex64>; 2],
}

impl SpaceTimeSpectrum {
    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `MΔt·L²`
    pub fn volume(&self) -> f64 {
        self.frames as f64 * self.dt * self.grid.area()
    }

    /// `τ` at time index `k`.
    pub fn tau(&self, k: usize) -> f64 {
        2.0 * PI * time_wavenumber(k, self.frames) as f64 / (self.frames as f64 * self.dt)
    }

    fn is_time_nyquist(&self, k: usize) -> bool {
        self.frames.is_multiple_of(2) && k == self.frames / 2
    }

    pub fn coefficient(&self, k: usize, flat: usize) -> Spinor2 {
        let i = flat * self.frames + k;
        Spinor2(self.coeffs[0][i], self.coeffs[1][i])
    }

    /// Number of coefficients whose magnitude exceeds `tol`.
    pub fn active_count(&self, tol: f64) -> usize {
        (0..self.grid.len())
            .flat_map(|i| (0..self.frames).map(move |k| (k, i)))
            .filter(|&(k, i)| self.coefficient(k, i).norm_sqr().sqrt() > tol)
            .count()
    }

    /// `(vol·Σ w(τ,ξ)|ĉ|²)^{1/2}` for a squared weight `w`. At the temporal
    /// Nyquist row the weight is averaged over `±τ_N`, which keeps the
    /// estimator symmetric under time reversal.
    pub fn weighted_norm(&self, w: impl Fn(f64, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.len() {
            let xi = self.grid.frequency(i);
            let r = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
            for k in 0..self.frames {
                let c = self.coefficient(k, i).norm_sqr();
                if c == 0.0 {
                    continue;
                }
                let tau = self.tau(k);
                let weight = if self.is_time_nyquist(k) {
                    0.5 * (w(tau, r) + w(-tau, r))
                } else {
                    w(tau, r)
                };
                acc += weight * c;
            }
        }
        (acc * self.volume()).sqrt()
    }

    pub fn l2_norm(&self) -> f64 {
        self.weighted_norm(|_, _| 1.0)
    }

    /// `‖⟨ξ⟩^s⟨τ ± |ξ|⟩^b ĉ‖`
    pub fn xsb_norm(&self, s: f64, b: f64, sign: HalfWave) -> f64 {
        let sg = sign.sign();
        self.weighted_norm(|tau, r| {
            japanese(r).powf(2.0 * s) * japanese(tau + sg * r).powf(2.0 * b)
        })
    }

    /// `‖⟨ξ⟩^s⟨|τ| − |ξ|⟩^b ĉ‖`
    pub fn hsb_norm(&self, s: f64, b: f64) -> f64 {
        self.weighted_norm(|tau, r| {
            japanese(r).powf(2.0 * s) * japanese(tau.abs() - r).powf(2.0 * b)
        })
    }
}

/// Space and time transform of every spinor component.
pub fn spacetime_transform(
    torus: &Torus,
    traj: &Trajectory,
    window: Window,
) -> Result<SpaceTimeSpectrum> {
    let grid = *traj.grid();
    torus.grid().ensure_same(&grid)?;
    let m = traj.len();
    let len = grid.len();
    let mut coeffs = [
        alloc::vec![Complex64::new(0.0, 0.0); len * m],
        alloc::vec![Complex64::new(0.0, 0.0); len * m],
    ];
    for (k, frame) in traj.frames().iter().enumerate() {
        let s = torus.spinor_spectral(frame)?;
        let w = window.weight(k, m);
        for c in 0..2 {
            for (i, z) in s.component(c).iter().enumerate() {
                coeffs[c][i * m + k] = z * w;
            }
        }
    }
    let inv_m = 1.0 / m as f64;
    for c in coeffs.iter_mut() {
        torus.backend().transform(c, m, Direction::Forward);
        for z in c.iter_mut() {
            *z *= inv_m;
        }
    }
    Ok(SpaceTimeSpectrum {
        grid,
        frames: m,
        dt: traj.dt(),
        window,
        coeffs,
    })
}

/// `(ΔtΔx²Σ_{j,x}|ψ_j(x)|²)^{1/2}` over all frames.
pub fn discrete_l2(traj: &Trajectory) -> f64 {
    let s: f64 = traj
        .frames()
        .iter()
        .map(|f| {
            let n = f.l2_norm();
            n * n
        })
        .sum();
    (s * traj.dt()).sqrt()
}

pub fn xsb_norm(torus: &Torus, traj: &Trajectory, s: f64, b: f64, sign: HalfWave) -> Result<f64> {
    Ok(spacetime_transform(torus, traj, Window::None)?.xsb_norm(s, b, sign))
}

pub fn hsb_norm(torus: &Torus, traj: &Trajectory, s: f64, b: f64) -> Result<f64> {
    Ok(spacetime_transform(torus, traj, Window::None)?.hsb_norm(s, b))
}

/// Outcome of comparing `‖·‖_{H^{s,b}}` with `‖·‖_{X^{s,b}_±}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingReport {
    pub hsb: f64,
    pub xsb_plus: f64,
    pub xsb_minus: f64,
    /// `min(xsb_±) − hsb`; nonnegative up to rounding.
    pub slack: f64,
}

/// Relative rounding allowance for the pointwise weight comparison.
pub const EMBEDDING_TOLERANCE: f64 = 1e-12;

/// Check `‖f‖_{H^{s,b}} ≤ min_± ‖f‖_{X^{s,b}_±}` for `b ≥ 0`.
pub fn embedding_check(
    torus: &Torus,
    traj: &Trajectory,
    s: f64,
    b: f64,
) -> Result<EmbeddingReport> {
    if b.is_nan() || b < 0.0 {
        return Err(Error::InvalidConfig(alloc::format!(
            "embedding needs b ≥ 0, got {b}"
        )));
    }
    let spec = spacetime_transform(torus, traj, Window::None)?;
    let hsb = spec.hsb_norm(s, b);
    let xsb_plus = spec.xsb_norm(s, b, HalfWave::Plus);
    let xsb_minus = spec.xsb_norm(s, b, HalfWave::Minus);
    let slack = xsb_plus.min(xsb_minus) - hsb;
    if slack < -EMBEDDING_TOLERANCE * hsb.max(f64::MIN_POSITIVE) {
        return Err(Error::Consistency {
            what: "H^{s,b} norm exceeds an X^{s,b} norm",
            deviation: -slack,
            tolerance: EMBEDDING_TOLERANCE * hsb,
        });
    }
    Ok(EmbeddingReport {
        hsb,
        xsb_plus,
        xsb_minus,
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_wavenumbers() {
        let ks: Vec<i64> = (0..6).map(|k| time_wavenumber(k, 6)).collect();
        assert_eq!(ks, [0, 1, 2, 3, -2, -1]);
        let ks: Vec<i64> = (0..5).map(|k| time_wavenumber(k, 5)).collect();
        assert_eq!(ks, [0, 1, 2, -2, -1]);
    }

    #[test]
    fn taper_shape() {
        let w = Window::Taper;
        assert_eq!(w.weight(0, 101), 0.0);
        assert_eq!(w.weight(100, 101), 0.0);
        assert_eq!(w.weight(50, 101), 1.0);
        assert!((w.weight(5, 101) - 0.5).abs() < 1e-12);
    }
}
