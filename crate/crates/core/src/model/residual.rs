use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::RealField;
use crate::integrator::Trajectory;
use crate::spectral::Torus;

use super::currents::{currents, CurrentFields};
use super::potentials::GaugePotentials;

/// Frame-wise `L²` norms of `½ε^{μνρ}F_{νρ} + J^μ` (mean-free currents).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub per_frame: Vec<[f64; 3]>,
}

impl ResidualReport {
    /// Maximum over frames, per component `μ`.
    pub fn max(&self) -> [f64; 3] {
        let mut m = [0.0f64; 3];
        for r in &self.per_frame {
            for mu in 0..3 {
                m[mu] = m[mu].max(r[mu]);
            }
        }
        m
    }
}

/// Fourth-order first-derivative weights at frame `j` of `m ≥ 5` frames:
/// returns the first frame index of the 5-point window and the weights,
/// to be divided by `12Δt`. Centered in the interior, one-sided near the ends.
pub fn time_derivative_stencil(j: usize, m: usize) -> (usize, [f64; 5]) {
    debug_assert!(m >= 5 && j < m);
    match j {
        0 => (0, [-25.0, 48.0, -36.0, 16.0, -3.0]),
        1 => (0, [-3.0, -10.0, 18.0, -6.0, 1.0]),
        _ if j == m - 1 => (m - 5, [3.0, -16.0, 36.0, -48.0, 25.0]),
        _ if j == m - 2 => (m - 5, [-1.0, 6.0, -18.0, 10.0, 3.0]),
        _ => (j - 2, [1.0, -8.0, 0.0, 8.0, -1.0]),
    }
}

fn time_derivative(series: &[RealField], j: usize, dt: f64) -> RealField {
    let (start, w) = time_derivative_stencil(j, series.len());
    let grid = *series[0].grid();
    let mut out = RealField::zeros(grid);
    let scale = 1.0 / (12.0 * dt);
    for (k, wk) in w.iter().enumerate() {
        if *wk == 0.0 {
            continue;
        }
        for (o, v) in out.values_mut().iter_mut().zip(series[start + k].values()) {
            *o += wk * scale * v;
        }
    }
    out
}

fn mean_free(f: &RealField) -> RealField {
    let m = f.mean();
    f.map(|v| v - m)
}

/// Residuals of the three Chern–Simons equations along a trajectory, with
/// `A` rebuilt from `ψ` at every frame:
///
/// - `μ = 0`: `F₁₂ + J⁰`
/// - `μ = 1`: `∂₂A₀ − ∂_tA₂ + J¹`
/// - `μ = 2`: `∂_tA₁ − ∂₁A₀ + J²`
///
/// Each current has its spatial mean removed; on the torus `Δ⁻¹` cannot
/// produce a zero mode, so only the mean-free part is constrained.
pub fn chern_simons_residual(torus: &Torus, traj: &Trajectory) -> Result<ResidualReport> {
    if traj.len() < 5 {
        return Err(Error::TooFewFrames {
            found: traj.len(),
            needed: 5,
        });
    }
    torus.grid().ensure_same(traj.grid())?;
    let mut js: Vec<CurrentFields> = Vec::with_capacity(traj.len());
    let mut a0 = Vec::with_capacity(traj.len());
    let mut a1 = Vec::with_capacity(traj.len());
    let mut a2 = Vec::with_capacity(traj.len());
    let mut f12 = Vec::with_capacity(traj.len());
    for frame in traj.frames() {
        let j = currents(torus, frame)?;
        let a = GaugePotentials::from_currents(torus, &j)?;
        f12.push(a.curvature_12(torus)?);
        js.push(j);
        a0.push(a.a0);
        a1.push(a.a1);
        a2.push(a.a2);
    }
    let dt = traj.dt();
    let mut per_frame = Vec::with_capacity(traj.len());
    for k in 0..traj.len() {
        let j = &js[k];
        let r0 = f12[k].zip_with(&mean_free(&j.j0), |a, b| a + b)?;
        let dt_a2 = time_derivative(&a2, k, dt);
        let dt_a1 = time_derivative(&a1, k, dt);
        let d2a0 = torus.derivative(&a0[k], 1)?;
        let d1a0 = torus.derivative(&a0[k], 0)?;
        let r1 = d2a0
            .zip_with(&dt_a2, |a, b| a - b)?
            .zip_with(&mean_free(&j.j1), |a, b| a + b)?;
        let r2 = dt_a1
            .zip_with(&d1a0, |a, b| a - b)?
            .zip_with(&mean_free(&j.j2), |a, b| a + b)?;
        per_frame.push([r0.l2_norm(), r1.l2_norm(), r2.l2_norm()]);
    }
    Ok(ResidualReport { per_frame })
}
