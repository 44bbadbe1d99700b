use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dirac::Mat2;
use crate::error::Result;
use crate::field::Spinor2;
use crate::integrator::Trajectory;
use crate::spacetime::{spacetime_transform, SpaceTimeSpectrum, Window};
use crate::spectral::Torus;

use super::nonlinearity::{nonlinearity_spectral, SignConvention};

/// `∫⟨N(ψ₁,ψ₂,ψ₃), ψ₄⟩ dx dt` evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrilinearValue {
    /// Physical-space Riemann sum over frames and grid points.
    pub physical: Complex64,
    /// Space-time Fourier sum of the symbol `q` over the convolution set.
    pub fourier: Complex64,
}

impl QuadrilinearValue {
    /// `|physical − fourier| / max(|physical|, |fourier|)`, 0 when both vanish.
    pub fn relative_gap(&self) -> f64 {
        let scale = self.physical.norm().max(self.fourier.norm());
        if scale == 0.0 {
            0.0
        } else {
            (self.physical - self.fourier).norm() / scale
        }
    }
}

/// Evaluate the quadrilinear form on four trajectories sharing one lattice.
/// Inputs are dealiased frame by frame first. Time is treated as periodic
/// with period `M·Δt`, so both paths see the same discrete integral.
pub fn quadrilinear_form(
    torus: &Torus,
    psi: [&Trajectory; 4],
    sign: SignConvention,
) -> Result<QuadrilinearValue> {
    for t in &psi[1..] {
        psi[0].ensure_same_lattice(t)?;
    }
    torus.grid().ensure_same(psi[0].grid())?;
    let mut clean: Vec<Trajectory> = Vec::with_capacity(4);
    for t in psi {
        let frames = t
            .frames()
            .iter()
            .map(|f| torus.dealias(f).and_then(|d| torus.spinor_physical(&d)))
            .collect::<Result<Vec<_>>>()?;
        clean.push(Trajectory::new(frames, t.dt())?);
    }
    let physical = physical_path(torus, &clean, sign.value())?;
    let fourier = fourier_path(torus, &clean, sign.value())?;
    Ok(QuadrilinearValue { physical, fourier })
}

fn physical_path(torus: &Torus, t: &[Trajectory], sigma: f64) -> Result<Complex64> {
    let grid = torus.grid();
    let w = t[0].dt() * grid.spacing() * grid.spacing();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..t[0].len() {
        let n = nonlinearity_spectral(
            torus,
            &t[0].frames()[j],
            &t[1].frames()[j],
            &t[2].frames()[j],
            sigma,
        );
        let n = torus.spinor_physical(&n)?;
        let p4 = &t[3].frames()[j];
        let mut frame = Complex64::new(0.0, 0.0);
        for i in 0..grid.len() {
            frame += n.get(i).inner(p4.get(i));
        }
        acc += frame * w;
    }
    Ok(acc)
}

fn fourier_path(torus: &Torus, t: &[Trajectory], sigma: f64) -> Result<Complex64> {
    let grid = *torus.grid();
    let spectra: Vec<SpaceTimeSpectrum> = t
        .iter()
        .map(|x| spacetime_transform(torus, x, Window::None))
        .collect::<Result<_>>()?;
    let m = spectra[0].frames();
    let (a1, a2) = (Mat2::alpha1(), Mat2::alpha2());

    // nonzero space-time modes (time index, flat spatial index, value)
    let active = |s: &SpaceTimeSpectrum| -> Vec<(usize, usize, Spinor2)> {
        let mut v = Vec::new();
        for i in 0..grid.len() {
            for k in 0..m {
                let c = s.coefficient(k, i);
                if c.norm_sqr() > 0.0 {
                    v.push((k, i, c));
                }
            }
        }
        v
    };
    let l1 = active(&spectra[0]);
    let l2 = active(&spectra[1]);
    let l3 = active(&spectra[2]);

    let mut acc = Complex64::new(0.0, 0.0);
    for &(k1, i1, c1) in &l1 {
        let w1 = grid.wavevector(i1);
        let (a1c1, a2c1) = (a1.apply(c1), a2.apply(c1));
        for &(k2, i2, c2) in &l2 {
            let w2 = grid.wavevector(i2);
            let w0 = [w1[0] - w2[0], w1[1] - w2[1]];
            if w0 == [0, 0] {
                continue;
            }
            let k0 = (k1 + m - k2) % m;
            let b = c1.inner(c2);
            let b1 = a1c1.inner(c2);
            let b2 = a2c1.inner(c2);
            let s = 2.0 * core::f64::consts::PI / grid.extent();
            let xi0 = [w0[0] as f64 * s, w0[1] as f64 * s];
            let r2 = xi0[0] * xi0[0] + xi0[1] * xi0[1];
            for &(k3, i3, c3) in &l3 {
                let w3 = grid.wavevector(i3);
                let Some(i4) = grid.flat_of([w3[0] + w0[0], w3[1] + w0[1]]) else {
                    continue;
                };
                let c4 = spectra[3].coefficient((k3 + k0) % m, i4);
                if c4.norm_sqr() == 0.0 {
                    continue;
                }
                let c = c3.inner(c4);
                let cc1 = a1.apply(c3).inner(c4);
                let cc2 = a2.apply(c3).inner(c4);
                let q = (b1 * c + b * cc1) * xi0[1] - (b2 * c + b * cc2) * xi0[0];
                acc += q / r2;
            }
        }
    }
    // Δ⁻¹∂_j contributes −iξ_j/|ξ|²
    let vol = spectra[0].volume();
    Ok(acc * Complex64::new(0.0, -1.0) * (vol * sigma))
}
