#![allow(dead_code)]

use csd_core::integrator::Trajectory;
use csd_core::{Complex64, Representation, Spinor2, SpinorField, Torus, TorusGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn torus(n: usize) -> Torus {
    Torus::naive(TorusGrid::standard(n).unwrap())
}

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gauss(r: &mut ChaCha8Rng) -> Complex64 {
    cx(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

/// Random spectral field with every non-Nyquist mode active.
pub fn random_field(t: &Torus, r: &mut ChaCha8Rng) -> SpinorField {
    let g = *t.grid();
    let mut f = SpinorField::zeros(g, Representation::Spectral);
    for i in 0..g.len() {
        if !g.is_nyquist(i) {
            f.set(i, Spinor2(gauss(r), gauss(r)));
        }
    }
    t.spinor_physical(&f).unwrap()
}

/// Random field supported in the dealiasing band, physical representation.
pub fn random_band_limited(t: &Torus, r: &mut ChaCha8Rng, amp: f64) -> SpinorField {
    let g = *t.grid();
    let mut f = SpinorField::zeros(g, Representation::Spectral);
    for i in 0..g.len() {
        if g.is_resolved(i) {
            f.set(i, Spinor2(gauss(r), gauss(r)) * cx(amp, 0.0));
        }
    }
    t.spinor_physical(&f).unwrap()
}

/// Smooth random field with coefficients decaying like `e^{−|k|}`.
pub fn random_smooth(t: &Torus, r: &mut ChaCha8Rng, amp: f64) -> SpinorField {
    let g = *t.grid();
    let mut f = SpinorField::zeros(g, Representation::Spectral);
    for i in 0..g.len() {
        if g.is_resolved(i) {
            let k = g.wavevector(i);
            let decay = (-((k[0] * k[0] + k[1] * k[1]) as f64).sqrt()).exp();
            f.set(i, Spinor2(gauss(r), gauss(r)) * cx(amp * decay, 0.0));
        }
    }
    t.spinor_physical(&f).unwrap()
}

pub fn random_trajectory(t: &Torus, r: &mut ChaCha8Rng, frames: usize, dt: f64) -> Trajectory {
    let fs = (0..frames)
        .map(|_| random_band_limited(t, r, 0.3))
        .collect();
    Trajectory::new(fs, dt).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
