mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use common::*;
use csd_core::integrator::{integrate, SolverConfig, Trajectory};
use csd_core::model::{chern_simons_residual, SignConvention};
use csd_core::stats::fit_order;
use csd_core::{Error, Spinor2, SpinorField};

fn residual_max(t: &csd_core::Torus, sign: SignConvention, dt: f64, amp: f64) -> [f64; 3] {
    let psi = random_smooth(t, &mut rng(21), amp);
    let mut cfg = SolverConfig::new(t.grid().n(), 2.0 * PI, dt, 0.8);
    cfg.mass = 1.0;
    cfg.sign = sign;
    let traj = integrate(t, &cfg, &psi).unwrap();
    chern_simons_residual(t, &traj).unwrap().max()
}

#[test]
fn free_plane_wave_has_no_residual() {
    let t = torus(8);
    let r = FRAC_1_SQRT_2;
    let psi =
        SpinorField::single_mode(*t.grid(), [1, 0], Spinor2(cx(r, 0.0), cx(0.0, -r))).unwrap();
    let psi = t.spinor_physical(&psi).unwrap();
    let mut cfg = SolverConfig::new(8, 2.0 * PI, 0.05, 0.5);
    cfg.nonlinear = false;
    let traj = integrate(&t, &cfg, &psi).unwrap();
    let m = chern_simons_residual(&t, &traj).unwrap().max();
    assert!(m[0] <= 1e-12);
    assert!(m[1] <= 1e-10 && m[2] <= 1e-10);
}

#[test]
fn density_component_is_exact_along_trajectories() {
    let t = torus(16);
    let m = residual_max(&t, SignConvention::Positive, 0.02, 0.2);
    assert!(m[0] <= 1e-12, "{m:?}");
}

#[test]
fn transport_components_converge_at_fourth_order() {
    let t = torus(32);
    let dts = [0.08, 0.04, 0.02];
    let r: Vec<[f64; 3]> = dts
        .iter()
        .map(|&dt| residual_max(&t, SignConvention::Positive, dt, 0.05))
        .collect();
    for mu in 1..3 {
        let ys: Vec<f64> = r.iter().map(|v| v[mu]).collect();
        let p = fit_order(&dts, &ys).unwrap();
        assert!(p >= 3.7, "μ={mu}: order {p}, residuals {ys:?}");
    }
}

// N is a real pointwise potential for either sign, so charge continuity and
// with it the transport identities survive a sign flip.
#[test]
fn flipped_sign_converges_too() {
    let t = torus(32);
    let dts = [0.08, 0.04, 0.02];
    let ys: Vec<f64> = dts
        .iter()
        .map(|&dt| residual_max(&t, SignConvention::Negative, dt, 0.05)[1])
        .collect();
    assert!(fit_order(&dts, &ys).unwrap() >= 3.7, "{ys:?}");
}

#[test]
fn short_trajectories_are_rejected() {
    let t = torus(8);
    let frames = vec![random_band_limited(&t, &mut rng(0), 0.1); 4];
    let traj = Trajectory::new(frames, 0.1).unwrap();
    assert!(matches!(
        chern_simons_residual(&t, &traj),
        Err(Error::TooFewFrames {
            found: 4,
            needed: 5
        })
    ));
}
