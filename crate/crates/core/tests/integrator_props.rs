mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use common::*;
use csd_core::integrator::{
    charge, free_propagate, integrate, integrate_forced, rhs, split_initial_data, HalfWavePair,
    ManufacturedSolution, SolverConfig, Stepper, Trajectory,
};
use csd_core::model::SignConvention;
use csd_core::stats::fit_order;
use csd_core::{Error, HalfWave, Representation, Spinor2, SpinorField};
use proptest::prelude::*;

fn eigenmode(t: &csd_core::Torus) -> SpinorField {
    let r = FRAC_1_SQRT_2;
    let s = SpinorField::single_mode(*t.grid(), [1, 0], Spinor2(cx(r, 0.0), cx(0.0, -r))).unwrap();
    t.spinor_physical(&s).unwrap()
}

fn linear(n: usize, dt: f64, t_final: f64) -> SolverConfig {
    let mut c = SolverConfig::new(n, 2.0 * PI, dt, t_final);
    c.nonlinear = false;
    c
}

#[test]
fn split_of_eigenmode_and_zero() {
    let t = torus(8);
    let psi = eigenmode(&t);
    let pair = split_initial_data(&t, &psi).unwrap();
    assert!(t.spinor_physical(&pair.plus).unwrap().max_abs_diff(&psi) < 1e-14);
    assert!(pair.minus.l2_norm() < 1e-14);

    let zero = SpinorField::zeros(*t.grid(), Representation::Physical);
    let pair = split_initial_data(&t, &zero).unwrap();
    assert_eq!(pair, HalfWavePair::zeros(*t.grid()));
}

#[test]
fn free_solver_is_the_free_propagator() {
    let t = torus(8);
    let psi = eigenmode(&t);
    let cfg = linear(8, 0.01, 1.0);
    let traj = integrate(&t, &cfg, &psi).unwrap();
    assert_eq!(traj.len(), 101);
    let pair = split_initial_data(&t, &psi).unwrap();
    for (j, frame) in traj.frames().iter().enumerate() {
        let exact = free_propagate(&t, &pair, j as f64 * 0.01).unwrap();
        let exact = t.spinor_physical(&exact.sum()).unwrap();
        assert!(frame.max_abs_diff(&exact) < 1e-12, "frame {j}");
    }
}

#[test]
fn free_step_is_bitwise_phase_multiplication() {
    let t = torus(8);
    let psi = random_band_limited(&t, &mut rng(2), 1.0);
    let pair = split_initial_data(&t, &psi).unwrap();
    let stepper = Stepper::new(&t, 0.0, None, None);
    let a = stepper.step(0.0, 0.1, &pair).unwrap();
    let b = stepper.step(0.0, 0.1, &pair).unwrap();
    assert_eq!(a, b);
    let exact = free_propagate(&t, &pair, 0.1).unwrap();
    assert!(a.plus.max_abs_diff(&exact.plus) < 1e-15);
    assert!(a.minus.max_abs_diff(&exact.minus) < 1e-15);
}

#[test]
fn mass_oscillation_matches_closed_form() {
    let t = torus(4);
    let (c1, c2) = (cx(0.6, 0.2), cx(-0.3, 0.5));
    let psi = t.spinor_from_fn(|_| Spinor2(c1, c2));
    let mut cfg = linear(4, 1e-3, 1.0);
    cfg.mass = 1.0;
    let traj = integrate(&t, &cfg, &psi).unwrap();
    let mut worst = 0.0f64;
    for (j, frame) in traj.frames().iter().enumerate() {
        let s = j as f64 * 1e-3;
        let (a, b) = (c1 * cx(s.cos(), -s.sin()), c2 * cx(s.cos(), s.sin()));
        for i in 0..frame.len() {
            let v = frame.get(i);
            worst = worst.max((v.0 - a).norm()).max((v.1 - b).norm());
        }
    }
    assert!(worst < 1e-10, "{worst:e}");
}

fn manufactured_error(dt: f64) -> f64 {
    let t = torus(16);
    let sol = ManufacturedSolution::standard();
    let mut cfg = SolverConfig::new(16, 2.0 * PI, dt, 1.0);
    cfg.mass = 1.0;
    let forcing = sol.forcing(cfg.mass, Some(cfg.sign));
    let psi0 = t
        .spinor_physical(&sol.value(t.grid(), 0.0).unwrap())
        .unwrap();
    let traj = integrate_forced(&t, &cfg, &psi0, Some(&forcing)).unwrap();
    let exact = t
        .spinor_physical(&sol.value(t.grid(), 1.0).unwrap())
        .unwrap();
    traj.frames().last().unwrap().max_abs_diff(&exact)
}

#[test]
fn manufactured_solution_converges_at_fourth_order() {
    let dts = [4e-3, 2e-3, 1e-3];
    let errs: Vec<f64> = dts.iter().map(|&dt| manufactured_error(dt)).collect();
    let p = fit_order(&dts, &errs).unwrap();
    assert!((3.7..=4.3).contains(&p), "order {p}, errors {errs:?}");
}

#[test]
fn charge_of_free_flow_and_zero_data() {
    let t = torus(8);
    let psi = random_band_limited(&t, &mut rng(5), 1.0);
    let traj = integrate(&t, &linear(8, 0.05, 1.0), &psi).unwrap();
    let q = charge(&traj);
    assert!(q.iter().all(|v| (v - q[0]).abs() <= 1e-13 * q[0]));

    let zero = SpinorField::zeros(*t.grid(), Representation::Physical);
    let traj = integrate(&t, &SolverConfig::new(8, 2.0 * PI, 0.05, 0.5), &zero).unwrap();
    assert!(charge(&traj).iter().all(|&v| v == 0.0));
}

#[test]
fn nonlinear_charge_drift_is_small() {
    let t = torus(16);
    let psi = random_smooth(&t, &mut rng(8), 0.3);
    let traj = integrate(&t, &SolverConfig::new(16, 2.0 * PI, 1e-2, 1.0), &psi).unwrap();
    let q = charge(&traj);
    let drift = q.iter().map(|v| (v - q[0]).abs()).fold(0.0, f64::max) / q[0];
    assert!(drift < 1e-6, "{drift:e}");
}

#[test]
fn free_flow_is_time_reversible() {
    let t = torus(8);
    let psi = random_band_limited(&t, &mut rng(6), 1.0);
    let pair = split_initial_data(&t, &psi).unwrap();
    let stepper = Stepper::new(&t, 0.0, None, None);
    let mut s = pair.clone();
    for j in 0..100 {
        s = stepper.step(j as f64 * 0.01, 0.01, &s).unwrap();
    }
    for j in (0..100).rev() {
        s = stepper.step((j + 1) as f64 * 0.01, -0.01, &s).unwrap();
    }
    assert!(s.plus.max_abs_diff(&pair.plus) < 1e-12);
    assert!(s.minus.max_abs_diff(&pair.minus) < 1e-12);
}

#[test]
fn integration_is_deterministic() {
    let t = torus(8);
    let psi = random_band_limited(&t, &mut rng(9), 0.05);
    let mut cfg = SolverConfig::new(8, 2.0 * PI, 0.02, 0.2);
    cfg.mass = 0.5;
    let a = integrate(&t, &cfg, &psi).unwrap();
    let b = integrate(&t, &cfg, &psi).unwrap();
    assert_eq!(a, b);
}

#[test]
fn oversized_step_is_rejected() {
    let t = torus(8);
    let psi = random_band_limited(&t, &mut rng(1), 3.0);
    let err = integrate(&t, &SolverConfig::new(8, 2.0 * PI, 0.5, 1.0), &psi).unwrap_err();
    assert!(matches!(err, Error::StepTooLarge { .. }));
}

#[test]
fn stride_keeps_every_kth_frame() {
    let t = torus(8);
    let psi = eigenmode(&t);
    let full = integrate(&t, &linear(8, 0.01, 0.2), &psi).unwrap();
    let mut cfg = linear(8, 0.01, 0.2);
    cfg.stride = 5;
    let thin: Trajectory = integrate(&t, &cfg, &psi).unwrap();
    assert_eq!(thin.len(), 5);
    assert!((thin.dt() - 0.05).abs() < 1e-15);
    for (j, f) in thin.frames().iter().enumerate() {
        assert_eq!(f, &full.frames()[5 * j]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_propagation_is_unitary_and_composes(seed in any::<u64>(), s in -3.0f64..3.0, u in -3.0f64..3.0) {
        let t = torus(8);
        let psi = random_band_limited(&t, &mut rng(seed), 1.0);
        let pair = split_initial_data(&t, &psi).unwrap();
        let a = free_propagate(&t, &free_propagate(&t, &pair, s).unwrap(), u).unwrap();
        let b = free_propagate(&t, &pair, s + u).unwrap();
        prop_assert!(a.plus.max_abs_diff(&b.plus) < 1e-12);
        prop_assert!(a.minus.max_abs_diff(&b.minus) < 1e-12);
        for sign in [HalfWave::Plus, HalfWave::Minus] {
            prop_assert!(rel(b.get(sign).l2_norm(), pair.get(sign).l2_norm()) < 1e-13);
        }
    }

    #[test]
    fn split_sums_back(seed in any::<u64>()) {
        let t = torus(8);
        let psi = random_band_limited(&t, &mut rng(seed), 1.0);
        let pair = split_initial_data(&t, &psi).unwrap();
        let back = t.spinor_physical(&pair.sum()).unwrap();
        prop_assert!(back.max_abs_diff(&psi) < 1e-12);
    }

    #[test]
    fn rhs_respects_projections(seed in any::<u64>(), mass in 0.0f64..2.0, negative in any::<bool>()) {
        let t = torus(8);
        let psi = random_band_limited(&t, &mut rng(seed), 0.5);
        let pair = split_initial_data(&t, &psi).unwrap();
        let sign = if negative { SignConvention::Negative } else { SignConvention::Positive };
        let r = rhs(&t, &pair, mass, sign).unwrap();
        for hw in [HalfWave::Plus, HalfWave::Minus] {
            let p = t.half_wave_projection(r.get(hw), hw).unwrap();
            prop_assert!(p.max_abs_diff(r.get(hw)) < 1e-12);
        }
    }

    #[test]
    fn nonlinear_steps_stay_in_their_subspaces(seed in any::<u64>()) {
        let t = torus(8);
        let psi = random_band_limited(&t, &mut rng(seed), 0.05);
        let mut cfg = SolverConfig::new(8, 2.0 * PI, 0.02, 0.1);
        cfg.mass = 1.0;
        let traj = integrate(&t, &cfg, &psi).unwrap();
        let last = traj.frames().last().unwrap();
        let pair = split_initial_data(&t, last).unwrap();
        let back = t.spinor_physical(&pair.sum()).unwrap();
        prop_assert!(back.max_abs_diff(last) < 1e-10);
    }
}

#[test]
fn rhs_vanishes_for_constant_massless_data() {
    let t = torus(8);
    let psi = t.spinor_from_fn(|_| Spinor2(cx(0.3, 0.1), cx(0.2, -0.4)));
    let pair = split_initial_data(&t, &psi).unwrap();
    let r = rhs(&t, &pair, 0.0, SignConvention::Positive).unwrap();
    assert!(r.plus.l2_norm() < 1e-14 && r.minus.l2_norm() < 1e-14);
}
