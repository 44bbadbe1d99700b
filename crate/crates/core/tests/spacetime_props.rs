mod common;

use std::f64::consts::PI;

use common::*;
use csd_core::integrator::Trajectory;
use csd_core::spacetime::{
    discrete_l2, embedding_check, hsb_norm, spacetime_transform, xsb_norm, Window,
};
use csd_core::{Error, HalfWave, Spinor2, SpinorField};
use proptest::prelude::*;

/// `e^{i(k·x − ωt)}v` sampled on `m` frames over one period `2π`.
fn plane_wave(t: &csd_core::Torus, k: [i64; 2], omega: f64, m: usize) -> Trajectory {
    let v = Spinor2(cx(0.6, 0.0), cx(0.0, 0.8));
    let dt = 2.0 * PI / m as f64;
    let frames = (0..m)
        .map(|j| {
            let th = -omega * j as f64 * dt;
            let s = SpinorField::single_mode(*t.grid(), k, v * cx(th.cos(), th.sin())).unwrap();
            t.spinor_physical(&s).unwrap()
        })
        .collect();
    Trajectory::new(frames, dt).unwrap()
}

#[test]
fn single_mode_xsb_ratios() {
    let t = torus(8);
    let traj = plane_wave(&t, [1, 0], 1.0, 16);
    let l2 = discrete_l2(&traj);
    let plus = xsb_norm(&t, &traj, 0.0, 1.0, HalfWave::Plus).unwrap();
    let minus = xsb_norm(&t, &traj, 0.0, 1.0, HalfWave::Minus).unwrap();
    assert!((plus / l2 - 1.0).abs() < 1e-10);
    assert!((minus / l2 - 5f64.sqrt()).abs() < 1e-10);
    // on the cone |τ| = |ξ| the two-sided weight is 1
    assert!((hsb_norm(&t, &traj, 0.0, 1.0).unwrap() / l2 - 1.0).abs() < 1e-10);
}

#[test]
fn opposite_characteristic_swaps_the_ratios() {
    let t = torus(8);
    let traj = plane_wave(&t, [0, 1], -1.0, 16);
    let l2 = discrete_l2(&traj);
    assert!((xsb_norm(&t, &traj, 0.0, 1.0, HalfWave::Minus).unwrap() / l2 - 1.0).abs() < 1e-10);
    assert!(
        (xsb_norm(&t, &traj, 0.0, 1.0, HalfWave::Plus).unwrap() / l2 - 5f64.sqrt()).abs() < 1e-10
    );
}

#[test]
fn sobolev_weight_on_a_single_mode() {
    let t = torus(16);
    let traj = plane_wave(&t, [3, 4], 0.0, 8);
    let l2 = discrete_l2(&traj);
    // ⟨ξ⟩ = √26, and ⟨|τ| − |ξ|⟩ = √26 at τ = 0
    let v = xsb_norm(&t, &traj, 1.0, 0.0, HalfWave::Plus).unwrap();
    assert!((v / l2 - 26f64.sqrt()).abs() < 1e-10);
    let v = hsb_norm(&t, &traj, 0.0, 0.5).unwrap();
    assert!((v / l2 - 26f64.powf(0.25)).abs() < 1e-10);
}

#[test]
fn negative_b_is_rejected() {
    let t = torus(8);
    let traj = random_trajectory(&t, &mut rng(0), 6, 0.1);
    assert!(matches!(
        embedding_check(&t, &traj, 0.0, -0.5),
        Err(Error::InvalidConfig(_))
    ));
}

#[test]
fn taper_vanishes_at_the_ends() {
    let t = torus(8);
    let traj = plane_wave(&t, [1, 0], 1.0, 21);
    let spec = spacetime_transform(&t, &traj, Window::Taper).unwrap();
    assert!(spec.l2_norm() < discrete_l2(&traj));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn plancherel(seed in any::<u64>(), m in 4usize..11) {
        let t = torus(8);
        let traj = random_trajectory(&t, &mut rng(seed), m, 0.07);
        let spec = spacetime_transform(&t, &traj, Window::None).unwrap();
        prop_assert!(rel(spec.l2_norm(), discrete_l2(&traj)) < 1e-12);
    }

    #[test]
    fn embedding_holds(seed in any::<u64>(), s in -1.0f64..1.0, bi in 0usize..3) {
        let t = torus(8);
        let b = [0.0, 0.5, 1.0][bi];
        let traj = random_trajectory(&t, &mut rng(seed), 8, 0.1);
        let r = embedding_check(&t, &traj, s, b).unwrap();
        prop_assert!(r.hsb <= r.xsb_plus * (1.0 + 1e-12));
        prop_assert!(r.hsb <= r.xsb_minus * (1.0 + 1e-12));
        if b == 0.0 {
            prop_assert!(rel(r.xsb_plus, r.hsb) < 1e-12 && rel(r.xsb_minus, r.hsb) < 1e-12);
        }
    }

    #[test]
    fn monotone_in_both_exponents(seed in any::<u64>(), s in -1.0f64..1.0, b in 0.0f64..1.0, ds in 0.0f64..0.5, db in 0.0f64..0.5) {
        let t = torus(8);
        let traj = random_trajectory(&t, &mut rng(seed), 7, 0.1);
        let spec = spacetime_transform(&t, &traj, Window::None).unwrap();
        for hw in [HalfWave::Plus, HalfWave::Minus] {
            let base = spec.xsb_norm(s, b, hw);
            prop_assert!(spec.xsb_norm(s + ds, b, hw) >= base * (1.0 - 1e-12));
            prop_assert!(spec.xsb_norm(s, b + db, hw) >= base * (1.0 - 1e-12));
        }
        prop_assert!(spec.hsb_norm(s, b + db) >= spec.hsb_norm(s, b) * (1.0 - 1e-12));
    }

    #[test]
    fn reflections_swap_characteristics(seed in any::<u64>(), m in 5usize..10, s in -1.0f64..1.0, b in 0.0f64..1.5) {
        let t = torus(8);
        let traj = random_trajectory(&t, &mut rng(seed), m, 0.1);
        let conj = Trajectory::new(
            traj.frames().iter().map(|f| f.map(|_, v| Spinor2(v.0.conj(), v.1.conj()))).collect(),
            traj.dt(),
        ).unwrap();
        // both t ↦ −t and ψ ↦ ψ* send τ + |ξ| to −(τ − |ξ|) up to a phase
        let rev = traj.time_reversed();
        let a = xsb_norm(&t, &traj, s, b, HalfWave::Plus).unwrap();
        for other in [&conj, &rev] {
            let c = xsb_norm(&t, other, s, b, HalfWave::Minus).unwrap();
            prop_assert!(rel(a, c) < 1e-10, "{} vs {}", a, c);
            let h1 = hsb_norm(&t, &traj, s, b).unwrap();
            let h2 = hsb_norm(&t, other, s, b).unwrap();
            prop_assert!(rel(h1, h2) < 1e-10);
        }
    }
}
