mod common;

use common::*;
use csd_core::integrator::Trajectory;
use csd_core::model::{
    currents, nonlinearity, potential_regularity_report, potentials, quadrilinear_form,
    trilinear_l2_ratio, GaugePotentials, SignConvention,
};
use csd_core::{Spinor2, SpinorField};
use proptest::prelude::*;

const PLUS: SignConvention = SignConvention::Positive;

#[test]
fn quadrilinear_zero_and_constant_pairs() {
    let t = torus(8);
    let zero = Trajectory::new(
        vec![SpinorField::zeros(*t.grid(), csd_core::Representation::Physical); 8],
        0.1,
    )
    .unwrap();
    let q = quadrilinear_form(&t, [&zero, &zero, &zero, &zero], PLUS).unwrap();
    assert_eq!(q.physical, cx(0.0, 0.0));
    assert_eq!(q.fourier, cx(0.0, 0.0));

    // ξ₀ = 0 carries no potential; only transform rounding survives
    let c = t.spinor_from_fn(|_| Spinor2(cx(0.4, 0.1), cx(-0.2, 0.3)));
    let constant = Trajectory::new(vec![c; 8], 0.1).unwrap();
    let other = random_trajectory(&t, &mut rng(3), 8, 0.1);
    let q = quadrilinear_form(&t, [&constant, &constant, &other, &other], PLUS).unwrap();
    assert!(q.physical.norm() < 1e-14);
    assert!(q.fourier.norm() < 1e-14);
}

#[test]
fn quadrilinear_paths_agree_on_random_trajectories() {
    let t = torus(8);
    let mut r = rng(11);
    for _ in 0..5 {
        let p: Vec<Trajectory> = (0..4)
            .map(|_| random_trajectory(&t, &mut r, 8, 0.05))
            .collect();
        let q = quadrilinear_form(&t, [&p[0], &p[1], &p[2], &p[3]], PLUS).unwrap();
        assert!(q.physical.norm() > 1e-6);
        assert!(q.relative_gap() < 1e-9, "gap {}", q.relative_gap());
    }
}

#[test]
fn quadrilinear_rejects_lattice_mismatch() {
    let t = torus(8);
    let mut r = rng(1);
    let a = random_trajectory(&t, &mut r, 8, 0.05);
    let b = random_trajectory(&t, &mut r, 7, 0.05);
    assert!(quadrilinear_form(&t, [&a, &a, &a, &b], PLUS).is_err());
}

#[test]
fn regularity_report_vanishes_for_plane_wave_and_constant() {
    let t = torus(16);
    let pw = t.spinor_from_fn(|x| Spinor2(cx(x[0].cos(), x[0].sin()), cx(0.0, 0.0)));
    let c = t.spinor_from_fn(|_| Spinor2(cx(0.3, 0.0), cx(0.0, 0.8)));
    for psi in [pw, c] {
        let r = potential_regularity_report(&t, &psi, 0.4, 0.05).unwrap();
        assert!(r.a_2s < 1e-13 && r.a_eps < 1e-13);
        assert!(r.psi_hs_sq > 0.0);
    }
}

#[test]
fn trilinear_ratio_rejects_zero_and_vanishes_on_constants() {
    let t = torus(8);
    let zero = SpinorField::zeros(*t.grid(), csd_core::Representation::Physical);
    assert!(trilinear_l2_ratio(&t, &zero, PLUS).is_err());
    let c = t.spinor_from_fn(|_| Spinor2(cx(1.0, 0.0), cx(0.5, 0.5)));
    assert!(trilinear_l2_ratio(&t, &c, PLUS).unwrap() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn current_cone_and_realness(seed in any::<u64>()) {
        let t = torus(16);
        let psi = random_field(&t, &mut rng(seed));
        let j = currents(&t, &psi).unwrap();
        for i in 0..t.grid().len() {
            let v = psi.get(i);
            let j0 = j.j0.values()[i];
            prop_assert!((j0 - v.norm_sqr()).abs() <= 1e-14 * j0.max(1.0));
            prop_assert!(j.j1.values()[i].abs() <= j0 * (1.0 + 1e-12));
            prop_assert!(j.j2.values()[i].abs() <= j0 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn coulomb_and_density_identities(seed in any::<u64>()) {
        let t = torus(16);
        let psi = random_band_limited(&t, &mut rng(seed), 1.0);
        let j = currents(&t, &psi).unwrap();
        let a = GaugePotentials::from_currents(&t, &j).unwrap();
        prop_assert!(a.coulomb_divergence(&t).unwrap().l2_norm() <= 1e-12);
        let m = j.j0.mean();
        let r = a.curvature_12(&t).unwrap().zip_with(&j.j0, |f, d| f + d - m).unwrap();
        prop_assert!(r.l2_norm() <= 1e-12);
        for c in a.components() {
            prop_assert!(c.mean().abs() < 1e-14);
        }
    }

    #[test]
    fn nonlinearity_linearity(seed in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let t = torus(8);
        let mut r = rng(seed);
        let (a, b, c) = (random_band_limited(&t, &mut r, 1.0), random_band_limited(&t, &mut r, 1.0), random_band_limited(&t, &mut r, 1.0));
        let z = cx(re, im);
        let base = nonlinearity(&t, &a, &b, &c, PLUS).unwrap();
        let scale = base.l2_norm().max(1.0) * (1.0 + z.norm());
        let n1 = nonlinearity(&t, &a.scale(z), &b, &c, PLUS).unwrap();
        prop_assert!((&n1 - &base.scale(z)).l2_norm() <= 1e-12 * scale);
        let n2 = nonlinearity(&t, &a, &b.scale(z), &c, PLUS).unwrap();
        prop_assert!((&n2 - &base.scale(z.conj())).l2_norm() <= 1e-12 * scale);
        let n3 = nonlinearity(&t, &a, &b, &c.scale(z), PLUS).unwrap();
        prop_assert!((&n3 - &base.scale(z)).l2_norm() <= 1e-12 * scale);
        prop_assert!(t.is_band_limited(&base, 1e-14).unwrap());
    }

    #[test]
    fn trilinear_ratio_scale_invariant(seed in any::<u64>(), c in 0.01f64..100.0) {
        let t = torus(8);
        let psi = random_band_limited(&t, &mut rng(seed), 1.0);
        let a = trilinear_l2_ratio(&t, &psi, PLUS).unwrap();
        let b = trilinear_l2_ratio(&t, &psi.scale(cx(0.0, c)), PLUS).unwrap();
        prop_assert!(rel(b, a) < 1e-11);
    }

    #[test]
    fn potentials_real_and_mean_free(seed in any::<u64>()) {
        let t = torus(8);
        let psi = random_field(&t, &mut rng(seed));
        let a = potentials(&t, &psi).unwrap();
        for c in a.components() {
            prop_assert!(c.values().iter().all(|v| v.is_finite()));
            prop_assert!(c.mean().abs() < 1e-14);
        }
    }
}
