//! Refinement studies and ensembles. Each member run is independent; the
//! drivers fan them out over the current rayon pool.

use csd_core::integrator::{
    charge, integrate, integrate_forced, ManufacturedSolution, SolverConfig, Trajectory,
};
use csd_core::model::{chern_simons_residual, trilinear_l2_ratio, SignConvention};
use csd_core::stats::fit_order;
use csd_core::{Error as CoreError, SpinorField, Torus};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{self, RunConfig};
use crate::error::{Result, SimError};
use crate::initial::{make_initial_data, DataSpec};

/// Run `f` on a pool sized by `CSD_WORKERS`, or on the global pool.
pub fn in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match config::workers()? {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| SimError::Config(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn order_of(dts: &[f64], ys: &[f64]) -> Option<f64> {
    fit_order(dts, ys).ok()
}

fn solver(torus: &Torus, dt: f64, t_final: f64, mass: f64, sign: SignConvention) -> SolverConfig {
    let g = torus.grid();
    let mut c = SolverConfig::new(g.n(), g.extent(), dt, t_final);
    c.mass = mass;
    c.sign = sign;
    c
}

/// `max_j |Q_j − Q_0| / Q_0`, zero for vanishing charge.
pub fn relative_charge_drift(traj: &Trajectory) -> f64 {
    let q = charge(traj);
    if q[0] == 0.0 {
        return q.iter().map(|v| v.abs()).fold(0.0, f64::max);
    }
    q.iter().map(|v| (v - q[0]).abs()).fold(0.0, f64::max) / q[0]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub dt: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub rows: Vec<ErrorRow>,
    /// Least-squares slope of `log error` against `log Δt`.
    pub order: Option<f64>,
}

/// Final-time max error against the standard manufactured solution.
pub fn manufactured_convergence(
    torus: &Torus,
    dts: &[f64],
    t_final: f64,
    mass: f64,
    sign: SignConvention,
) -> Result<ConvergenceStudy> {
    let sol = ManufacturedSolution::standard();
    let grid = *torus.grid();
    let psi0 = torus.spinor_physical(&sol.value(&grid, 0.0)?)?;
    let exact = torus.spinor_physical(&sol.value(&grid, t_final)?)?;
    let forcing = sol.forcing(mass, Some(sign));
    let rows = dts
        .par_iter()
        .map(|&dt| {
            let cfg = solver(torus, dt, t_final, mass, sign);
            let traj = integrate_forced(torus, &cfg, &psi0, Some(&forcing))?;
            Ok(ErrorRow {
                dt,
                error: traj.frames().last().expect("nonempty").max_abs_diff(&exact),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let order = order_of(dts, &rows.iter().map(|r| r.error).collect::<Vec<_>>());
    Ok(ConvergenceStudy { rows, order })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftRow {
    pub dt: f64,
    pub drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargeStudy {
    pub rows: Vec<DriftRow>,
    pub order: Option<f64>,
}

pub fn charge_refinement(
    torus: &Torus,
    psi0: &SpinorField,
    dts: &[f64],
    t_final: f64,
    mass: f64,
    sign: SignConvention,
) -> Result<ChargeStudy> {
    let rows = dts
        .par_iter()
        .map(|&dt| {
            let traj = integrate(torus, &solver(torus, dt, t_final, mass, sign), psi0)?;
            Ok(DriftRow {
                dt,
                drift: relative_charge_drift(&traj),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let order = order_of(dts, &rows.iter().map(|r| r.drift).collect::<Vec<_>>());
    Ok(ChargeStudy { rows, order })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualRow {
    pub dt: f64,
    pub density: f64,
    pub transport_1: f64,
    pub transport_2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualStudy {
    pub sign_convention: i32,
    pub rows: Vec<ResidualRow>,
    /// Orders of the `μ = 1` and `μ = 2` residuals.
    pub orders: [Option<f64>; 2],
}

/// Maximum-over-frames gauge residuals of integrated trajectories.
pub fn residual_refinement(
    torus: &Torus,
    psi0: &SpinorField,
    dts: &[f64],
    t_final: f64,
    mass: f64,
    sign: SignConvention,
) -> Result<ResidualStudy> {
    let rows = dts
        .par_iter()
        .map(|&dt| {
            let traj = integrate(torus, &solver(torus, dt, t_final, mass, sign), psi0)?;
            let m = chern_simons_residual(torus, &traj)?.max();
            Ok(ResidualRow {
                dt,
                density: m[0],
                transport_1: m[1],
                transport_2: m[2],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let r1: Vec<f64> = rows.iter().map(|r| r.transport_1).collect();
    let r2: Vec<f64> = rows.iter().map(|r| r.transport_2).collect();
    Ok(ResidualStudy {
        sign_convention: sign.value() as i32,
        orders: [order_of(dts, &r1), order_of(dts, &r2)],
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRow {
    pub seed: u64,
    /// `ok`, `blow-up` or `step-too-large`.
    pub status: String,
    pub blowup_step: Option<usize>,
    pub hs_norm: f64,
    pub charge_drift: Option<f64>,
    pub residual_max: Option<f64>,
    pub trilinear_ratio: Option<f64>,
}

/// One rough-data run per seed in `cfg.seed .. cfg.seed + cfg.members`.
pub fn ensemble(torus: &Torus, cfg: &RunConfig) -> Result<Vec<EnsembleRow>> {
    let spec = cfg.data_spec()?;
    let solver = cfg.solver()?;
    let sign = cfg.sign()?;
    (cfg.seed..cfg.seed + cfg.members as u64)
        .into_par_iter()
        .map(|seed| {
            let psi0 = make_initial_data(&spec, torus, seed)?;
            let hs_norm = torus.sobolev_norm(&psi0, cfg.s, false)?;
            let trilinear_ratio = trilinear_l2_ratio(torus, &psi0, sign).ok();
            let mut row = EnsembleRow {
                seed,
                status: "ok".into(),
                blowup_step: None,
                hs_norm,
                charge_drift: None,
                residual_max: None,
                trilinear_ratio,
            };
            match integrate(torus, &solver, &psi0) {
                Ok(traj) => {
                    row.charge_drift = Some(relative_charge_drift(&traj));
                    if traj.len() >= 5 {
                        let m = chern_simons_residual(torus, &traj)?.max();
                        row.residual_max = Some(m[1].max(m[2]));
                    }
                }
                Err(CoreError::BlowUp { step, .. }) => {
                    row.status = "blow-up".into();
                    row.blowup_step = Some(step);
                }
                Err(CoreError::StepTooLarge { .. }) => row.status = "step-too-large".into(),
                Err(e) => return Err(e.into()),
            }
            Ok(row)
        })
        .collect()
}

/// `‖N(ψ,ψ,ψ)‖_{L²}/‖ψ‖³_{H^{1/3}}` over seeded `random-hs(s, 1)` fields.
pub fn trilinear_ratios(
    torus: &Torus,
    s: f64,
    count: usize,
    seed: u64,
    sign: SignConvention,
) -> Result<Vec<f64>> {
    let spec = DataSpec::RandomHs { s, amplitude: 1.0 };
    (seed..seed + count as u64)
        .into_par_iter()
        .map(|k| {
            let psi = make_initial_data(&spec, torus, k)?;
            Ok(trilinear_l2_ratio(torus, &psi, sign)?)
        })
        .collect()
}
