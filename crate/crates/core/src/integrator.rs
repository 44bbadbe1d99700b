//! Interaction-picture Runge–Kutta for the split half-wave system
//!
//! `(−i∂_t ± |D|)ψ_± = −mβψ_∓ − Π_±(σN(ψ,ψ,ψ) + ρ)`,  `ψ = ψ₊ + ψ₋`,
//!
//! which is `i∂_tψ = −iα·∇ψ + mβψ + σN + ρ` split by `Π_±`. The free flow
//! `e^{∓it|D|}` is applied exactly, so only the mass coupling, the cubic term
//! and an optional forcing `ρ` go through the RK4 stages.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

use crate::dirac::Mat2;
use crate::error::{Error, Result};
use crate::field::{Representation, Spinor2, SpinorField};
use crate::grid::TorusGrid;
use crate::model::{nonlinearity_spectral, SignConvention};
use crate::multiplier::{abs_xi, projection_matrix};
use crate::spectral::{HalfWave, Torus};

/// Upper bound for `Δt·(m + C‖ψ₀‖²_{H^{1/2}})` accepted by [`integrate`].
pub const STEP_GUARD: f64 = 0.5;

/// `ψ₊, ψ₋` in spectral representation.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfWavePair {
    pub plus: SpinorField,
    pub minus: SpinorField,
}

impl HalfWavePair {
    pub fn zeros(grid: TorusGrid) -> Self {
        Self {
            plus: SpinorField::zeros(grid, Representation::Spectral),
            minus: SpinorField::zeros(grid, Representation::Spectral),
        }
    }

    pub fn get(&self, sign: HalfWave) -> &SpinorField {
        match sign {
            HalfWave::Plus => &self.plus,
            HalfWave::Minus => &self.minus,
        }
    }

    /// `ψ₊ + ψ₋`, spectral.
    pub fn sum(&self) -> SpinorField {
        &self.plus + &self.minus
    }

    pub fn is_finite(&self) -> bool {
        self.plus.is_finite() && self.minus.is_finite()
    }
}

/// Uniformly sampled solution frames `ψ(t_j)`, `t_j = j·Δt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    grid: TorusGrid,
    frames: Vec<SpinorField>,
    dt: f64,
    pub mass: f64,
    pub sign: SignConvention,
    pub seed: Option<u64>,
}

impl Trajectory {
    /// Frames must be nonempty and share one grid; `dt` positive.
    pub fn new(frames: Vec<SpinorField>, dt: f64) -> Result<Self> {
        let first = frames.first().ok_or(Error::TooFewFrames {
            found: 0,
            needed: 1,
        })?;
        let grid = *first.grid();
        for f in &frames {
            grid.ensure_same(f.grid())?;
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "frame spacing must be positive, got {dt}"
            )));
        }
        Ok(Self {
            grid,
            frames,
            dt,
            mass: 0.0,
            sign: SignConvention::default(),
            seed: None,
        })
    }

    pub fn with_metadata(mut self, mass: f64, sign: SignConvention, seed: Option<u64>) -> Self {
        self.mass = mass;
        self.sign = sign;
        self.seed = seed;
        self
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn frames(&self) -> &[SpinorField] {
        &self.frames
    }

    pub fn into_frames(self) -> Vec<SpinorField> {
        self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Time of the last frame.
    pub fn t_final(&self) -> f64 {
        (self.frames.len() - 1) as f64 * self.dt
    }

    /// Frames in reverse order (same spacing and metadata).
    pub fn time_reversed(&self) -> Self {
        let mut out = self.clone();
        out.frames.reverse();
        out
    }

    /// Same lattice (grid, frame count and spacing) as `other`.
    pub fn ensure_same_lattice(&self, other: &Trajectory) -> Result<()> {
        self.grid.ensure_same(&other.grid)?;
        if self.frames.len() != other.frames.len() || self.dt != other.dt {
            return Err(Error::Shape(format!(
                "trajectory lattices differ: {} frames at dt={} vs {} frames at dt={}",
                self.frames.len(),
                self.dt,
                other.frames.len(),
                other.dt
            )));
        }
        Ok(())
    }
}

/// External source term `ρ(t)` in `i∂_tψ = … + ρ`.
pub trait Forcing: Send + Sync {
    /// Spectral coefficients of `ρ(t)` on the solver's grid.
    fn spectral_at(&self, torus: &Torus, t: f64) -> Result<SpinorField>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub n: usize,
    pub extent: f64,
    pub dt: f64,
    pub t_final: f64,
    pub mass: f64,
    /// Include the cubic term.
    pub nonlinear: bool,
    /// Dealias `ψ₀` before integrating (the cubic term is always dealiased).
    pub dealias: bool,
    pub sign: SignConvention,
    /// Record every `stride`-th step.
    pub stride: usize,
}

impl SolverConfig {
    pub fn new(n: usize, extent: f64, dt: f64, t_final: f64) -> Self {
        Self {
            n,
            extent,
            dt,
            t_final,
            mass: 0.0,
            nonlinear: true,
            dealias: true,
            sign: SignConvention::default(),
            stride: 1,
        }
    }

    pub fn grid(&self) -> Result<TorusGrid> {
        TorusGrid::new(self.n, self.extent)
    }

    /// Number of steps; `t_final` must be an integer multiple of `dt` that
    /// is also a multiple of `stride` steps.
    pub fn steps(&self) -> Result<usize> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "T must be nonnegative, got {}",
                self.t_final
            )));
        }
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "mass must be nonnegative, got {}",
                self.mass
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidConfig("stride must be at least 1".into()));
        }
        let q = self.t_final / self.dt;
        let steps = q.round();
        if (q - steps).abs() > 1e-9 * q.max(1.0) {
            return Err(Error::InvalidConfig(format!(
                "T = {} is not a multiple of dt = {}",
                self.t_final, self.dt
            )));
        }
        let steps = steps as usize;
        if !steps.is_multiple_of(self.stride) {
            return Err(Error::InvalidConfig(format!(
                "{steps} steps not divisible by stride {}",
                self.stride
            )));
        }
        Ok(steps)
    }
}

/// `(Π₊ψ₀, Π₋ψ₀)`.
pub fn split_initial_data(torus: &Torus, psi0: &SpinorField) -> Result<HalfWavePair> {
    let s = torus.spinor_spectral(psi0)?;
    Ok(HalfWavePair {
        plus: torus.half_wave_projection(&s, HalfWave::Plus)?,
        minus: torus.half_wave_projection(&s, HalfWave::Minus)?,
    })
}

/// `ψ_±(t) = e^{∓it|D|}ψ_±(0)`.
pub fn free_propagate(torus: &Torus, pair: &HalfWavePair, t: f64) -> Result<HalfWavePair> {
    let ops = ModeTables::new(torus.grid());
    let phase = ops.phases(t);
    let mut out = HalfWavePair {
        plus: torus.spinor_spectral(&pair.plus)?,
        minus: torus.spinor_spectral(&pair.minus)?,
    };
    ops.propagate(&mut out, &phase);
    Ok(out)
}

/// Right-hand sides `r_±` of `(−i∂_t ± |D|)ψ_± = r_±` without forcing:
/// `r_± = −mβψ_∓ − Π_±σN(ψ,ψ,ψ)`.
pub fn rhs(
    torus: &Torus,
    pair: &HalfWavePair,
    mass: f64,
    sign: SignConvention,
) -> Result<HalfWavePair> {
    let pair = HalfWavePair {
        plus: torus.spinor_spectral(&pair.plus)?,
        minus: torus.spinor_spectral(&pair.minus)?,
    };
    let ops = ModeTables::new(torus.grid());
    let model = Model {
        torus,
        mass,
        sign: Some(sign.value()),
        forcing: None,
        tables: &ops,
    };
    model.split_rhs(0.0, &pair)
}

/// `‖ψ(t_j)‖²_{L²}` for every frame.
pub fn charge(traj: &Trajectory) -> Vec<f64> {
    traj.frames()
        .iter()
        .map(|f| {
            let n = f.l2_norm();
            n * n
        })
        .collect()
}

/// Integrate from `ψ₀` without forcing.
pub fn integrate(torus: &Torus, config: &SolverConfig, psi0: &SpinorField) -> Result<Trajectory> {
    integrate_forced(torus, config, psi0, None)
}

/// Integrate with an optional forcing term.
pub fn integrate_forced(
    torus: &Torus,
    config: &SolverConfig,
    psi0: &SpinorField,
    forcing: Option<&dyn Forcing>,
) -> Result<Trajectory> {
    let grid = config.grid()?;
    torus.grid().ensure_same(&grid)?;
    psi0.grid().ensure_same(&grid)?;
    let steps = config.steps()?;
    let psi0 = if config.dealias {
        torus.dealias(psi0)?
    } else {
        psi0.clone()
    };

    let c = if config.nonlinear { 1.0 } else { 0.0 };
    let h12 = torus.sobolev_norm(&psi0, 0.5, false)?;
    let product = config.dt * (config.mass + c * h12 * h12);
    if product > STEP_GUARD {
        return Err(Error::StepTooLarge {
            product,
            limit: STEP_GUARD,
        });
    }

    let stepper = Stepper::new(
        torus,
        config.mass,
        config.nonlinear.then_some(config.sign.value()),
        forcing,
    );
    let mut state = split_initial_data(torus, &psi0)?;
    let mut frames = Vec::with_capacity(steps / config.stride + 1);
    frames.push(torus.spinor_physical(&state.sum())?);
    let h = config.dt;
    let plan = stepper.plan(h);
    for j in 0..steps {
        let t = j as f64 * h;
        state = stepper.step_with(&plan, t, &state)?;
        if !state.is_finite() {
            return Err(Error::BlowUp {
                step: j + 1,
                time: t + h,
            });
        }
        if (j + 1) % config.stride == 0 {
            frames.push(torus.spinor_physical(&state.sum())?);
        }
    }
    let traj = Trajectory::new(frames, h * config.stride as f64)?;
    Ok(traj.with_metadata(config.mass, config.sign, None))
}

/// Per-mode data reused across steps.
struct ModeTables {
    abs_xi: Vec<f64>,
    proj_plus: Vec<Mat2>,
    proj_minus: Vec<Mat2>,
}

impl ModeTables {
    fn new(grid: &TorusGrid) -> Self {
        let len = grid.len();
        let mut abs = Vec::with_capacity(len);
        let mut pp = Vec::with_capacity(len);
        let mut pm = Vec::with_capacity(len);
        for i in 0..len {
            let xi = grid.frequency(i);
            let r = abs_xi(xi);
            let unit = if i == 0 {
                [1.0, 0.0]
            } else {
                [xi[0] / r, xi[1] / r]
            };
            abs.push(if i == 0 { 0.0 } else { r });
            pp.push(projection_matrix(1.0, unit));
            pm.push(projection_matrix(-1.0, unit));
        }
        Self {
            abs_xi: abs,
            proj_plus: pp,
            proj_minus: pm,
        }
    }

    /// `e^{−it|ξ|}` per mode.
    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.abs_xi
            .iter()
            .map(|&r| {
                let th = -t * r;
                Complex64::new(th.cos(), th.sin())
            })
            .collect()
    }

    fn propagate(&self, pair: &mut HalfWavePair, phase: &[Complex64]) {
        for (i, p) in phase.iter().enumerate() {
            pair.plus.set(i, pair.plus.get(i) * *p);
            pair.minus.set(i, pair.minus.get(i) * p.conj());
        }
    }

    fn project(&self, pair: &mut HalfWavePair) {
        for i in 0..self.abs_xi.len() {
            pair.plus.set(i, self.proj_plus[i].apply(pair.plus.get(i)));
            pair.minus
                .set(i, self.proj_minus[i].apply(pair.minus.get(i)));
        }
    }
}

struct Model<'a> {
    torus: &'a Torus,
    mass: f64,
    /// `None` disables the cubic term.
    sign: Option<f64>,
    forcing: Option<&'a dyn Forcing>,
    tables: &'a ModeTables,
}

impl Model<'_> {
    fn is_free(&self) -> bool {
        self.mass == 0.0 && self.sign.is_none() && self.forcing.is_none()
    }

    /// `r_± = −mβψ_∓ − Π_±(σN + ρ)`.
    fn split_rhs(&self, t: f64, pair: &HalfWavePair) -> Result<HalfWavePair> {
        let grid = *self.torus.grid();
        let mut source: Option<SpinorField> = None;
        if let Some(sigma) = self.sign {
            let psi = self.torus.spinor_physical(&pair.sum())?;
            source = Some(nonlinearity_spectral(self.torus, &psi, &psi, &psi, sigma));
        }
        if let Some(f) = self.forcing {
            let rho = f.spectral_at(self.torus, t)?;
            grid.ensure_same(rho.grid())?;
            source = Some(match source {
                Some(s) => &s + &rho,
                None => rho,
            });
        }
        let beta = Mat2::beta();
        let mut out = HalfWavePair::zeros(grid);
        let m = Complex64::new(self.mass, 0.0);
        for i in 0..grid.len() {
            if grid.is_nyquist(i) {
                continue;
            }
            let f = source.as_ref().map_or(Spinor2::ZERO, |s| s.get(i));
            let p = beta.apply(pair.minus.get(i)) * m + self.tables.proj_plus[i].apply(f);
            let q = beta.apply(pair.plus.get(i)) * m + self.tables.proj_minus[i].apply(f);
            out.plus.set(i, -p);
            out.minus.set(i, -q);
        }
        Ok(out)
    }

    /// `∂_tψ_± = ∓i|D|ψ_± + K_±` with `K_± = i·r_±`; this returns `K`.
    fn k(&self, t: f64, pair: &HalfWavePair) -> Result<HalfWavePair> {
        let r = self.split_rhs(t, pair)?;
        let i = Complex64::new(0.0, 1.0);
        Ok(HalfWavePair {
            plus: r.plus.scale(i),
            minus: r.minus.scale(i),
        })
    }
}

/// Precomputed propagators for one step size.
pub struct StepPlan {
    h: f64,
    full: Vec<Complex64>,
    half: Vec<Complex64>,
}

/// Single-step driver; also usable directly for negative step sizes.
pub struct Stepper<'a> {
    torus: &'a Torus,
    tables: Box<ModeTables>,
    mass: f64,
    sign: Option<f64>,
    forcing: Option<&'a dyn Forcing>,
}

impl<'a> Stepper<'a> {
    /// `sign = None` disables the cubic term.
    pub fn new(
        torus: &'a Torus,
        mass: f64,
        sign: Option<f64>,
        forcing: Option<&'a dyn Forcing>,
    ) -> Self {
        Self {
            torus,
            tables: Box::new(ModeTables::new(torus.grid())),
            mass,
            sign,
            forcing,
        }
    }

    pub fn plan(&self, h: f64) -> StepPlan {
        StepPlan {
            h,
            full: self.tables.phases(h),
            half: self.tables.phases(0.5 * h),
        }
    }

    fn model(&self) -> Model<'_> {
        Model {
            torus: self.torus,
            mass: self.mass,
            sign: self.sign,
            forcing: self.forcing,
            tables: &self.tables,
        }
    }

    /// One step of size `h` (any sign) from time `t`.
    pub fn step(&self, t: f64, h: f64, state: &HalfWavePair) -> Result<HalfWavePair> {
        self.step_with(&self.plan(h), t, state)
    }

    pub fn step_with(&self, plan: &StepPlan, t: f64, psi: &HalfWavePair) -> Result<HalfWavePair> {
        let tb = &self.tables;
        let mut e_full = psi.clone();
        tb.propagate(&mut e_full, &plan.full);
        let model = self.model();
        if model.is_free() {
            return Ok(e_full);
        }
        let h = plan.h;
        let c = |x: f64| Complex64::new(x, 0.0);
        let axpy = |a: &HalfWavePair, s: f64, b: &HalfWavePair| HalfWavePair {
            plus: &a.plus + &b.plus.scale(c(s)),
            minus: &a.minus + &b.minus.scale(c(s)),
        };
        let half = |x: &HalfWavePair| {
            let mut y = x.clone();
            tb.propagate(&mut y, &plan.half);
            y
        };
        let full = |x: &HalfWavePair| {
            let mut y = x.clone();
            tb.propagate(&mut y, &plan.full);
            y
        };

        let k1 = model.k(t, psi)?;
        let a = half(&axpy(psi, 0.5 * h, &k1));
        let k2 = model.k(t + 0.5 * h, &a)?;
        let e_half = half(psi);
        let b = axpy(&e_half, 0.5 * h, &k2);
        let k3 = model.k(t + 0.5 * h, &b)?;
        let cst = axpy(&e_full, h, &half(&k3));
        let k4 = model.k(t + h, &cst)?;

        let mid = half(&axpy(&k2, 1.0, &k3));
        let mut acc = axpy(&full(&k1), 2.0, &mid);
        acc = axpy(&acc, 1.0, &k4);
        let mut out = axpy(&e_full, h / 6.0, &acc);
        tb.project(&mut out);
        Ok(out)
    }
}

/// Sum of spectral plane waves `Σ a_j e^{i(k_j·ξ-scaled x − ω_j t)}`, each with
/// a constant spinor amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct ManufacturedSolution {
    pub modes: Vec<([i64; 2], Spinor2, f64)>,
}

impl ManufacturedSolution {
    /// A `Π₊` eigenmode along `x₁` plus a mode along `x₂` with unrelated
    /// frequency, so the interaction-picture flow is not trivial.
    pub fn standard() -> Self {
        let r = core::f64::consts::FRAC_1_SQRT_2;
        Self {
            modes: alloc::vec![
                (
                    [1, 0],
                    Spinor2(Complex64::new(r, 0.0), Complex64::new(0.0, -r)),
                    1.0
                ),
                (
                    [0, 1],
                    Spinor2(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)),
                    7.0
                ),
            ],
        }
    }

    fn assemble(
        &self,
        grid: &TorusGrid,
        t: f64,
        f: impl Fn(Spinor2, f64, [f64; 2]) -> Spinor2,
    ) -> Result<SpinorField> {
        let mut out = SpinorField::zeros(*grid, Representation::Spectral);
        for (k, amp, omega) in &self.modes {
            let i = grid
                .flat_of(*k)
                .filter(|&i| grid.is_resolved(i))
                .ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "manufactured mode {k:?} outside the dealiased band"
                    ))
                })?;
            let th = -omega * t;
            let v = *amp * Complex64::new(th.cos(), th.sin());
            out.set(i, out.get(i) + f(v, *omega, grid.frequency(i)));
        }
        Ok(out)
    }

    /// `ψ*(t)`, spectral.
    pub fn value(&self, grid: &TorusGrid, t: f64) -> Result<SpinorField> {
        self.assemble(grid, t, |v, _, _| v)
    }

    /// Forcing that makes `ψ*` an exact solution for the given parameters.
    pub fn forcing(&self, mass: f64, sign: Option<SignConvention>) -> ManufacturedForcing {
        ManufacturedForcing {
            solution: self.clone(),
            mass,
            sign: sign.map(SignConvention::value),
        }
    }
}

/// `ρ = i∂_tψ* − (−iα·∇)ψ* − mβψ* − σN(ψ*)`, evaluated with the same
/// discrete operators as the solver.
#[derive(Debug, Clone)]
pub struct ManufacturedForcing {
    solution: ManufacturedSolution,
    mass: f64,
    sign: Option<f64>,
}

impl Forcing for ManufacturedForcing {
    fn spectral_at(&self, torus: &Torus, t: f64) -> Result<SpinorField> {
        let grid = torus.grid();
        let beta = Mat2::beta();
        let m = self.mass;
        let mut rho = self.solution.assemble(grid, t, |v, omega, xi| {
            let dirac = crate::dirac::xi_dot_alpha(xi).apply(v);
            v * Complex64::new(omega, 0.0) - dirac - beta.apply(v) * Complex64::new(m, 0.0)
        })?;
        if let Some(sigma) = self.sign {
            let psi = torus.spinor_physical(&self.solution.value(grid, t)?)?;
            let n = nonlinearity_spectral(torus, &psi, &psi, &psi, sigma);
            rho = &rho - &n;
        }
        Ok(rho)
    }
}
