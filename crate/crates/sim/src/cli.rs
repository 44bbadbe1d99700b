//! The `csd` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use csd_core::admissibility::{
    corpus, corpus_families, evaluate_conditions, parse_tuple_file, threshold_sweep, Bound,
    ExponentTuple, Threshold, CONDITIONS,
};
use csd_core::integrator::{charge, integrate};
use csd_core::model::{chern_simons_residual, potential_regularity_report, trilinear_l2_ratio};
use csd_core::spacetime::{embedding_check, spacetime_transform};
use csd_core::HalfWave;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{default_output_dir, ResolvedConfig, RunConfig};
use crate::error::{Result, SimError};
use crate::experiments::{ensemble, in_pool, manufactured_convergence, relative_charge_drift};
use crate::fft::fast_torus;
use crate::format::{read_trajectory, write_trajectory};
use crate::initial::make_initial_data;
use crate::report::{write_csv, write_json};

/// Tuple file shipped with the crate: every corpus entry, one per line.
pub const SHIPPED_CORPUS: &str = include_str!("../data/corpus.tuples");

/// Exit status of `check-exponents` when some tuple is inadmissible.
pub const EXIT_INADMISSIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "csd",
    version,
    about = "Chern-Simons-Dirac torus simulator and exponent checker"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// TOML configuration file.
    #[arg(short, long)]
    pub config: Option<PathBuf>,
    /// Override one configuration key, e.g. `--set dt=0.002`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Output directory (default: `$CSD_OUTPUT_ROOT/<subcommand>-<hash>`).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate from generated initial data and store the trajectory.
    Simulate(RunArgs),
    /// Charge, gauge residuals and potential norms of a stored trajectory.
    Diagnose {
        trajectory: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Space-time norms of a stored trajectory.
    Norms {
        trajectory: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Evaluate the admissibility conditions on a tuple file.
    CheckExponents {
        /// Tuple file; the shipped corpus when omitted.
        file: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exact admissibility thresholds of the built-in tuple families.
    SweepThreshold {
        /// Restrict to one family.
        #[arg(long)]
        family: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Manufactured-solution refinement study.
    Convergence(RunArgs),
    /// Seeded ensemble of rough-data runs.
    Ensemble(RunArgs),
}

/// What a successful invocation reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub summary: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(summary: Value) -> Self {
        Self {
            summary,
            exit_code: 0,
        }
    }
}

/// Parse `args` and run. Parse failures come back as clap errors.
pub fn run_from<I, T>(args: I) -> std::result::Result<Result<Outcome>, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(run(cli.command))
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Simulate(a) => simulate(&a),
        Command::Diagnose { trajectory, run } => diagnose(&trajectory, &run),
        Command::Norms { trajectory, run } => norms(&trajectory, &run),
        Command::CheckExponents { file, out } => check_exponents(file.as_deref(), out.as_deref()),
        Command::SweepThreshold { family, out } => sweep(family.as_deref(), out.as_deref()),
        Command::Convergence(a) => convergence(&a),
        Command::Ensemble(a) => run_ensemble(&a),
    }
}

fn resolve(sub: &str, a: &RunArgs) -> Result<(ResolvedConfig, PathBuf)> {
    let cfg = RunConfig::load(a.config.as_deref(), &a.overrides)?;
    let resolved = ResolvedConfig::new(sub, cfg);
    let out = a
        .out
        .clone()
        .unwrap_or_else(|| default_output_dir(&resolved));
    write_json(&out.join("config.json"), &resolved)?;
    Ok((resolved, out))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeRow {
    pub frame: usize,
    pub t: f64,
    pub charge: f64,
}

fn simulate(a: &RunArgs) -> Result<Outcome> {
    let (r, out) = resolve("simulate", a)?;
    let cfg = &r.config;
    let torus = fast_torus(cfg.grid()?);
    let psi0 = make_initial_data(&cfg.data_spec()?, &torus, cfg.seed)?;
    let traj = integrate(&torus, &cfg.solver()?, &psi0)?.with_metadata(
        cfg.mass,
        cfg.sign()?,
        Some(cfg.seed),
    );
    let traj_path = out.join("trajectory.csdtraj");
    write_trajectory(&traj_path, &traj, Some(r.config_hash.clone()))?;
    let rows: Vec<ChargeRow> = charge(&traj)
        .into_iter()
        .enumerate()
        .map(|(j, q)| ChargeRow {
            frame: j,
            t: j as f64 * traj.dt(),
            charge: q,
        })
        .collect();
    write_csv(&out.join("charge.csv"), &r.config_hash, &rows)?;
    let summary = json!({
        "subcommand": "simulate",
        "config_hash": r.config_hash,
        "frames": traj.len(),
        "dt": traj.dt(),
        "charge_initial": rows[0].charge,
        "charge_drift": relative_charge_drift(&traj),
        "trajectory": traj_path,
        "output": out,
    });
    write_json(&out.join("summary.json"), &summary)?;
    Ok(Outcome::ok(summary))
}

/// Diagnostics go next to the input unless `--out` is given.
fn input_side_output(path: &Path, a: &RunArgs) -> PathBuf {
    a.out
        .clone()
        .unwrap_or_else(|| path.parent().map(Path::to_path_buf).unwrap_or_default())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRow {
    pub frame: usize,
    pub t: f64,
    pub charge: f64,
    pub residual_density: Option<f64>,
    pub residual_transport_1: Option<f64>,
    pub residual_transport_2: Option<f64>,
    pub potential_h2s: f64,
    pub potential_heps: f64,
    pub potential_ratio: f64,
    pub trilinear_ratio: Option<f64>,
}

fn diagnose(path: &Path, a: &RunArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(a.config.as_deref(), &a.overrides)?;
    let (header, traj) = read_trajectory(path)?;
    let torus = fast_torus(*traj.grid());
    let residuals = if traj.len() >= 5 {
        Some(chern_simons_residual(&torus, &traj)?)
    } else {
        None
    };
    let q = charge(&traj);
    let mut rows = Vec::with_capacity(traj.len());
    for (j, frame) in traj.frames().iter().enumerate() {
        let reg = potential_regularity_report(&torus, frame, cfg.s, cfg.eps)?;
        let r = residuals.as_ref().map(|r| r.per_frame[j]);
        rows.push(DiagnosticRow {
            frame: j,
            t: j as f64 * traj.dt(),
            charge: q[j],
            residual_density: r.map(|r| r[0]),
            residual_transport_1: r.map(|r| r[1]),
            residual_transport_2: r.map(|r| r[2]),
            potential_h2s: reg.a_2s,
            potential_heps: reg.a_eps,
            potential_ratio: reg.ratio(),
            trilinear_ratio: trilinear_l2_ratio(&torus, frame, traj.sign).ok(),
        });
    }
    let hash = header.config_hash.clone().unwrap_or_default();
    let out = input_side_output(path, a);
    write_csv(&out.join("diagnostics.csv"), &hash, &rows)?;
    let summary = json!({
        "subcommand": "diagnose",
        "config_hash": hash,
        "frames": traj.len(),
        "charge_drift": relative_charge_drift(&traj),
        "residual_max": residuals.map(|r| r.max()),
        "potential_ratio_max": rows.iter().map(|r| r.potential_ratio).fold(0.0, f64::max),
        "s": cfg.s,
        "eps": cfg.eps,
    });
    write_json(&out.join("diagnostics.json"), &summary)?;
    Ok(Outcome::ok(summary))
}

fn norms(path: &Path, a: &RunArgs) -> Result<Outcome> {
    let cfg = RunConfig::load(a.config.as_deref(), &a.overrides)?;
    let (header, traj) = read_trajectory(path)?;
    let torus = fast_torus(*traj.grid());
    let spec = spacetime_transform(&torus, &traj, cfg.window()?)?;
    let (s, b) = (cfg.s, cfg.b);
    let embedding = if b >= 0.0 && cfg.window == "none" {
        let e = embedding_check(&torus, &traj, s, b)?;
        Some(json!({ "slack": e.slack, "holds": true }))
    } else {
        None
    };
    let summary = json!({
        "subcommand": "norms",
        "config_hash": header.config_hash,
        "s": s,
        "b": b,
        "window": cfg.window,
        "l2": spec.l2_norm(),
        "xsb_plus": spec.xsb_norm(s, b, HalfWave::Plus),
        "xsb_minus": spec.xsb_norm(s, b, HalfWave::Minus),
        "hsb": spec.hsb_norm(s, b),
        "embedding": embedding,
    });
    write_json(&input_side_output(path, a).join("norms.json"), &summary)?;
    Ok(Outcome::ok(summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub line: usize,
    pub tuple: String,
    pub id: usize,
    pub condition: String,
    pub left: String,
    pub right: String,
    pub strict: bool,
    pub pass: bool,
}

/// The built-in corpus rendered in the tuple file format.
pub fn render_corpus() -> String {
    let mut s = String::from("# s0 s1 s2 b0 b1 b2\n");
    for e in corpus() {
        s.push_str(&format!("{}  # {}\n", e.tuple, e.name));
    }
    s
}

fn check_exponents(file: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let text = match file {
        Some(p) => std::fs::read_to_string(p).map_err(|e| SimError::io(p, e))?,
        None => SHIPPED_CORPUS.to_owned(),
    };
    let tuples: Vec<(usize, ExponentTuple)> = parse_tuple_file(&text)?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut inadmissible = 0;
    for (line, t) in &tuples {
        let rep = evaluate_conditions(t);
        if !rep.admissible() {
            inadmissible += 1;
        }
        let violated: Vec<&str> = rep.violated().map(|o| o.label).collect();
        records.push(json!({
            "line": line,
            "tuple": t.to_string(),
            "admissible": rep.admissible(),
            "violated": violated,
        }));
        for o in &rep.outcomes {
            rows.push(ConditionRow {
                line: *line,
                tuple: t.to_string(),
                id: o.id,
                condition: o.label.into(),
                left: o.left.to_string(),
                right: o.right.to_string(),
                strict: o.strict,
                pass: o.pass,
            });
        }
    }
    let summary = json!({
        "subcommand": "check-exponents",
        "source": file.map(|p| p.display().to_string()).unwrap_or_else(|| "shipped corpus".into()),
        "tuples": tuples.len(),
        "inadmissible": inadmissible,
        "records": records,
    });
    if let Some(out) = out {
        write_csv(&out.join("conditions.csv"), "", &rows)?;
        write_json(&out.join("conditions.json"), &summary)?;
    }
    Ok(Outcome {
        summary,
        exit_code: if inadmissible == 0 {
            0
        } else {
            EXIT_INADMISSIBLE
        },
    })
}

fn bound_json(b: Option<Bound>) -> Value {
    b.map_or(
        Value::Null,
        |b| json!({ "value": b.value.to_string(), "closed": b.closed }),
    )
}

fn sweep(family: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let families: Vec<_> = corpus_families()
        .into_iter()
        .filter(|f| family.is_none_or(|n| f.name == n))
        .collect();
    if families.is_empty() {
        let known: Vec<&str> = corpus_families().iter().map(|f| f.name).collect();
        return Err(SimError::Config(format!(
            "unknown family {:?}; known: {}",
            family.unwrap_or(""),
            known.join(", ")
        )));
    }
    let mut records = Vec::new();
    for f in families {
        let rep = threshold_sweep(&f.family);
        let threshold = match rep.threshold() {
            Threshold::Empty => json!("empty"),
            Threshold::UnboundedBelow => json!("unbounded-below"),
            Threshold::Finite(t) => json!(t.to_string()),
        };
        let binding: Vec<Value> = rep
            .binding()
            .into_iter()
            .map(|id| json!({ "id": id, "condition": CONDITIONS[id - 1].label }))
            .collect();
        records.push(json!({
            "family": f.name,
            "threshold": threshold,
            "lower": bound_json(rep.lower),
            "upper": bound_json(rep.upper),
            "binding": binding,
        }));
    }
    let summary = json!({ "subcommand": "sweep-threshold", "families": records });
    if let Some(out) = out {
        write_json(&out.join("thresholds.json"), &summary)?;
    }
    Ok(Outcome::ok(summary))
}

/// Accepted band for the fitted manufactured-solution order.
pub const ORDER_BAND: (f64, f64) = (3.7, 4.3);

fn convergence(a: &RunArgs) -> Result<Outcome> {
    let (r, out) = resolve("convergence", a)?;
    let cfg = &r.config;
    let torus = fast_torus(cfg.grid()?);
    let study = in_pool(|| {
        manufactured_convergence(&torus, &cfg.dts, cfg.t_final, cfg.mass, cfg.sign()?)
    })??;
    write_csv(&out.join("convergence.csv"), &r.config_hash, &study.rows)?;
    let in_band = study
        .order
        .is_some_and(|p| (ORDER_BAND.0..=ORDER_BAND.1).contains(&p));
    let summary = json!({
        "subcommand": "convergence",
        "config_hash": r.config_hash,
        "rows": study.rows,
        "order": study.order,
        "order_band": [ORDER_BAND.0, ORDER_BAND.1],
        "in_band": in_band,
    });
    write_json(&out.join("summary.json"), &summary)?;
    Ok(Outcome::ok(summary))
}

fn run_ensemble(a: &RunArgs) -> Result<Outcome> {
    let (r, out) = resolve("ensemble", a)?;
    let cfg = &r.config;
    let torus = fast_torus(cfg.grid()?);
    let rows = in_pool(|| ensemble(&torus, cfg))??;
    write_csv(&out.join("ensemble.csv"), &r.config_hash, &rows)?;
    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    let summary = json!({
        "subcommand": "ensemble",
        "config_hash": r.config_hash,
        "members": rows.len(),
        "ok": count("ok"),
        "blow_up": count("blow-up"),
        "step_too_large": count("step-too-large"),
        "max_charge_drift": rows.iter().filter_map(|r| r.charge_drift).fold(0.0, f64::max),
    });
    write_json(&out.join("summary.json"), &summary)?;
    Ok(Outcome::ok(summary))
}
