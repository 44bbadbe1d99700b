//! Run configuration: a TOML file, `key=value` overrides, and a provenance
//! block. The hash covers the subcommand and the resolved parameters, not
//! the provenance, so identical inputs hash identically across runs.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use csd_core::integrator::SolverConfig;
use csd_core::model::SignConvention;
use csd_core::spacetime::Window;
use csd_core::TorusGrid;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, SimError};
use crate::initial::DataSpec;

/// Worker count for ensemble and refinement drivers.
pub const WORKERS_ENV: &str = "CSD_WORKERS";
/// Parent directory for run outputs when no explicit path is given.
pub const OUTPUT_ROOT_ENV: &str = "CSD_OUTPUT_ROOT";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    #[serde(rename = "L")]
    pub extent: f64,
    pub dt: f64,
    #[serde(rename = "T")]
    pub t_final: f64,
    #[serde(rename = "m")]
    pub mass: f64,
    pub nonlinear: bool,
    pub dealias: bool,
    pub sign_convention: i32,
    pub stride: usize,
    pub data: String,
    pub seed: u64,
    /// Regularity exponent for norms and diagnostics.
    pub s: f64,
    /// Modulation exponent for space-time norms.
    pub b: f64,
    /// Low-frequency exponent of the potential diagnostic.
    pub eps: f64,
    /// `none` or `taper`.
    pub window: String,
    /// Step sizes of refinement studies.
    pub dts: Vec<f64>,
    /// Ensemble size.
    pub members: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 64,
            extent: 2.0 * PI,
            dt: 1e-3,
            t_final: 1.0,
            mass: 0.0,
            nonlinear: true,
            dealias: true,
            sign_convention: 1,
            stride: 1,
            data: "random-hs(1, 0.05)".into(),
            seed: 0,
            s: 0.5,
            b: 0.5,
            eps: 0.1,
            window: "none".into(),
            dts: vec![4e-3, 2e-3, 1e-3],
            members: 8,
        }
    }
}

/// Parse `value` as a TOML scalar or array, falling back to a bare string.
fn override_value(value: &str) -> toml::Value {
    match format!("v = {value}").parse::<toml::Table>() {
        Ok(mut t) => t
            .remove("v")
            .unwrap_or_else(|| toml::Value::String(value.into())),
        Err(_) => toml::Value::String(value.into()),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))
    }

    /// File contents (if any) with `key=value` overrides applied on top.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut table = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| SimError::io(p, e))?;
                text.parse::<toml::Table>()
                    .map_err(|e| SimError::Config(format!("{}: {e}", p.display())))?
            }
            None => toml::Table::new(),
        };
        for o in overrides {
            let (k, v) = o.split_once('=').ok_or_else(|| {
                SimError::Config(format!("override must be key=value, got {o:?}"))
            })?;
            table.insert(k.trim().to_owned(), override_value(v.trim()));
        }
        let cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| SimError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid().map_err(|e| SimError::Config(e.to_string()))?;
        self.sign()?;
        self.data_spec()?;
        self.window()?;
        self.solver().map_err(|e| SimError::Config(e.to_string()))?;
        if self.dts.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(SimError::Config("dts must be positive".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<TorusGrid> {
        Ok(TorusGrid::new(self.n, self.extent)?)
    }

    pub fn sign(&self) -> Result<SignConvention> {
        SignConvention::from_value(self.sign_convention).ok_or_else(|| {
            SimError::Config(format!(
                "sign_convention must be 1 or -1, got {}",
                self.sign_convention
            ))
        })
    }

    pub fn data_spec(&self) -> Result<DataSpec> {
        self.data.parse()
    }

    pub fn window(&self) -> Result<Window> {
        match self.window.as_str() {
            "none" => Ok(Window::None),
            "taper" => Ok(Window::Taper),
            w => Err(SimError::Config(format!(
                "window must be none or taper, got {w:?}"
            ))),
        }
    }

    pub fn solver(&self) -> Result<SolverConfig> {
        let mut c = SolverConfig::new(self.n, self.extent, self.dt, self.t_final);
        c.mass = self.mass;
        c.nonlinear = self.nonlinear;
        c.dealias = self.dealias;
        c.sign = self.sign()?;
        c.stride = self.stride;
        c.steps()?;
        Ok(c)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Provenance {
    pub fn now() -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp,
        }
    }
}

/// What every run writes next to its outputs as `config.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub subcommand: String,
    pub config_hash: String,
    pub config: RunConfig,
    pub provenance: Provenance,
}

impl ResolvedConfig {
    pub fn new(subcommand: &str, config: RunConfig) -> Self {
        Self {
            subcommand: subcommand.into(),
            config_hash: config_hash(subcommand, &config),
            config,
            provenance: Provenance::now(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// SHA-256 over the canonical JSON of `(subcommand, config)`, hex encoded.
pub fn config_hash(subcommand: &str, config: &RunConfig) -> String {
    let bytes = serde_json::to_vec(&(subcommand, config)).expect("run config serializes");
    hex::encode(Sha256::digest(&bytes))
}

/// `$CSD_OUTPUT_ROOT` or `./runs`.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("runs"))
}

/// Default per-run directory, `<root>/<subcommand>-<hash prefix>`.
pub fn default_output_dir(resolved: &ResolvedConfig) -> PathBuf {
    output_root().join(format!(
        "{}-{}",
        resolved.subcommand,
        &resolved.config_hash[..12]
    ))
}

/// `$CSD_WORKERS`, if set to a positive integer.
pub fn workers() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&w| w > 0)
            .map(Some)
            .ok_or_else(|| {
                SimError::Config(format!(
                    "{WORKERS_ENV} must be a positive integer, got {v:?}"
                ))
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_take_precedence_and_keep_types() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "n = 32\ndt = 0.01\ndata = \"zero\"\n").unwrap();
        let c = RunConfig::load(
            Some(&p),
            &[
                "dt=0.02".into(),
                "dts=[0.1, 0.05]".into(),
                "window=taper".into(),
            ],
        )
        .unwrap();
        assert_eq!(c.n, 32);
        assert_eq!(c.dt, 0.02);
        assert_eq!(c.dts, [0.1, 0.05]);
        assert_eq!(c.window, "taper");
        assert_eq!(c.data, "zero");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::load(None, &["colour=blue".into()]).is_err());
        assert!(RunConfig::load(None, &["n=7".into()]).is_err());
        assert!(RunConfig::load(None, &["sign_convention=2".into()]).is_err());
        assert!(RunConfig::load(None, &["data=\"wiggle(1)\"".into()]).is_err());
        assert!(RunConfig::load(None, &["novalue".into()]).is_err());
    }

    #[test]
    fn toml_round_trip_and_stable_hash() {
        let c = RunConfig {
            seed: 9,
            ..RunConfig::default()
        };
        assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
        assert_eq!(
            config_hash("simulate", &c),
            config_hash("simulate", &c.clone())
        );
        assert_ne!(config_hash("simulate", &c), config_hash("ensemble", &c));
        assert_ne!(
            config_hash("simulate", &c),
            config_hash("simulate", &RunConfig::default())
        );
    }
}
