//! Binary trajectory files.
//!
//! ```text
//! CSDTRAJ1\n
//! n=<n> L=<L> dt=<dt> frames=<M> m=<m> sign_convention=<±1> endianness=le [config_hash=<hex>] [seed=<u64>]\n
//! <payload>
//! ```
//!
//! The payload holds the frames in order; each frame is the upper then the
//! lower spinor component in row-major order, every value a little-endian
//! `f64` pair `(re, im)`. Payload length is `M·2·n²·16` bytes.

use std::fs;
use std::path::Path;

use csd_core::integrator::Trajectory;
use csd_core::model::SignConvention;
use csd_core::{Complex64, Representation, SpinorField, TorusGrid};

use crate::atomic;
use crate::error::{Result, SimError};

pub const MAGIC: &str = "CSDTRAJ1";

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryHeader {
    pub n: usize,
    pub extent: f64,
    pub dt: f64,
    pub frames: usize,
    pub mass: f64,
    pub sign: SignConvention,
    pub config_hash: Option<String>,
    pub seed: Option<u64>,
}

impl TrajectoryHeader {
    pub fn of(traj: &Trajectory, config_hash: Option<String>) -> Self {
        Self {
            n: traj.grid().n(),
            extent: traj.grid().extent(),
            dt: traj.dt(),
            frames: traj.len(),
            mass: traj.mass,
            sign: traj.sign,
            config_hash,
            seed: traj.seed,
        }
    }

    pub fn payload_len(&self) -> usize {
        self.frames * 2 * self.n * self.n * 16
    }

    pub fn line(&self) -> String {
        let sign = match self.sign {
            SignConvention::Positive => "+1",
            SignConvention::Negative => "-1",
        };
        // `{}` on f64 prints the shortest string that parses back exactly
        let mut s = format!(
            "n={} L={} dt={} frames={} m={} sign_convention={} endianness=le",
            self.n, self.extent, self.dt, self.frames, self.mass, sign
        );
        if let Some(h) = &self.config_hash {
            s.push_str(&format!(" config_hash={h}"));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        s
    }

    pub fn parse(line: &str) -> Result<Self> {
        let bad = |m: String| SimError::Format(m);
        let mut fields = std::collections::BTreeMap::new();
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| bad(format!("header token without '=': {tok:?}")))?;
            if fields.insert(k, v).is_some() {
                return Err(bad(format!("duplicate header key {k:?}")));
            }
        }
        let mut take = |k: &str| {
            fields
                .remove(k)
                .ok_or_else(|| bad(format!("missing header key {k:?}")))
        };
        fn num<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| SimError::Format(format!("bad value for {k}: {v:?}")))
        }
        let n = num("n", take("n")?)?;
        let extent = num("L", take("L")?)?;
        let dt = num("dt", take("dt")?)?;
        let frames = num("frames", take("frames")?)?;
        let mass = num("m", take("m")?)?;
        let sign_text = take("sign_convention")?;
        let sign =
            SignConvention::from_value(num("sign_convention", sign_text.trim_start_matches('+'))?)
                .ok_or_else(|| bad(format!("sign_convention must be +1 or -1, got {sign_text}")))?;
        let endian = take("endianness")?;
        if endian != "le" {
            return Err(bad(format!("unsupported endianness {endian:?}")));
        }
        let config_hash = fields.remove("config_hash").map(str::to_owned);
        let seed = fields.remove("seed").map(|v| num("seed", v)).transpose()?;
        if let Some(k) = fields.keys().next() {
            return Err(bad(format!("unknown header key {k:?}")));
        }
        Ok(Self {
            n,
            extent,
            dt,
            frames,
            mass,
            sign,
            config_hash,
            seed,
        })
    }
}

/// Serialize to bytes. Frames must be in physical representation.
pub fn encode(traj: &Trajectory, config_hash: Option<String>) -> Result<Vec<u8>> {
    let header = TrajectoryHeader::of(traj, config_hash);
    let mut out = Vec::with_capacity(header.payload_len() + 256);
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    out.extend_from_slice(header.line().as_bytes());
    out.push(b'\n');
    for (j, frame) in traj.frames().iter().enumerate() {
        if frame.repr() != Representation::Physical {
            return Err(SimError::Format(format!(
                "frame {j} is not in physical representation"
            )));
        }
        for c in 0..2 {
            for z in frame.component(c) {
                out.extend_from_slice(&z.re.to_le_bytes());
                out.extend_from_slice(&z.im.to_le_bytes());
            }
        }
    }
    Ok(out)
}

fn split_line(bytes: &[u8]) -> Result<(&str, &[u8])> {
    let end = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| SimError::Format("missing line break".into()))?;
    let line = std::str::from_utf8(&bytes[..end])
        .map_err(|_| SimError::Format("header is not UTF-8".into()))?;
    Ok((line, &bytes[end + 1..]))
}

pub fn decode(bytes: &[u8]) -> Result<(TrajectoryHeader, Trajectory)> {
    let (magic, rest) = split_line(bytes)?;
    if magic != MAGIC {
        return Err(SimError::Format(format!("bad magic {magic:?}")));
    }
    let (line, payload) = split_line(rest)?;
    let header = TrajectoryHeader::parse(line)?;
    if payload.len() != header.payload_len() {
        return Err(SimError::Format(format!(
            "payload is {} bytes, header implies {}",
            payload.len(),
            header.payload_len()
        )));
    }
    let grid = TorusGrid::new(header.n, header.extent)?;
    let len = grid.len();
    let mut values = payload.chunks_exact(16).map(|c| {
        let re = f64::from_le_bytes(c[..8].try_into().unwrap());
        let im = f64::from_le_bytes(c[8..].try_into().unwrap());
        Complex64::new(re, im)
    });
    let mut frames = Vec::with_capacity(header.frames);
    for _ in 0..header.frames {
        let upper: Vec<Complex64> = values.by_ref().take(len).collect();
        let lower: Vec<Complex64> = values.by_ref().take(len).collect();
        frames.push(SpinorField::from_components(
            grid,
            Representation::Physical,
            upper,
            lower,
        )?);
    }
    let traj =
        Trajectory::new(frames, header.dt)?.with_metadata(header.mass, header.sign, header.seed);
    Ok((header, traj))
}

pub fn write_trajectory(path: &Path, traj: &Trajectory, config_hash: Option<String>) -> Result<()> {
    let bytes = encode(traj, config_hash)?;
    atomic::write_with(path, |w| {
        w.write_all(&bytes).map_err(|e| SimError::io(path, e))
    })
}

pub fn read_trajectory(path: &Path) -> Result<(TrajectoryHeader, Trajectory)> {
    let bytes = fs::read(path).map_err(|e| SimError::io(path, e))?;
    decode(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory {
        let grid = TorusGrid::new(4, 3.5).unwrap();
        let frames = (0..3)
            .map(|j| {
                let up = (0..16)
                    .map(|i| Complex64::new(i as f64 + 0.1 * j as f64, -(i as f64) / 3.0))
                    .collect();
                let lo = (0..16)
                    .map(|i| Complex64::new(1.0 / (i + 1) as f64, j as f64))
                    .collect();
                SpinorField::from_components(grid, Representation::Physical, up, lo).unwrap()
            })
            .collect();
        Trajectory::new(frames, 0.1)
            .unwrap()
            .with_metadata(0.5, SignConvention::Negative, Some(42))
    }

    #[test]
    fn layout() {
        let bytes = encode(&sample(), Some("abc".into())).unwrap();
        let text = "CSDTRAJ1\nn=4 L=3.5 dt=0.1 frames=3 m=0.5 sign_convention=-1 endianness=le config_hash=abc seed=42\n";
        assert!(bytes.starts_with(text.as_bytes()));
        assert_eq!(bytes.len(), text.len() + 3 * 2 * 16 * 16);
        // first payload value is frame 0, upper component, point 0
        let p = &bytes[text.len()..];
        assert_eq!(f64::from_le_bytes(p[..8].try_into().unwrap()), 0.0);
        // upper component of frame 0 ends after 16 values; lower starts at 1/1
        assert_eq!(f64::from_le_bytes(p[256..264].try_into().unwrap()), 1.0);
    }

    #[test]
    fn decode_restores_everything() {
        let t = sample();
        let (h, back) = decode(&encode(&t, None).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(h.config_hash, None);
        assert_eq!(h.seed, Some(42));
    }

    #[test]
    fn truncated_payload_is_rejected() {
        let mut bytes = encode(&sample(), None).unwrap();
        bytes.pop();
        assert!(matches!(decode(&bytes), Err(SimError::Format(_))));
    }

    #[test]
    fn header_rejects_unknown_and_missing_keys() {
        let good = "n=4 L=1 dt=0.1 frames=2 m=0 sign_convention=+1 endianness=le";
        assert!(TrajectoryHeader::parse(good).is_ok());
        assert!(TrajectoryHeader::parse(&format!("{good} color=red")).is_err());
        assert!(TrajectoryHeader::parse("n=4 L=1 dt=0.1 frames=2 m=0 endianness=le").is_err());
        assert!(TrajectoryHeader::parse(&good.replace("le", "be")).is_err());
    }
}
