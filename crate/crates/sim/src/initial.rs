//! Initial data generators.
//!
//! Spec strings:
//! - `zero`
//! - `constant(c1, c2)` with complex entries such as `1`, `0.5-0.2i`
//! - `planewave(k1, k2, component)`, unit amplitude in one component
//! - `eigenmode(k1, k2, ±)`, the unit `Π±(ξ)` eigenvector at wavevector `k`
//! - `random-hs(s, amplitude)`, complex Gaussian coefficients scaled by
//!   `amplitude·⟨ξ⟩^{−s−1−δ}` on the dealiased band, `δ = 0.01`
//!
//! Brackets around wavevectors are optional: `eigenmode((1,0),+)` works.

use std::fmt;
use std::str::FromStr;

use csd_core::dirac::Mat2;
use csd_core::multiplier::{japanese, projection_matrix};
use csd_core::{Complex64, HalfWave, Representation, Spinor2, SpinorField, Torus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Result, SimError};

/// Extra decay beyond `⟨ξ⟩^{−s−1}` in the rough-data law.
pub const ROUGH_DELTA: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum DataSpec {
    Zero,
    Constant(Complex64, Complex64),
    PlaneWave { k: [i64; 2], component: usize },
    Eigenmode { k: [i64; 2], sign: HalfWave },
    RandomHs { s: f64, amplitude: f64 },
}

impl FromStr for DataSpec {
    type Err = SimError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || SimError::DataSpec(text.to_owned());
        let t = text.trim();
        if t == "zero" {
            return Ok(DataSpec::Zero);
        }
        let (name, rest) = t.split_once('(').ok_or_else(bad)?;
        let inner = rest.trim_end().strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner
            .split(',')
            .map(|a| {
                a.trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .trim()
            })
            .collect();
        let int = |s: &str| s.parse::<i64>().map_err(|_| bad());
        let real = |s: &str| s.parse::<f64>().map_err(|_| bad());
        let complex = |s: &str| Complex64::from_str(s).map_err(|_| bad());
        match (name.trim(), args.as_slice()) {
            ("constant", [a, b]) => Ok(DataSpec::Constant(complex(a)?, complex(b)?)),
            ("planewave", [k1, k2, c]) => {
                let component = c.parse::<usize>().ok().filter(|&c| c < 2).ok_or_else(bad)?;
                Ok(DataSpec::PlaneWave {
                    k: [int(k1)?, int(k2)?],
                    component,
                })
            }
            ("eigenmode", [k1, k2, s]) => {
                let sign = match *s {
                    "+" | "+1" => HalfWave::Plus,
                    "-" | "-1" | "−" => HalfWave::Minus,
                    _ => return Err(bad()),
                };
                Ok(DataSpec::Eigenmode {
                    k: [int(k1)?, int(k2)?],
                    sign,
                })
            }
            ("random-hs", [s, a]) => {
                let (s, amplitude) = (real(s)?, real(a)?);
                if !(s.is_finite() && amplitude.is_finite() && amplitude >= 0.0) {
                    return Err(bad());
                }
                Ok(DataSpec::RandomHs { s, amplitude })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSpec::Zero => f.write_str("zero"),
            DataSpec::Constant(a, b) => write!(f, "constant({a}, {b})"),
            DataSpec::PlaneWave { k, component } => {
                write!(f, "planewave({}, {}, {component})", k[0], k[1])
            }
            DataSpec::Eigenmode { k, sign } => {
                write!(
                    f,
                    "eigenmode({}, {}, {})",
                    k[0],
                    k[1],
                    if *sign == HalfWave::Plus { '+' } else { '-' }
                )
            }
            DataSpec::RandomHs { s, amplitude } => write!(f, "random-hs({s}, {amplitude})"),
        }
    }
}

/// Unit vector spanning the range of `Π±(ξ)`; at `ξ = 0` the `α¹` eigenvector.
pub fn eigenvector(xi: [f64; 2], sign: HalfWave) -> Spinor2 {
    let r = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    let unit = if r == 0.0 {
        [1.0, 0.0]
    } else {
        [xi[0] / r, xi[1] / r]
    };
    let p: Mat2 = projection_matrix(sign.sign(), unit);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // the first column of a rank-one projection never vanishes here
    let v = p.apply(Spinor2(one, zero));
    v * Complex64::new(1.0 / v.norm_sqr().sqrt(), 0.0)
}

/// Per-mode generator so that a mode draws the same coefficients on every
/// grid that resolves it.
fn mode_rng(seed: u64, k: [i64; 2]) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&k[0].to_le_bytes());
    bytes[16..24].copy_from_slice(&k[1].to_le_bytes());
    bytes[24..].copy_from_slice(b"rough-hs");
    ChaCha8Rng::from_seed(bytes)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Physical-space field for `spec` on `torus`; `seed` only affects random data.
pub fn make_initial_data(spec: &DataSpec, torus: &Torus, seed: u64) -> Result<SpinorField> {
    let grid = *torus.grid();
    let mode = |k: [i64; 2]| {
        grid.flat_of(k)
            .filter(|&i| !grid.is_nyquist(i))
            .ok_or_else(|| {
                SimError::DataSpec(format!(
                    "wavevector {k:?} is not representable on an n = {} grid",
                    grid.n()
                ))
            })
    };
    let spectral = match spec {
        DataSpec::Zero => return Ok(SpinorField::zeros(grid, Representation::Physical)),
        DataSpec::Constant(a, b) => return Ok(torus.spinor_from_fn(|_| Spinor2(*a, *b))),
        DataSpec::PlaneWave { k, component } => {
            mode(*k)?;
            let one = Complex64::new(1.0, 0.0);
            let zero = Complex64::new(0.0, 0.0);
            let v = if *component == 0 {
                Spinor2(one, zero)
            } else {
                Spinor2(zero, one)
            };
            SpinorField::single_mode(grid, *k, v)?
        }
        DataSpec::Eigenmode { k, sign } => {
            let i = mode(*k)?;
            SpinorField::single_mode(grid, *k, eigenvector(grid.frequency(i), *sign))?
        }
        DataSpec::RandomHs { s, amplitude } => {
            let mut f = SpinorField::zeros(grid, Representation::Spectral);
            for i in 0..grid.len() {
                if !grid.is_resolved(i) {
                    continue;
                }
                let xi = grid.frequency(i);
                let weight = amplitude
                    * japanese((xi[0] * xi[0] + xi[1] * xi[1]).sqrt()).powf(-s - 1.0 - ROUGH_DELTA);
                let mut rng = mode_rng(seed, grid.wavevector(i));
                let v = Spinor2(gaussian(&mut rng), gaussian(&mut rng));
                f.set(i, v * Complex64::new(weight, 0.0));
            }
            f
        }
    };
    Ok(torus.spinor_physical(&spectral)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use csd_core::TorusGrid;

    #[test]
    fn parses_every_form() {
        let cases = [
            ("zero", DataSpec::Zero),
            (
                "constant(1, 0)",
                DataSpec::Constant(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            ),
            (
                "constant(0.5-0.25i,2i)",
                DataSpec::Constant(Complex64::new(0.5, -0.25), Complex64::new(0.0, 2.0)),
            ),
            (
                "planewave(2, -1, 1)",
                DataSpec::PlaneWave {
                    k: [2, -1],
                    component: 1,
                },
            ),
            (
                "eigenmode((1,0),+)",
                DataSpec::Eigenmode {
                    k: [1, 0],
                    sign: HalfWave::Plus,
                },
            ),
            (
                "eigenmode(0, 3, -)",
                DataSpec::Eigenmode {
                    k: [0, 3],
                    sign: HalfWave::Minus,
                },
            ),
            (
                "random-hs(0.3, 1)",
                DataSpec::RandomHs {
                    s: 0.3,
                    amplitude: 1.0,
                },
            ),
        ];
        for (text, want) in cases {
            let got: DataSpec = text.parse().unwrap();
            assert_eq!(got, want, "{text}");
            assert_eq!(got.to_string().parse::<DataSpec>().unwrap(), want);
        }
        for bad in [
            "",
            "gaussian(1)",
            "planewave(1,0,2)",
            "constant(1)",
            "random-hs(0.3, -1)",
            "eigenmode(1,0,x)",
        ] {
            assert!(
                matches!(bad.parse::<DataSpec>(), Err(SimError::DataSpec(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn eigenvector_along_x1() {
        let v = eigenvector([1.0, 0.0], HalfWave::Plus);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((v.0 - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((v.1 - Complex64::new(0.0, -r)).norm() < 1e-15);
    }

    #[test]
    fn random_modes_do_not_depend_on_the_grid() {
        let spec = DataSpec::RandomHs {
            s: 0.3,
            amplitude: 1.0,
        };
        let small = Torus::naive(TorusGrid::standard(8).unwrap());
        let large = Torus::naive(TorusGrid::standard(16).unwrap());
        let a = small
            .spinor_spectral(&make_initial_data(&spec, &small, 3).unwrap())
            .unwrap();
        let b = large
            .spinor_spectral(&make_initial_data(&spec, &large, 3).unwrap())
            .unwrap();
        for i in 0..small.grid().len() {
            if small.grid().is_resolved(i) {
                let j = large.grid().flat_of(small.grid().wavevector(i)).unwrap();
                assert!((a.get(i).0 - b.get(j).0).norm() < 1e-12);
            }
        }
        let c = make_initial_data(&spec, &small, 4).unwrap();
        assert!(c.max_abs_diff(&small.spinor_physical(&a).unwrap()) > 1e-3);
    }
}
