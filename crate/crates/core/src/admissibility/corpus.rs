//! Every exponent tuple used by the well-posedness and uniqueness arguments,
//! each written with the single shared infinitesimal `ε`.
//!
//! Instantiations of the informal `a±`, `a±±` notation:
//! - `a+` and `a−` become `a ± ε`;
//! - `b₂ = ½ − 2ε` for the duality partner `X^{−s,½−−}`;
//! - in the uniqueness second factor `b₂ = ½−−` becomes `½ − ε`, since
//!   `½ − 2ε` would break `s₀+s₁+s₂ > 3/2 − (b₀+b₁+b₂)` against
//!   `s₁ = ¼ + ε/4`, `b₁ = ¼ + ε`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};

use super::conditions::{evaluate_conditions, ConditionReport, ExponentTuple};
use super::extended::{ExtendedRational, Rational};
use super::threshold::TupleFamily;

fn er(p: i64, d: i64, kp: i64, kd: i64) -> ExtendedRational {
    ExtendedRational::from_parts(p, d, kp, kd)
}

fn r(p: i64, d: i64) -> Rational {
    Ratio::new(p, d)
}

/// A one-parameter tuple family and the parameter values it is used at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFamily {
    pub name: &'static str,
    pub family: TupleFamily,
    pub samples: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub tuple: ExponentTuple,
}

/// Families used for `H^s` data, parametrised by `s`.
pub fn corpus_families() -> Vec<CorpusFamily> {
    let z = r(0, 1);
    let one = r(1, 1);
    let mid = alloc::vec![r(3, 10), r(1, 2), r(7, 10)];
    let high = alloc::vec![r(3, 4), r(1, 1), r(2, 1)];
    alloc::vec![
        CorpusFamily {
            name: "lwp-mid-regularity/first-factor",
            family: TupleFamily {
                base: ExponentTuple::new(
                    [er(1, 4, -1, 1), er(0, 1, 0, 1), er(0, 1, 0, 1)],
                    [er(-1, 4, -1, 1), er(1, 2, 1, 1), er(1, 2, 1, 1)],
                ),
                slope: [z, one, one, z, z, z],
            },
            samples: mid.clone(),
        },
        CorpusFamily {
            name: "lwp-mid-regularity/second-factor",
            family: TupleFamily {
                base: ExponentTuple::new(
                    [er(3, 4, 1, 1), er(0, 1, 0, 1), er(0, 1, 0, 1)],
                    [er(1, 4, 1, 1), er(1, 2, 1, 1), er(1, 2, -2, 1)],
                ),
                slope: [z, one, -one, z, z, z],
            },
            samples: mid,
        },
        CorpusFamily {
            name: "lwp-high-regularity/first-factor",
            family: TupleFamily {
                base: ExponentTuple::new(
                    [er(1, 1, -1, 1), er(0, 1, 0, 1), er(0, 1, 0, 1)],
                    [er(-1, 4, -1, 1), er(1, 2, 1, 1), er(1, 2, 1, 1)],
                ),
                slope: [-one, one, one, z, z, z],
            },
            samples: high.clone(),
        },
        CorpusFamily {
            name: "lwp-high-regularity/second-factor",
            family: TupleFamily {
                base: ExponentTuple::new(
                    [er(0, 1, 1, 1), er(0, 1, 0, 1), er(0, 1, 0, 1)],
                    [er(1, 4, 1, 1), er(1, 2, 1, 1), er(1, 2, -2, 1)],
                ),
                slope: [one, one, -one, z, z, z],
            },
            samples: high,
        },
    ]
}

/// Parameter-free tuples of the uniqueness argument.
fn fixed_entries() -> Vec<CorpusEntry> {
    alloc::vec![
        CorpusEntry {
            name: "uniqueness/first-factor".into(),
            tuple: ExponentTuple::new(
                [er(1, 2, 0, 1), er(0, 1, 0, 1), er(1, 4, 1, 4)],
                [er(0, 1, 0, 1), er(1, 2, 1, 1), er(1, 4, 1, 1)],
            ),
        },
        CorpusEntry {
            name: "uniqueness/second-factor".into(),
            tuple: ExponentTuple::new(
                [er(1, 2, 0, 1), er(1, 4, 1, 4), er(0, 1, 0, 1)],
                [er(0, 1, 0, 1), er(1, 4, 1, 1), er(1, 2, -1, 1)],
            ),
        },
    ]
}

/// All corpus tuples, families instantiated at their sample parameters.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for f in corpus_families() {
        for s in &f.samples {
            let name = if s.is_integer() {
                format!("{}@s={}", f.name, s.numer())
            } else {
                format!("{}@s={}/{}", f.name, s.numer(), s.denom())
            };
            out.push(CorpusEntry {
                name,
                tuple: f.family.at(ExtendedRational::from_rational(*s)),
            });
        }
    }
    out.extend(fixed_entries());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub entries: Vec<(CorpusEntry, ConditionReport)>,
}

impl CorpusReport {
    pub fn all_admissible(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.admissible())
    }
}

/// Evaluate the whole corpus; any inadmissible entry is a regression whose
/// message lists the violated conditions verbatim.
pub fn verify_corpus() -> Result<CorpusReport> {
    let entries: Vec<_> = corpus()
        .into_iter()
        .map(|e| {
            let rep = evaluate_conditions(&e.tuple);
            (e, rep)
        })
        .collect();
    let mut failures = Vec::new();
    for (e, rep) in &entries {
        if !rep.admissible() {
            let labels: Vec<&str> = rep.violated().map(|o| o.label).collect();
            failures.push(format!(
                "{} [{}] violates: {}",
                e.name,
                e.tuple,
                labels.join("; ")
            ));
        }
    }
    if failures.is_empty() {
        Ok(CorpusReport { entries })
    } else {
        Err(Error::Regression(failures.join(" | ")))
    }
}
