use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::conditions::{ExponentTuple, CONDITIONS};
use super::extended::{ExtendedRational, Rational};

/// `t(s) = base + s·slope`, a tuple-valued affine family in the parameter `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleFamily {
    pub base: ExponentTuple,
    /// Slopes in the order `s₀, s₁, s₂, b₀, b₁, b₂`.
    pub slope: [Rational; 6],
}

impl TupleFamily {
    pub fn at(&self, s: ExtendedRational) -> ExponentTuple {
        let mut v = self.base.as_array();
        for (x, m) in v.iter_mut().zip(&self.slope) {
            *x = *x + s * *m;
        }
        ExponentTuple::from_array(v)
    }
}

/// Endpoint of a half-line in the extended parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: ExtendedRational,
    pub closed: bool,
}

/// What one affine piece of one condition says about `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceBound {
    Lower(Bound),
    Upper(Bound),
    Always,
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// No admissible `s`.
    Empty,
    /// Admissible for arbitrarily negative `s`.
    UnboundedBelow,
    /// Standard part of the infimum of admissible `s`.
    Finite(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    /// `(condition id, bound)` for every affine piece.
    pub pieces: Vec<(usize, PieceBound)>,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub empty: bool,
}

impl SweepReport {
    pub fn threshold(&self) -> Threshold {
        if self.empty {
            Threshold::Empty
        } else {
            match self.lower {
                None => Threshold::UnboundedBelow,
                Some(b) => Threshold::Finite(b.value.q),
            }
        }
    }

    /// Conditions with a lower bound whose standard part equals the
    /// threshold, in ascending id order.
    pub fn binding(&self) -> Vec<usize> {
        let Threshold::Finite(t) = self.threshold() else {
            return Vec::new();
        };
        let mut ids: Vec<usize> = self
            .pieces
            .iter()
            .filter_map(|(id, p)| match p {
                PieceBound::Lower(b) if b.value.q == t => Some(*id),
                _ => None,
            })
            .collect();
        ids.dedup();
        ids
    }

    /// Whether an extended parameter value lies in the admissible set.
    pub fn contains(&self, s: ExtendedRational) -> bool {
        if self.empty {
            return false;
        }
        let lo = self
            .lower
            .is_none_or(|b| if b.closed { s >= b.value } else { s > b.value });
        let hi = self
            .upper
            .is_none_or(|b| if b.closed { s <= b.value } else { s < b.value });
        lo && hi
    }
}

/// Tighter of two lower bounds: larger value, open on ties.
fn tighter_lower(a: Bound, b: Bound) -> Bound {
    match a.value.cmp(&b.value) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => Bound {
            value: a.value,
            closed: a.closed && b.closed,
        },
    }
}

fn tighter_upper(a: Bound, b: Bound) -> Bound {
    match a.value.cmp(&b.value) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => Bound {
            value: a.value,
            closed: a.closed && b.closed,
        },
    }
}

/// Solve every condition in closed form along the family.
///
/// Each piece reads `A + B·s ⊳ 0` with `A` extended-rational and `B`
/// rational, hence is a half-line, everything, or nothing. The admissible
/// set is the intersection.
pub fn threshold_sweep(family: &TupleFamily) -> SweepReport {
    let base = family.base.as_array();
    let mut pieces = Vec::new();
    let mut lower: Option<Bound> = None;
    let mut upper: Option<Bound> = None;
    let mut empty = false;
    for c in &CONDITIONS {
        for p in c.pieces() {
            let a = p.eval(&base);
            let b: Rational = p
                .coeffs
                .iter()
                .zip(&family.slope)
                .map(|(c, m)| *m * *c)
                .sum();
            let pb = if b.is_zero() {
                let ok = if c.strict {
                    a.is_positive()
                } else {
                    a.is_nonnegative()
                };
                if ok {
                    PieceBound::Always
                } else {
                    PieceBound::Never
                }
            } else {
                let bound = Bound {
                    value: -(a * b.recip()),
                    closed: !c.strict,
                };
                if b.is_positive() {
                    PieceBound::Lower(bound)
                } else {
                    PieceBound::Upper(bound)
                }
            };
            match pb {
                PieceBound::Lower(x) => lower = Some(lower.map_or(x, |l| tighter_lower(l, x))),
                PieceBound::Upper(x) => upper = Some(upper.map_or(x, |u| tighter_upper(u, x))),
                PieceBound::Never => empty = true,
                PieceBound::Always => {}
            }
            pieces.push((c.id, pb));
        }
    }
    if let (Some(l), Some(u)) = (lower, upper) {
        match l.value.cmp(&u.value) {
            Ordering::Greater => empty = true,
            Ordering::Equal if !(l.closed && u.closed) => empty = true,
            _ => {}
        }
    }
    SweepReport {
        pieces,
        lower,
        upper,
        empty,
    }
}
