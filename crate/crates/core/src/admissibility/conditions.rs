use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use super::extended::{ExtendedRational, Rational};

/// `(s₀, s₁, s₂, b₀, b₁, b₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentTuple {
    pub s: [ExtendedRational; 3],
    pub b: [ExtendedRational; 3],
}

impl ExponentTuple {
    pub fn new(s: [ExtendedRational; 3], b: [ExtendedRational; 3]) -> Self {
        Self { s, b }
    }

    /// Values in the order `s₀, s₁, s₂, b₀, b₁, b₂`.
    pub fn as_array(&self) -> [ExtendedRational; 6] {
        [
            self.s[0], self.s[1], self.s[2], self.b[0], self.b[1], self.b[2],
        ]
    }

    pub fn from_array(v: [ExtendedRational; 6]) -> Self {
        Self {
            s: [v[0], v[1], v[2]],
            b: [v[3], v[4], v[5]],
        }
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.as_array();
        write!(f, "{} {} {} {} {} {}", v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

/// `c·(s₀, s₁, s₂, b₀, b₁, b₂) + constant` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coeffs: [i64; 6],
    pub constant: (i64, i64),
}

impl Affine {
    const fn new(coeffs: [i64; 6], constant: (i64, i64)) -> Self {
        Self { coeffs, constant }
    }

    pub fn constant(&self) -> Rational {
        Ratio::new(self.constant.0, self.constant.1)
    }

    pub fn eval(&self, x: &[ExtendedRational; 6]) -> ExtendedRational {
        let mut acc = ExtendedRational::from_rational(self.constant());
        for (c, v) in self.coeffs.iter().zip(x) {
            if *c != 0 {
                acc = acc + *v * Ratio::from_integer(*c);
            }
        }
        acc
    }

    fn minus(&self, other: &Affine) -> Affine {
        let mut coeffs = [0; 6];
        for i in 0..6 {
            coeffs[i] = self.coeffs[i] - other.coeffs[i];
        }
        let c = self.constant() - other.constant();
        Affine {
            coeffs,
            constant: (*c.numer(), *c.denom()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightSide {
    Plain(Affine),
    /// `max(0, a)`
    MaxZero(Affine),
}

/// One inequality `left ⊳ right` with `⊳` either `>` or `≥`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Condition {
    pub id: usize,
    pub label: &'static str,
    pub strict: bool,
    pub left: Affine,
    pub right: RightSide,
}

impl Condition {
    pub fn right_value(&self, x: &[ExtendedRational; 6]) -> ExtendedRational {
        match &self.right {
            RightSide::Plain(a) => a.eval(x),
            RightSide::MaxZero(a) => a.eval(x).max(ExtendedRational::zero()),
        }
    }

    /// The condition as a conjunction of `piece ⊳ 0` with affine pieces.
    pub fn pieces(&self) -> Vec<Affine> {
        match &self.right {
            RightSide::Plain(a) => alloc::vec![self.left.minus(a)],
            RightSide::MaxZero(a) => {
                alloc::vec![self.left, self.left.minus(a)]
            }
        }
    }

    pub fn holds(&self, x: &[ExtendedRational; 6]) -> bool {
        let (l, r) = (self.left.eval(x), self.right_value(x));
        if self.strict {
            l > r
        } else {
            l >= r
        }
    }
}

const SUM_S: [i64; 6] = [1, 1, 1, 0, 0, 0];

const fn plus(a: [i64; 6], b: [i64; 6]) -> [i64; 6] {
    [
        a[0] + b[0],
        a[1] + b[1],
        a[2] + b[2],
        a[3] + b[3],
        a[4] + b[4],
        a[5] + b[5],
    ]
}

const fn neg(a: [i64; 6]) -> [i64; 6] {
    [-a[0], -a[1], -a[2], -a[3], -a[4], -a[5]]
}

const ZERO: (i64, i64) = (0, 1);

const fn lin(c: [i64; 6]) -> Affine {
    Affine::new(c, ZERO)
}

const fn cst(p: i64, q: i64) -> Affine {
    Affine::new([0; 6], (p, q))
}

/// `constant − c·x`
const fn const_minus(p: i64, q: i64, c: [i64; 6]) -> Affine {
    Affine::new(neg(c), (p, q))
}

const B0: [i64; 6] = [0, 0, 0, 1, 0, 0];
const B1: [i64; 6] = [0, 0, 0, 0, 1, 0];
const B2: [i64; 6] = [0, 0, 0, 0, 0, 1];

const fn strict(id: usize, label: &'static str, left: Affine, right: RightSide) -> Condition {
    Condition {
        id,
        label,
        strict: true,
        left,
        right,
    }
}

/// The eighteen conditions, in display order. Only condition 16 is
/// non-strict.
pub const CONDITIONS: [Condition; 18] = [
    strict(
        1,
        "b₀ + b₁ + b₂ > ½",
        lin(plus(plus(B0, B1), B2)),
        RightSide::Plain(cst(1, 2)),
    ),
    strict(
        2,
        "b₀ + b₁ > 0",
        lin(plus(B0, B1)),
        RightSide::Plain(cst(0, 1)),
    ),
    strict(
        3,
        "b₀ + b₂ > 0",
        lin(plus(B0, B2)),
        RightSide::Plain(cst(0, 1)),
    ),
    strict(
        4,
        "b₁ + b₂ > 0",
        lin(plus(B1, B2)),
        RightSide::Plain(cst(0, 1)),
    ),
    strict(
        5,
        "s₀ + s₁ + s₂ > 3/2 − (b₀ + b₁ + b₂)",
        lin(SUM_S),
        RightSide::Plain(const_minus(3, 2, plus(plus(B0, B1), B2))),
    ),
    strict(
        6,
        "s₀ + s₁ + s₂ > 1 − (b₀ + b₁)",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 1, plus(B0, B1))),
    ),
    strict(
        7,
        "s₀ + s₁ + s₂ > 1 − (b₀ + b₂)",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 1, plus(B0, B2))),
    ),
    strict(
        8,
        "s₀ + s₁ + s₂ > 1 − (b₁ + b₂)",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 1, plus(B1, B2))),
    ),
    strict(
        9,
        "s₀ + s₁ + s₂ > ½ − b₀",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 2, B0)),
    ),
    strict(
        10,
        "s₀ + s₁ + s₂ > ½ − b₁",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 2, B1)),
    ),
    strict(
        11,
        "s₀ + s₁ + s₂ > ½ − b₂",
        lin(SUM_S),
        RightSide::Plain(const_minus(1, 2, B2)),
    ),
    strict(
        12,
        "s₀ + s₁ + s₂ > ¾",
        lin(SUM_S),
        RightSide::Plain(cst(3, 4)),
    ),
    strict(
        13,
        "(s₀ + b₀) + 2s₁ + 2s₂ > 1",
        lin([1, 2, 2, 1, 0, 0]),
        RightSide::Plain(cst(1, 1)),
    ),
    strict(
        14,
        "2s₀ + (s₁ + b₁) + 2s₂ > 1",
        lin([2, 1, 2, 0, 1, 0]),
        RightSide::Plain(cst(1, 1)),
    ),
    strict(
        15,
        "2s₀ + 2s₁ + (s₂ + b₂) > 1",
        lin([2, 2, 1, 0, 0, 1]),
        RightSide::Plain(cst(1, 1)),
    ),
    Condition {
        id: 16,
        label: "s₁ + s₂ ≥ max(0, −b₀)",
        strict: false,
        left: lin([0, 1, 1, 0, 0, 0]),
        right: RightSide::MaxZero(lin(neg(B0))),
    },
    strict(
        17,
        "s₀ + s₂ > max(0, −b₁)",
        lin([1, 0, 1, 0, 0, 0]),
        RightSide::MaxZero(lin(neg(B1))),
    ),
    strict(
        18,
        "s₀ + s₁ > max(0, −b₂)",
        lin([1, 1, 0, 0, 0, 0]),
        RightSide::MaxZero(lin(neg(B2))),
    ),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub id: usize,
    pub label: &'static str,
    pub left: ExtendedRational,
    pub right: ExtendedRational,
    pub strict: bool,
    pub pass: bool,
}

impl ConditionOutcome {
    pub fn margin(&self) -> ExtendedRational {
        self.left - self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub tuple: ExponentTuple,
    pub outcomes: Vec<ConditionOutcome>,
}

impl ConditionReport {
    pub fn admissible(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn violated(&self) -> impl Iterator<Item = &ConditionOutcome> {
        self.outcomes.iter().filter(|o| !o.pass)
    }
}

pub fn evaluate_conditions(t: &ExponentTuple) -> ConditionReport {
    let x = t.as_array();
    let outcomes = CONDITIONS
        .iter()
        .map(|c| ConditionOutcome {
            id: c.id,
            label: c.label,
            left: c.left.eval(&x),
            right: c.right_value(&x),
            strict: c.strict,
            pass: c.holds(&x),
        })
        .collect();
    ConditionReport {
        tuple: *t,
        outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn er(p: i64, d: i64, k: i64) -> ExtendedRational {
        ExtendedRational::from_parts(p, d, k, 1)
    }

    #[test]
    fn exactly_one_non_strict() {
        assert_eq!(CONDITIONS.iter().filter(|c| !c.strict).count(), 1);
        assert_eq!(
            CONDITIONS.iter().find(|c| !c.strict).unwrap().label,
            "s₁ + s₂ ≥ max(0, −b₀)"
        );
        for (i, c) in CONDITIONS.iter().enumerate() {
            assert_eq!(c.id, i + 1);
        }
    }

    #[test]
    fn pieces_have_nonnegative_coefficients() {
        for c in &CONDITIONS {
            for p in c.pieces() {
                assert!(p.coeffs.iter().all(|&v| v >= 0), "{}", c.label);
            }
        }
    }

    #[test]
    fn all_zero_regularity_fails_three_quarters() {
        let half = er(1, 2, 1);
        let t = ExponentTuple::new([er(0, 1, 0); 3], [half; 3]);
        let r = evaluate_conditions(&t);
        assert!(!r.admissible());
        assert!(r.violated().any(|o| o.label == "s₀ + s₁ + s₂ > ¾"));
    }

    #[test]
    fn non_strict_boundary_passes() {
        // s₁ + s₂ = 0 = max(0, −b₀) with b₀ > 0
        let x = [
            er(1, 1, 0),
            er(0, 1, 0),
            er(0, 1, 0),
            er(1, 1, 0),
            er(1, 1, 0),
            er(1, 1, 0),
        ];
        assert!(CONDITIONS[15].holds(&x));
    }
}
