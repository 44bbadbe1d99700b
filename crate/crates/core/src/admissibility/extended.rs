use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i64>;

/// `q + kε` with `ε → 0⁺`. Ordered lexicographically on `(q, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedRational {
    pub q: Rational,
    pub k: Rational,
}

impl ExtendedRational {
    pub const fn new(q: Rational, k: Rational) -> Self {
        Self { q, k }
    }

    /// `p/d + (kp/kd)ε`
    pub fn from_parts(p: i64, d: i64, kp: i64, kd: i64) -> Self {
        Self {
            q: Ratio::new(p, d),
            k: Ratio::new(kp, kd),
        }
    }

    pub fn rational(p: i64, d: i64) -> Self {
        Self {
            q: Ratio::new(p, d),
            k: Rational::zero(),
        }
    }

    pub fn integer(p: i64) -> Self {
        Self::rational(p, 1)
    }

    pub fn zero() -> Self {
        Self {
            q: Rational::zero(),
            k: Rational::zero(),
        }
    }

    /// `kε`
    pub fn eps(k: i64) -> Self {
        Self {
            q: Rational::zero(),
            k: Ratio::from_integer(k),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self {
            q,
            k: Rational::zero(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.k.is_zero()
    }

    pub fn max(self, other: Self) -> Self {
        core::cmp::max(self, other)
    }

    pub fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    pub fn is_nonnegative(&self) -> bool {
        *self >= Self::zero()
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for ExtendedRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            q: self.q + o.q,
            k: self.k + o.k,
        }
    }
}

impl Sub for ExtendedRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            q: self.q - o.q,
            k: self.k - o.k,
        }
    }
}

impl Neg for ExtendedRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            q: -self.q,
            k: -self.k,
        }
    }
}

impl Mul<Rational> for ExtendedRational {
    type Output = Self;
    fn mul(self, c: Rational) -> Self {
        Self {
            q: self.q * c,
            k: self.k * c,
        }
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// `1/4`, `1/4+ε`, `-1/4-2ε`, `1/2+1/4ε`, `ε`.
impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k.is_zero() {
            return write_ratio(f, &self.q);
        }
        if !self.q.is_zero() {
            write_ratio(f, &self.q)?;
            f.write_str(if self.k.is_negative() { "-" } else { "+" })?;
        } else if self.k.is_negative() {
            f.write_str("-")?;
        }
        let a = self.k.abs();
        if !a.is_one() {
            write_ratio(f, &a)?;
        }
        f.write_str("ε")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn lexicographic_order() {
        let a = ExtendedRational::from_parts(1, 4, -1, 1);
        let b = ExtendedRational::rational(1, 4);
        let c = ExtendedRational::from_parts(1, 4, 1, 1);
        let d = ExtendedRational::from_parts(1, 3, -100, 1);
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn display() {
        assert_eq!(
            ExtendedRational::from_parts(1, 4, -1, 1).to_string(),
            "1/4-ε"
        );
        assert_eq!(
            ExtendedRational::from_parts(-1, 2, 2, 1).to_string(),
            "-1/2+2ε"
        );
        assert_eq!(
            ExtendedRational::from_parts(0, 1, -1, 4).to_string(),
            "-1/4ε"
        );
        assert_eq!(ExtendedRational::integer(3).to_string(), "3");
    }
}
