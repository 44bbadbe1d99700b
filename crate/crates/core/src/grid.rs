use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform `n × n` grid on the torus `[0, L)²`.
///
/// Storage index `i ∈ 0..n` maps to the integer wavenumber
/// `k ∈ {−n/2+1, …, n/2}`; the physical frequency is `ξ = 2π k / L`.
/// Flat arrays are row-major with the `x₁` index as the row:
/// `flat = i₁·n + i₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGrid {
    n: usize,
    extent: f64,
}

impl TorusGrid {
    pub fn new(n: usize, extent: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(
                "points per axis must be a positive even integer",
            ));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid("extent must be a positive finite real"));
        }
        Ok(Self { n, extent })
    }

    /// Grid on the standard torus of side `2π` (integer frequencies).
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Number of grid points, `n²`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.extent / self.n as f64
    }

    /// Area of the torus.
    #[inline]
    pub fn area(&self) -> f64 {
        self.extent * self.extent
    }

    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        let half = self.n / 2;
        if i <= half {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Storage index of integer wavenumber `k`, if it lies on the lattice.
    #[inline]
    pub fn index_of(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k > -half && k <= half {
            Some(if k >= 0 {
                k as usize
            } else {
                (k + self.n as i64) as usize
            })
        } else {
            None
        }
    }

    #[inline]
    pub fn wavevector(&self, flat: usize) -> [i64; 2] {
        [
            self.wavenumber(flat / self.n),
            self.wavenumber(flat % self.n),
        ]
    }

    #[inline]
    pub fn flat_of(&self, k: [i64; 2]) -> Option<usize> {
        Some(self.index_of(k[0])? * self.n + self.index_of(k[1])?)
    }

    #[inline]
    pub fn frequency(&self, flat: usize) -> [f64; 2] {
        let k = self.wavevector(flat);
        let scale = 2.0 * PI / self.extent;
        [scale * k[0] as f64, scale * k[1] as f64]
    }

    #[inline]
    pub fn point(&self, flat: usize) -> [f64; 2] {
        let h = self.spacing();
        [h * (flat / self.n) as f64, h * (flat % self.n) as f64]
    }

    #[inline]
    pub fn is_nyquist(&self, flat: usize) -> bool {
        let half = (self.n / 2) as i64;
        let k = self.wavevector(flat);
        k[0] == half || k[1] == half
    }

    /// Modes kept by the cubic dealiasing rule: `max(|k₁|, |k₂|) < n/4`.
    #[inline]
    pub fn is_resolved(&self, flat: usize) -> bool {
        let k = self.wavevector(flat);
        let n = self.n as i64;
        4 * k[0].abs() < n && 4 * k[1].abs() < n
    }

    /// Largest kept wavenumber magnitude under the dealiasing rule.
    pub fn dealias_cutoff(&self) -> i64 {
        (self.n as i64 - 1) / 4
    }

    /// Largest `|ξ|` over the non-Nyquist lattice.
    pub fn max_frequency(&self) -> f64 {
        let kmax = (self.n / 2 - 1) as f64;
        2.0 * PI / self.extent * kmax * core::f64::consts::SQRT_2
    }

    pub fn ensure_same(&self, other: &TorusGrid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                expected_n: self.n,
                expected_extent: self.extent,
                found_n: other.n,
                found_extent: other.extent,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_degenerate() {
        assert!(TorusGrid::new(7, 1.0).is_err());
        assert!(TorusGrid::new(0, 1.0).is_err());
        assert!(TorusGrid::new(8, 0.0).is_err());
        assert!(TorusGrid::new(8, f64::NAN).is_err());
    }

    #[test]
    fn wavenumber_roundtrip() {
        let g = TorusGrid::standard(8).unwrap();
        let ks: alloc::vec::Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
        assert_eq!(ks, [0, 1, 2, 3, 4, -3, -2, -1]);
        for i in 0..8 {
            assert_eq!(g.index_of(g.wavenumber(i)), Some(i));
        }
        assert_eq!(g.index_of(-4), None);
        assert_eq!(g.index_of(5), None);
    }

    #[test]
    fn spacing_and_frequency() {
        let g = TorusGrid::new(16, 4.0).unwrap();
        assert_eq!(g.spacing(), 0.25);
        let f = g.frequency(g.flat_of([1, -2]).unwrap());
        assert!((f[0] - PI / 2.0).abs() < 1e-15);
        assert!((f[1] + PI).abs() < 1e-15);
    }

    #[test]
    fn dealias_band() {
        let g = TorusGrid::standard(8).unwrap();
        assert_eq!(g.dealias_cutoff(), 1);
        assert!(g.is_resolved(g.flat_of([1, -1]).unwrap()));
        assert!(!g.is_resolved(g.flat_of([2, 0]).unwrap()));
        let g = TorusGrid::standard(64).unwrap();
        assert_eq!(g.dealias_cutoff(), 15);
        assert!(g.is_nyquist(g.flat_of([32, 3]).unwrap()));
    }
}
