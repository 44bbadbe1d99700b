//! Discrete Fourier transform backends.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
// needed without std; shadowed by inherent methods when std is linked
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `X_k = Σ_j x_j e^{-2πi jk/n}`
    Forward,
    /// `x_j = Σ_k X_k e^{+2πi jk/n}`
    Inverse,
}

/// Unnormalized batched 1-D DFT.
///
/// `data` holds `data.len() / len` consecutive transforms of length `len`.
/// Implementations must be callable from several threads at once.
pub trait FftBackend: Send + Sync {
    fn transform(&self, data: &mut [Complex64], len: usize, direction: Direction);
}

/// Direct O(n²) DFT. Slow, but dependency free and exact up to rounding of
/// the twiddle factors, which makes it a useful oracle for faster backends.
#[derive(Debug, Default, Clone, Copy)]
pub struct NaiveDft;

impl FftBackend for NaiveDft {
    fn transform(&self, data: &mut [Complex64], len: usize, direction: Direction) {
        if len == 0 {
            return;
        }
        assert_eq!(
            data.len() % len,
            0,
            "buffer length not a multiple of the transform length"
        );
        let sign = match direction {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        };
        // twiddle index reduced mod len keeps the phase argument small
        let twiddles: Vec<Complex64> = (0..len)
            .map(|j| {
                let theta = sign * 2.0 * PI * j as f64 / len as f64;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        let mut scratch = alloc::vec![Complex64::new(0.0, 0.0); len];
        for chunk in data.chunks_exact_mut(len) {
            for (k, out) in scratch.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, x) in chunk.iter().enumerate() {
                    acc += x * twiddles[(j * k) % len];
                }
                *out = acc;
            }
            chunk.copy_from_slice(&scratch);
        }
    }
}

/// In-place transpose of a square `n × n` row-major matrix.
pub(crate) fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}
