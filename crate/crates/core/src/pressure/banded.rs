use crate::error::{Error, Result};
use crate::scalar::Real;

/// Cholesky factorization of a symmetric positive definite band matrix.
///
/// Only the lower band is stored: `band[k * (bw + 1) + d] = A[k][k - d]`.
#[derive(Debug, Clone)]
pub struct BandedCholesky<T> {
    n: usize,
    bw: usize,
    band: Vec<T>,
}

impl<T: Real> BandedCholesky<T> {
    /// Factors the matrix whose lower band is produced by `entry(row, col)`
    /// for `row - bw <= col <= row`.
    pub fn factor(n: usize, bw: usize, mut entry: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let w = bw + 1;
        let mut band = vec![T::zero(); n * w];
        for k in 0..n {
            for d in 0..=bw.min(k) {
                band[k * w + d] = entry(k, k - d);
            }
        }
        for k in 0..n {
            // diagonal
            let mut s = band[k * w];
            for m in k.saturating_sub(bw)..k {
                let l = band[k * w + (k - m)];
                s = s - l * l;
            }
            if s <= T::zero() || !s.is_finite() {
                return Err(Error::NotPositiveDefinite(k));
            }
            let diag = s.sqrt();
            band[k * w] = diag;
            // column k below the diagonal
            for i in k + 1..n.min(k + bw + 1) {
                let mut s = band[i * w + (i - k)];
                for m in i.saturating_sub(bw)..k {
                    s = s - band[i * w + (i - m)] * band[k * w + (k - m)];
                }
                band[i * w + (i - k)] = s / diag;
            }
        }
        Ok(Self { n, bw, band })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solve_in_place(&self, x: &mut [T]) {
        assert_eq!(x.len(), self.n);
        let w = self.bw + 1;
        for k in 0..self.n {
            let mut s = x[k];
            for m in k.saturating_sub(self.bw)..k {
                s = s - self.band[k * w + (k - m)] * x[m];
            }
            x[k] = s / self.band[k * w];
        }
        for k in (0..self.n).rev() {
            let mut s = x[k];
            for i in k + 1..self.n.min(k + self.bw + 1) {
                s = s - self.band[i * w + (i - k)] * x[i];
            }
            x[k] = s / self.band[k * w];
        }
    }
}
