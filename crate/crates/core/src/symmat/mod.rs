//! Dense symmetric matrices in packed scaled-vector form.
//!
//! A [`SymMatrix`] of order `n` stores its lower triangle column by column,
//! with every off-diagonal entry multiplied by `sqrt(2)`. With that scaling the
//! Euclidean inner product of two packed vectors equals the trace inner
//! product `tr(AB)`, and the Euclidean norm equals the Frobenius norm, so the
//! solver can treat matrices as plain vectors everywhere except inside the
//! cone projection.

mod eigen;
mod lanczos;

pub use eigen::{
    approx_error_bound, aproj_psd, aproj_psd_detailed, aproj_psd_detailed_with, full_eigen, min_eigenvalue, proj_psd,
    truncated_eigen, EigenDecomposition, TruncatedEigenSolver, TruncatedProjection,
};

use std::f64::consts::SQRT_2;

use faer::{Mat, MatRef};

use crate::error::{Result, SdpError};

/// Relative tolerance used when checking dense input for symmetry.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Number of packed entries for an `n x n` symmetric matrix.
#[inline]
pub const fn packed_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Inverse of [`packed_len`], if `len` is a triangular number.
pub fn dim_from_packed_len(len: usize) -> Option<usize> {
    // n = (sqrt(8 len + 1) - 1) / 2, corrected for rounding
    let approx = (((8 * len + 1) as f64).sqrt() - 1.0) / 2.0;
    let base = approx.round() as usize;
    (base.saturating_sub(1)..=base + 1).find(|&n| packed_len(n) == len)
}

/// Position of entry `(i, j)` in the packed vector of an order-`n` matrix.
/// Either triangle may be addressed; the pair is normalized to `i >= j`.
#[inline]
pub fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (row, col) = if i >= j { (i, j) } else { (j, i) };
    debug_assert!(row < n);
    col * (2 * n - col + 1) / 2 + (row - col)
}

/// Start offset of column `col` in the packed vector of an order-`n` matrix.
#[inline]
pub const fn packed_col_start(n: usize, col: usize) -> usize {
    col * (2 * n - col + 1) / 2
}

/// Dense symmetric matrix stored in packed `svec` form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; packed_len(n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[packed_index(n, i, i)] = d;
        }
        m
    }

    /// Wraps an already packed (and already scaled) vector.
    pub fn from_packed(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != packed_len(n) {
            return Err(SdpError::DimensionMismatch {
                expected: packed_len(n),
                got: data.len(),
            });
        }
        Ok(SymMatrix { n, data })
    }

    /// Packs a dense row-major `n x n` array, rejecting asymmetric input.
    pub fn from_dense(n: usize, rows: &[f64]) -> Result<Self> {
        Ok(SymMatrix {
            n,
            data: svec(n, rows)?,
        })
    }

    /// Packs the lower triangle of a dense matrix without a symmetry check.
    pub fn from_lower(m: MatRef<'_, f64>) -> Self {
        let n = m.nrows();
        let mut data = Vec::with_capacity(packed_len(n));
        for j in 0..n {
            data.push(m[(j, j)]);
            for i in j + 1..n {
                data.push(SQRT_2 * m[(i, j)]);
            }
        }
        SymMatrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn packed(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn packed_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_packed(self) -> Vec<f64> {
        self.data
    }

    /// Mathematical entry `S[i, j]`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let v = self.data[packed_index(self.n, i, j)];
        if i == j {
            v
        } else {
            v / SQRT_2
        }
    }

    /// Sets `S[i, j] = S[j, i] = value`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = packed_index(self.n, i, j);
        self.data[k] = if i == j { value } else { SQRT_2 * value };
    }

    /// Trace inner product `tr(self * other)`.
    pub fn dot(&self, other: &SymMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        dot(&self.data, &other.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm2(&self.data)
    }

    pub fn trace(&self) -> f64 {
        (0..self.n)
            .map(|i| self.data[packed_index(self.n, i, i)])
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// `self += alpha * other`
    pub fn axpy(&mut self, alpha: f64, other: &SymMatrix) {
        debug_assert_eq!(self.n, other.n);
        axpy(&mut self.data, alpha, &other.data);
    }

    pub fn scale(&mut self, alpha: f64) {
        self.data.iter_mut().for_each(|v| *v *= alpha);
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.get(i, j);
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }

    /// Dense faer copy with both triangles filled.
    pub fn to_mat(&self) -> Mat<f64> {
        let n = self.n;
        let mut m = Mat::<f64>::zeros(n, n);
        let mut k = 0;
        for j in 0..n {
            m[(j, j)] = self.data[k];
            k += 1;
            for i in j + 1..n {
                let v = self.data[k] / SQRT_2;
                m[(i, j)] = v;
                m[(j, i)] = v;
                k += 1;
            }
        }
        m
    }
}

/// Packs a dense row-major symmetric array into scaled lower-triangle form.
pub fn svec(n: usize, rows: &[f64]) -> Result<Vec<f64>> {
    if rows.len() != n * n {
        return Err(SdpError::DimensionMismatch {
            expected: n * n,
            got: rows.len(),
        });
    }
    let mut worst = 0.0_f64;
    let mut symmetric = true;
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (rows[i * n + j], rows[j * n + i]);
            let gap = (a - b).abs();
            worst = worst.max(gap);
            if gap > SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0) || gap.is_nan() {
                symmetric = false;
            }
        }
    }
    if !symmetric {
        return Err(SdpError::NotSymmetric {
            max_asymmetry: worst,
        });
    }
    let mut data = Vec::with_capacity(packed_len(n));
    for j in 0..n {
        data.push(rows[j * n + j]);
        for i in j + 1..n {
            data.push(SQRT_2 * rows[i * n + j]);
        }
    }
    Ok(data)
}

/// Unpacks a scaled vector; the order is inferred from its length.
pub fn smat(v: &[f64]) -> Result<SymMatrix> {
    let n = dim_from_packed_len(v.len()).ok_or(SdpError::NotTriangular(v.len()))?;
    SymMatrix::from_packed(n, v.to_vec())
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub(crate) fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}
