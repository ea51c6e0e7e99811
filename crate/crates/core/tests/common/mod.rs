#![allow(dead_code)]

use nalgebra::DMatrix;
use pdsdp_core::symmat::{full_eigen, packed_len, SymMatrix};
use pdsdp_core::{SdpProblem, SparseRow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries i.i.d. uniform on `[-1, 1)`.
pub fn uniform_sym(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let mut s = SymMatrix::zeros(n);
    for j in 0..n {
        for i in j..n {
            s.set(i, j, rng.random_range(-1.0..1.0));
        }
    }
    s
}

/// Entries i.i.d. standard normal.
pub fn gaussian_sym(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let mut s = SymMatrix::zeros(n);
    for j in 0..n {
        for i in j..n {
            s.set(i, j, StandardNormal.sample(rng));
        }
    }
    s
}

/// Random symmetric constraint row with roughly `nnz` entries.
fn random_row(n: usize, nnz: usize, rng: &mut ChaCha8Rng) -> SparseRow {
    let entries: Vec<(usize, usize, f64)> = (0..nnz.max(1))
        .map(|_| {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            (i.min(j), i.max(j), rng.random_range(-1.0..1.0))
        })
        .collect();
    SparseRow::from_entries(n, &entries).expect("valid row")
}

/// Random general-form problem with `m` equalities and `p` inequalities.
pub fn random_problem(n: usize, m: usize, p: usize, rng: &mut ChaCha8Rng) -> SdpProblem {
    let nnz = (n * n / 4).max(2);
    let a = (0..m).map(|_| random_row(n, nnz, rng)).collect();
    let g = (0..p).map(|_| random_row(n, nnz, rng)).collect();
    let b = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let h = (0..p).map(|_| rng.random_range(-1.0..1.0)).collect();
    SdpProblem::new("random", uniform_sym(n, rng), a, b, g, h).expect("valid problem")
}

/// `M` as a dense `(m + p) x packed_len(n)` matrix.
pub fn dense_operator(prob: &SdpProblem) -> DMatrix<f64> {
    let len = packed_len(prob.n());
    let rows = prob.m() + prob.p();
    let mut out = DMatrix::zeros(rows, len);
    for (r, row) in prob.a().iter().chain(prob.g()).enumerate() {
        for (&k, &v) in row.indices().iter().zip(row.values()) {
            out[(r, k)] += v;
        }
    }
    out
}

/// Largest singular value of `M` from a dense SVD.
pub fn dense_operator_norm(prob: &SdpProblem) -> f64 {
    dense_operator(prob)
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Eigenvalues of `s` from nalgebra, descending.
pub fn oracle_eigenvalues(s: &SymMatrix) -> Vec<f64> {
    let n = s.n();
    let dense = DMatrix::from_row_slice(n, n, &s.to_dense());
    let mut values: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Exact PSD projection computed with nalgebra.
pub fn oracle_proj_psd(s: &SymMatrix) -> SymMatrix {
    let n = s.n();
    let eig = DMatrix::from_row_slice(n, n, &s.to_dense()).symmetric_eigen();
    let clipped = eig.eigenvalues.map(|v| v.max(0.0));
    let p = &eig.eigenvectors * DMatrix::from_diagonal(&clipped) * eig.eigenvectors.transpose();
    let p = (&p + p.transpose()) * 0.5;
    let rows: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| p[(i, j)]).collect();
    SymMatrix::from_dense(n, &rows).expect("symmetrized")
}

pub fn frobenius_distance(a: &SymMatrix, b: &SymMatrix) -> f64 {
    let mut d = a.clone();
    d.axpy(-1.0, b);
    d.frobenius_norm()
}

/// Number of eigenvalues above `rel_tol * max(1, lambda_max)`.
pub fn numerical_rank(x: &SymMatrix, rel_tol: f64) -> usize {
    let values = full_eigen(x).expect("eigen").values;
    let cut = rel_tol * values.first().copied().unwrap_or(0.0).abs().max(1.0);
    values.iter().filter(|&&v| v > cut).count()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
