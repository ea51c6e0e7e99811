//! Seeded inputs shared by the criterion benchmarks.

use pdsdp_core::symmat::SymMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Symmetric matrix with i.i.d. uniform entries on `[-1, 1)`.
pub fn random_symmetric(n: usize, seed: u64) -> SymMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SymMatrix::zeros(n);
    for j in 0..n {
        for i in j..n {
            s.set(i, j, rng.random_range(-1.0..1.0));
        }
    }
    s
}

/// Rotated diagonal with `positive` eigenvalues near 10 and a wide negative
/// tail, the shape of the matrices the solvers project late in a run.
pub fn few_positive(n: usize, positive: usize, seed: u64) -> SymMatrix {
    let q = random_symmetric(n, seed).to_mat();
    let q = q.qr().compute_Q();
    let diag: Vec<f64> = (0..n)
        .map(|i| if i < positive { 10.0 - i as f64 } else { -100.0 * (1 + i - positive) as f64 })
        .collect();
    let mut scaled = q.clone();
    for (j, d) in diag.iter().enumerate() {
        for i in 0..n {
            scaled[(i, j)] *= d;
        }
    }
    let full = &scaled * q.transpose();
    let rows: Vec<f64> = (0..n * n).map(|k| 0.5 * (full[(k / n, k % n)] + full[(k % n, k / n)])).collect();
    SymMatrix::from_dense(n, &rows).expect("symmetrized")
}
