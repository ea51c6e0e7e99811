use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::diag::Diag;
use faer::{Accum, Mat, MatRef};

use super::lanczos::{largest_eigenpairs, LanczosParams};
use super::SymMatrix;
use crate::error::{Result, SdpError};
use crate::linalg_parallelism;

/// Eigenpairs of a symmetric matrix, values sorted non-increasing.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `n x k` column-orthonormal eigenvector block.
    pub vectors: Mat<f64>,
    /// `Some(r)` when only the leading `r` pairs were computed.
    pub truncated_rank: Option<usize>,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Full decomposition of a dense symmetric matrix, values descending.
pub(crate) fn dense_eigen_desc(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let n = a.nrows();
    let par = linalg_parallelism();
    let mut s = Diag::<f64>::zeros(n);
    let mut u = Mat::<f64>::zeros(n, n);
    let mut mem = MemBuffer::new(evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::Yes,
        par,
        Default::default(),
    ));
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        Some(u.as_mut()),
        par,
        MemStack::new(&mut mem),
        Default::default(),
    )
    .map_err(|_| SdpError::EigenNoConvergence)?;

    // faer returns ascending order
    let values: Vec<f64> = (0..n).rev().map(|i| s[i]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| u[(i, n - 1 - j)]);
    Ok((values, vectors))
}

fn dense_eigenvalues_desc(a: MatRef<'_, f64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    let par = linalg_parallelism();
    let mut s = Diag::<f64>::zeros(n);
    let mut mem = MemBuffer::new(evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::No,
        par,
        Default::default(),
    ));
    evd::self_adjoint_evd(
        a,
        s.as_mut(),
        None,
        par,
        MemStack::new(&mut mem),
        Default::default(),
    )
    .map_err(|_| SdpError::EigenNoConvergence)?;
    Ok((0..n).rev().map(|i| s[i]).collect())
}

pub fn full_eigen(s: &SymMatrix) -> Result<EigenDecomposition> {
    let (values, vectors) = dense_eigen_desc(s.to_mat().as_ref())?;
    Ok(EigenDecomposition {
        values,
        vectors,
        truncated_rank: None,
    })
}

/// Smallest eigenvalue; `+inf` for an empty matrix.
pub fn min_eigenvalue(s: &SymMatrix) -> Result<f64> {
    if s.n() == 0 {
        return Ok(f64::INFINITY);
    }
    let values = dense_eigenvalues_desc(s.to_mat().as_ref())?;
    Ok(*values.last().unwrap())
}

fn uses_dense_path(n: usize, r: usize) -> bool {
    n <= 32 || 2 * r > n
}

/// The `r` algebraically largest eigenpairs.
///
/// Small matrices and large ranks go straight to the dense routine. Otherwise a
/// thick-restart Lanczos iteration runs from a fixed seeded start vector, and
/// the dense routine is used as a fallback when it does not converge within
/// roughly the cost of a dense decomposition.
pub fn truncated_eigen(s: &SymMatrix, r: usize) -> Result<EigenDecomposition> {
    truncated_eigen_impl(s, r, None, true).map(|(eig, _)| eig)
}

/// Returns the decomposition and whether the Krylov path produced it.
fn truncated_eigen_impl(
    s: &SymMatrix,
    r: usize,
    guess: Option<&Mat<f64>>,
    allow_krylov: bool,
) -> Result<(EigenDecomposition, bool)> {
    let n = s.n();
    if r == 0 || r > n {
        return Err(SdpError::RankOutOfRange { rank: r, n });
    }
    let dense = s.to_mat();
    if allow_krylov && !uses_dense_path(n, r) {
        let col_major = dense
            .as_ref()
            .try_as_col_major()
            .expect("owned faer matrices are column-major");
        let a: Vec<f64> = (0..n)
            .flat_map(|j| col_major.col(j).iter().copied().collect::<Vec<_>>())
            .collect();
        match largest_eigenpairs(&a, n, r, LanczosParams::for_rank(n, r), guess) {
            Some(pairs) => {
                log::trace!(
                    "lanczos converged after {} restarts, {} matvecs (n = {n}, r = {r})",
                    pairs.restarts,
                    pairs.matvecs
                );
                let eig = EigenDecomposition {
                    values: pairs.values,
                    vectors: pairs.vectors,
                    truncated_rank: Some(r),
                };
                return Ok((eig, true));
            }
            None => log::trace!("lanczos over budget (n = {n}, r = {r}); using dense fallback"),
        }
    }
    let (values, vectors) = dense_eigen_desc(dense.as_ref())?;
    let eig = EigenDecomposition {
        values: values[..r].to_vec(),
        vectors: vectors.subcols(0, r).to_owned(),
        truncated_rank: Some(r),
    };
    Ok((eig, false))
}

/// `sum_l weights[l] * u_l u_l^T` over the given columns, packed.
fn weighted_outer(n: usize, vectors: MatRef<'_, f64>, weights: &[(usize, f64)]) -> SymMatrix {
    if weights.is_empty() {
        return SymMatrix::zeros(n);
    }
    let k = weights.len();
    let left = Mat::from_fn(n, k, |i, c| vectors[(i, weights[c].0)] * weights[c].1);
    let right = Mat::from_fn(n, k, |i, c| vectors[(i, weights[c].0)]);
    let mut out = Mat::<f64>::zeros(n, n);
    faer::linalg::matmul::matmul(
        out.as_mut(),
        Accum::Replace,
        left.as_ref(),
        right.as_ref().transpose(),
        1.0,
        linalg_parallelism(),
    );
    SymMatrix::from_lower(out.as_ref())
}

/// Euclidean projection onto the PSD cone.
pub fn proj_psd(s: &SymMatrix) -> Result<SymMatrix> {
    let n = s.n();
    let eig = full_eigen(s)?;
    let positive: Vec<(usize, f64)> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| (i, v))
        .collect();
    if 2 * positive.len() <= n {
        return Ok(weighted_outer(n, eig.vectors.as_ref(), &positive));
    }
    // Mostly positive spectrum: subtract the negative part instead.
    let negative: Vec<(usize, f64)> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0.0)
        .map(|(i, &v)| (i, v))
        .collect();
    let mut out = s.clone();
    out.axpy(-1.0, &weighted_outer(n, eig.vectors.as_ref(), &negative));
    Ok(out)
}

fn positive_part(s: &SymMatrix, eig: &EigenDecomposition, r: usize) -> SymMatrix {
    let positive: Vec<(usize, f64)> = eig.values[..r]
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| (i, v))
        .collect();
    weighted_outer(s.n(), eig.vectors.as_ref(), &positive)
}

/// Truncated projection keeping the positive part of the `r` leading
/// eigenpairs. Also returns the `r`-th largest eigenvalue.
pub fn aproj_psd(s: &SymMatrix, r: usize) -> Result<(SymMatrix, f64)> {
    let eig = truncated_eigen(s, r)?;
    Ok((positive_part(s, &eig, r), eig.values[r - 1]))
}

/// Repeated truncated decompositions of a slowly changing matrix.
///
/// Each Krylov run starts from the previous eigenvectors. When the Krylov
/// iteration exceeds its budget, the next calls use the dense routine
/// directly, for a window that doubles with every further failure and resets
/// after a success.
#[derive(Debug, Clone, Default)]
pub struct TruncatedEigenSolver {
    guess: Option<Mat<f64>>,
    dense_calls_left: usize,
    backoff: usize,
    krylov_solves: usize,
    dense_solves: usize,
}

impl TruncatedEigenSolver {
    pub fn new() -> Self {
        Self::default()
    }

    /// The `r` algebraically largest eigenpairs of `s`.
    pub fn solve(&mut self, s: &SymMatrix, r: usize) -> Result<EigenDecomposition> {
        let allow_krylov = self.dense_calls_left == 0;
        self.dense_calls_left = self.dense_calls_left.saturating_sub(1);
        let (eig, krylov) = truncated_eigen_impl(s, r, self.guess.as_ref(), allow_krylov)?;
        let tried_krylov = allow_krylov && !uses_dense_path(s.n(), r);
        if krylov {
            self.krylov_solves += 1;
            self.backoff = 0;
        } else {
            self.dense_solves += 1;
            if tried_krylov {
                self.backoff = (2 * self.backoff).clamp(8, 1024);
                self.dense_calls_left = self.backoff;
            }
        }
        self.guess = Some(eig.vectors.clone());
        Ok(eig)
    }

    /// `(Krylov, dense)` solve counts so far.
    pub fn solve_counts(&self) -> (usize, usize) {
        (self.krylov_solves, self.dense_solves)
    }
}

/// Output of [`aproj_psd_detailed`].
#[derive(Debug, Clone)]
pub struct TruncatedProjection {
    pub matrix: SymMatrix,
    /// `r`-th largest eigenvalue, the smallest one kept.
    pub lambda_r: f64,
    /// `(r + 1)`-th largest eigenvalue, the largest one discarded; `None`
    /// when `r = n`.
    pub lambda_next: Option<f64>,
}

/// Same projection as [`aproj_psd`], computing one extra eigenpair so that
/// the largest discarded eigenvalue is known as well.
pub fn aproj_psd_detailed(s: &SymMatrix, r: usize) -> Result<TruncatedProjection> {
    aproj_psd_detailed_with(&mut TruncatedEigenSolver::new(), s, r)
}

/// [`aproj_psd_detailed`] computed through a reusable solver.
pub fn aproj_psd_detailed_with(
    solver: &mut TruncatedEigenSolver,
    s: &SymMatrix,
    r: usize,
) -> Result<TruncatedProjection> {
    let n = s.n();
    if r == 0 || r > n {
        return Err(SdpError::RankOutOfRange { rank: r, n });
    }
    let eig = solver.solve(s, (r + 1).min(n))?;
    Ok(TruncatedProjection {
        matrix: positive_part(s, &eig, r),
        lambda_r: eig.values[r - 1],
        lambda_next: eig.values.get(r).copied(),
    })
}

/// Upper bound `(n - r) * max(lambda_r, 0)` on the squared Frobenius distance
/// between the exact and the truncated projection.
pub fn approx_error_bound(n: usize, r: usize, lambda_r: f64) -> f64 {
    (n.saturating_sub(r)) as f64 * lambda_r.max(0.0)
}
