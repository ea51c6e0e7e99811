// Thick-restart Lanczos for the algebraically largest eigenpairs of a dense
// symmetric matrix. Every new Krylov vector is orthogonalized twice against
// the whole basis, so the projected matrix is formed explicitly from the
// Gram-Schmidt coefficients; after a restart it takes an arrowhead shape.

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{axpy, dot, norm2};

#[derive(Debug, Clone, Copy)]
pub(crate) struct LanczosParams {
    /// Krylov subspace dimension.
    pub ncv: usize,
    pub max_restarts: usize,
    /// Total matrix-vector products allowed before giving up.
    pub max_matvecs: usize,
    /// Residual tolerance relative to `max(1, |theta_1|)`.
    pub tol: f64,
    pub seed: u64,
}

impl LanczosParams {
    pub(crate) fn for_rank(n: usize, r: usize) -> Self {
        let ncv = n.min((2 * r + 1).max(r + 30));
        LanczosParams {
            ncv,
            // about the cost of one dense decomposition
            max_matvecs: n.max(2 * ncv),
            max_restarts: 300,
            tol: 1e-10,
            seed: 0x5eed_1a2c,
        }
    }
}

/// Converged Ritz pairs, values descending.
pub(crate) struct RitzPairs {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
    pub restarts: usize,
    pub matvecs: usize,
}

/// `a` is the full dense matrix in column-major order.
fn matvec(a: &[f64], n: usize, x: &[f64], y: &mut [f64]) {
    y.iter_mut().for_each(|v| *v = 0.0);
    for (j, &xj) in x.iter().enumerate() {
        if xj != 0.0 {
            axpy(y, xj, &a[j * n..(j + 1) * n]);
        }
    }
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    v
}

/// Orthogonalizes `w` against `basis` twice, returning accumulated coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; basis.len()];
    for _ in 0..2 {
        for (c, v) in coeffs.iter_mut().zip(basis) {
            let h = dot(v, w);
            axpy(w, -h, v);
            *c += h;
        }
    }
    coeffs
}

/// Fresh random direction orthogonal to `basis`, used after a breakdown.
fn fresh_direction(basis: &[Vec<f64>], n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v = random_unit(n, rng);
        orthogonalize(basis, &mut v);
        let nv = norm2(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|x| *x /= nv);
            return Some(v);
        }
    }
    None
}

/// Start vector: the sum of the columns of `guess` plus a small random
/// component, or a random unit vector when there is no usable guess.
fn start_vector(n: usize, guess: Option<&Mat<f64>>, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut v = random_unit(n, rng);
    if let Some(g) = guess.filter(|g| g.nrows() == n && g.ncols() > 0) {
        v.iter_mut().for_each(|x| *x *= 1e-3);
        for c in 0..g.ncols() {
            for (row, x) in v.iter_mut().enumerate() {
                *x += g[(row, c)];
            }
        }
        let nv = norm2(&v);
        if nv.is_finite() && nv > 0.0 {
            v.iter_mut().for_each(|x| *x /= nv);
        } else {
            v = random_unit(n, rng);
        }
    }
    v
}

/// Returns `None` when the restart or matvec budget is exhausted.
pub(crate) fn largest_eigenpairs(
    a: &[f64],
    n: usize,
    r: usize,
    params: LanczosParams,
    guess: Option<&Mat<f64>>,
) -> Option<RitzPairs> {
    let m = params.ncv.min(n);
    debug_assert!(r >= 1 && r < m);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    basis.push(start_vector(n, guess, &mut rng));
    let mut h = Mat::<f64>::zeros(m, m);
    let mut kept = 0;
    let mut w = vec![0.0; n];
    let mut matvecs = 0;

    for restart in 0..=params.max_restarts {
        let mut beta = 0.0;
        let mut residual: Option<Vec<f64>> = None;
        for j in kept..m {
            if matvecs == params.max_matvecs {
                return None;
            }
            matvecs += 1;
            matvec(a, n, &basis[j], &mut w);
            let coeffs = orthogonalize(&basis[..=j], &mut w);
            for (i, &c) in coeffs.iter().enumerate() {
                h[(i, j)] = c;
                h[(j, i)] = c;
            }
            beta = norm2(&w);
            let scale = coeffs.iter().fold(1.0_f64, |acc, c| acc.max(c.abs()));
            let next = if beta > 1e-12 * scale {
                Some(w.iter().map(|x| x / beta).collect::<Vec<_>>())
            } else {
                beta = 0.0;
                None
            };
            if j + 1 < m {
                let v = match next {
                    Some(v) => v,
                    None => fresh_direction(&basis, n, &mut rng)?,
                };
                basis.push(v);
            } else {
                residual = next;
            }
        }

        let (theta, y) = super::eigen::dense_eigen_desc(h.as_ref()).ok()?;
        let scale = theta[0].abs().max(1.0);
        let converged = (0..r).all(|i| beta * y[(m - 1, i)].abs() <= params.tol * scale);

        if converged || restart == params.max_restarts {
            if !converged {
                return None;
            }
            let mut vectors = Mat::<f64>::zeros(n, r);
            for c in 0..r {
                for (l, v) in basis.iter().enumerate() {
                    let coef = y[(l, c)];
                    for row in 0..n {
                        vectors[(row, c)] += coef * v[row];
                    }
                }
            }
            return Some(RitzPairs {
                values: theta[..r].to_vec(),
                vectors,
                restarts: restart,
                matvecs,
            });
        }

        // Thick restart: keep the leading Ritz vectors plus the residual direction.
        kept = (r + (m - r) / 2).min(m - 1);
        let mut new_basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        for c in 0..kept {
            let mut u = vec![0.0; n];
            for (l, v) in basis.iter().enumerate() {
                axpy(&mut u, y[(l, c)], v);
            }
            new_basis.push(u);
        }
        let tail = match residual {
            Some(v) => v,
            None => fresh_direction(&new_basis, n, &mut rng)?,
        };
        new_basis.push(tail);
        basis = new_basis;
        h.fill(0.0);
        for (c, &t) in theta.iter().enumerate().take(kept) {
            h[(c, c)] = t;
        }
    }
    None
}
