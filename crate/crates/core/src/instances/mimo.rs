use std::f64::consts::FRAC_1_SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::{packed_index, SymMatrix};

/// Real binary MIMO channel `y = H x + noise`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MimoInstance {
    pub n: usize,
    /// Row-major `n x n` channel matrix.
    pub h: Vec<f64>,
    pub y_obs: Vec<f64>,
    pub x_true: Vec<i8>,
    pub sigma: f64,
}

impl MimoInstance {
    /// Standard Gaussian channel, uniform signs, Gaussian noise of std `sigma`.
    pub fn random(n: usize, sigma: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h: Vec<f64> = (0..n * n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let x_true: Vec<i8> = (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
        let y_obs = (0..n)
            .map(|i| {
                let clean: f64 = (0..n).map(|j| h[i * n + j] * f64::from(x_true[j])).sum();
                let noise: f64 = StandardNormal.sample(&mut rng);
                clean + sigma * noise
            })
            .collect();
        MimoInstance {
            n,
            h,
            y_obs,
            x_true,
            sigma,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 || self.h.len() != n * n || self.y_obs.len() != n || self.x_true.len() != n {
            return Err(SdpError::InvalidInstance("inconsistent MIMO dimensions".into()));
        }
        if self.h.iter().chain(&self.y_obs).any(|v| !v.is_finite()) {
            return Err(SdpError::InvalidInstance("non-finite MIMO data".into()));
        }
        if self.x_true.iter().any(|&x| x != 1 && x != -1) {
            return Err(SdpError::InvalidInstance("true signal must be +-1".into()));
        }
        Ok(())
    }
}

/// `||H x - y||^2`
fn residual_sq(h: &[f64], y: &[f64], x: &[i8]) -> f64 {
    let n = x.len();
    (0..y.len())
        .map(|i| {
            let r: f64 = (0..n).map(|j| h[i * n + j] * f64::from(x[j])).sum::<f64>() - y[i];
            r * r
        })
        .sum()
}

/// Relaxation `min tr(LX)` s.t. `diag(X) = 1`, `-1 <= X_ij <= 1` for `i < j`,
/// `X` PSD, with `L = [H^T H, -H^T y; -y^T H, y^T y]` of order `n + 1`.
pub fn gen_mimo(inst: &MimoInstance) -> Result<SdpProblem> {
    inst.validate()?;
    let n = inst.n;
    let dim = n + 1;
    let (h, y) = (&inst.h, &inst.y_obs);

    let mut l = SymMatrix::zeros(dim);
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = (0..n).map(|k| h[k * n + i] * h[k * n + j]).sum();
            l.set(i, j, v);
        }
        let hty: f64 = (0..n).map(|k| h[k * n + i] * y[k]).sum();
        l.set(n, i, -hty);
    }
    l.set(n, n, y.iter().map(|v| v * v).sum());

    let a: Vec<SparseRow> = (0..dim)
        .map(|i| SparseRow::new(vec![packed_index(dim, i, i)], vec![1.0]))
        .collect::<Result<_>>()?;
    let b = vec![1.0; dim];

    // X_ij <= 1 and -X_ij <= 1 on the strict upper triangle
    let mut g = Vec::with_capacity(dim * n);
    for j in 0..dim {
        for i in 0..j {
            let k = packed_index(dim, i, j);
            g.push(SparseRow::new(vec![k], vec![FRAC_1_SQRT_2])?);
            g.push(SparseRow::new(vec![k], vec![-FRAC_1_SQRT_2])?);
        }
    }
    let hv = vec![1.0; g.len()];
    SdpProblem::new(format!("mimo{n}"), l, a, b, g, hv)
}

/// Rank-one lift `[x; 1][x; 1]^T` of a sign vector.
pub fn mimo_ground_truth(x: &[i8]) -> SymMatrix {
    let v: Vec<f64> = x.iter().map(|&s| f64::from(s)).chain(std::iter::once(1.0)).collect();
    let dim = v.len();
    let mut out = SymMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..=i {
            out.set(i, j, v[i] * v[j]);
        }
    }
    out
}

/// Signs of the first `n` entries of the last column; `sign(0) = +1`.
pub fn extract_mimo_signal(x: &SymMatrix, n: usize) -> Vec<i8> {
    (0..n).map(|i| if x.get(i, n) >= 0.0 { 1 } else { -1 }).collect()
}

/// Exhaustive `min ||Hx - y||^2` over `x in {-1, 1}^n`, `n <= 16`.
pub fn brute_force_mimo(h: &[f64], y_obs: &[f64], n: usize) -> Result<(Vec<i8>, f64)> {
    if n == 0 || n > 16 {
        return Err(SdpError::OracleScope(format!("MIMO oracle needs 1 <= n <= 16, got {n}")));
    }
    if h.len() != n * n || y_obs.len() != n {
        return Err(SdpError::InvalidInstance("inconsistent MIMO dimensions".into()));
    }
    let mut best = (Vec::new(), f64::INFINITY);
    for mask in 0u32..(1 << n) {
        let x: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
        let v = residual_sq(h, y_obs, &x);
        if v < best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::check_solution;

    #[test]
    fn oracle_single_symbol() {
        let (x, obj) = brute_force_mimo(&[1.0], &[0.3], 1).unwrap();
        assert_eq!(x, vec![1]);
        assert!((obj - 0.49).abs() < 1e-15);
        assert!(brute_force_mimo(&[0.0; 289], &[0.0; 17], 17).is_err());
    }

    #[test]
    fn zero_noise_lift_is_optimal_and_feasible() {
        let inst = MimoInstance::random(6, 0.0, 2);
        let prob = gen_mimo(&inst).unwrap();
        assert_eq!(prob.m(), 7);
        assert_eq!(prob.p(), 2 * 7 * 6 / 2);
        let lift = mimo_ground_truth(&inst.x_true);
        assert!(prob.c().dot(&lift).abs() < 1e-10);
        let y = vec![0.0; prob.m() + prob.p()];
        let rep = check_solution(&prob, &lift, &y, 1e-9).unwrap();
        assert!(rep.equality_violation <= 1e-9 && rep.inequality_violation <= 1e-9);
        let (x, obj) = brute_force_mimo(&inst.h, &inst.y_obs, 6).unwrap();
        assert_eq!(x, inst.x_true);
        assert!(obj < 1e-20);
    }

    #[test]
    fn extraction() {
        let x = vec![1, -1, -1, 1];
        assert_eq!(extract_mimo_signal(&mimo_ground_truth(&x), 4), x);
        let mut m = SymMatrix::identity(4);
        for i in 0..3 {
            m.set(i, 3, -0.9);
        }
        assert_eq!(extract_mimo_signal(&m, 3), vec![-1, -1, -1]);
        assert_eq!(extract_mimo_signal(&SymMatrix::zeros(3), 2), vec![1, 1]);
    }

    #[test]
    fn box_rows_read_entries() {
        let prob = gen_mimo(&MimoInstance::random(2, 0.0, 0)).unwrap();
        let mut x = SymMatrix::identity(3);
        x.set(0, 2, 0.25);
        let mx = prob.apply_m(&x).unwrap();
        // rows for (0,1), then (0,2)
        assert!((mx[3] - 0.0).abs() < 1e-15);
        assert!((mx[5] - 0.25).abs() < 1e-15);
        assert!((mx[6] + 0.25).abs() < 1e-15);
    }
}
