use std::f64::consts::SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::{packed_index, packed_len, SymMatrix};

/// Undirected weighted graph with edges stored as `(i, j, w)`, `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, j, w) in edges {
            if i == j {
                return Err(SdpError::InvalidInstance(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(SdpError::InvalidInstance(format!("edge ({i}, {j}) outside {n} vertices")));
            }
            if !w.is_finite() {
                return Err(SdpError::InvalidInstance(format!("edge ({i}, {j}) has weight {w}")));
            }
            let (i, j) = (i.min(j), i.max(j));
            if !seen.insert((i, j)) {
                return Err(SdpError::InvalidInstance(format!("duplicate edge ({i}, {j})")));
            }
            normalized.push((i, j, w));
        }
        Ok(Graph { n, edges: normalized })
    }

    /// Erdos-Renyi graph with unit weights.
    pub fn erdos_renyi(n: usize, prob: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&prob) {
            return Err(SdpError::InvalidInstance(format!("edge probability {prob} outside [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(prob) {
                    edges.push((i, j, 1.0));
                }
            }
        }
        Graph::new(n, edges)
    }

    /// `sum_{(i,j) in E} w_ij x_i x_j`
    pub fn signed_weight(&self, x: &[i8]) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j, w)| w * f64::from(x[i]) * f64::from(x[j]))
            .sum()
    }
}

/// Relaxation `min tr(WX)` s.t. `diag(X) = 1`, `tr(11^T X) = 0`, `X` PSD,
/// with `W_ij = W_ji = w_ij / 2` so that `tr(W xx^T) = sum w_ij x_i x_j`.
pub fn gen_equipartition(graph: &Graph) -> Result<SdpProblem> {
    let n = graph.n;
    if n == 0 {
        return Err(SdpError::InvalidInstance("graph has no vertices".into()));
    }
    let mut w = SymMatrix::zeros(n);
    for &(i, j, wt) in &graph.edges {
        w.set(i, j, w.get(i, j) + wt / 2.0);
    }
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..n {
        a.push(SparseRow::new(vec![packed_index(n, i, i)], vec![1.0])?);
    }
    // all-ones matrix: diagonal 1, off-diagonal packed sqrt(2)
    let ones: Vec<f64> = (0..n)
        .flat_map(|j| std::iter::once(1.0).chain(std::iter::repeat(SQRT_2).take(n - j - 1)))
        .collect();
    a.push(SparseRow::new((0..packed_len(n)).collect(), ones)?);
    let mut b = vec![1.0; n];
    b.push(0.0);
    SdpProblem::new(format!("equipartition{n}"), w, a, b, vec![], vec![])
}

/// Exhaustive minimum of `sum w_ij x_i x_j` over balanced sign vectors.
pub fn brute_force_equipartition(graph: &Graph) -> Result<(Vec<i8>, f64)> {
    let n = graph.n;
    if n % 2 != 0 || n == 0 || n > 14 {
        return Err(SdpError::OracleScope(format!(
            "equipartition oracle needs even 2 <= n <= 14, got {n}"
        )));
    }
    let mut best: Option<(Vec<i8>, f64)> = None;
    // fix vertex 0 on the + side; the objective is invariant under x -> -x
    for mask in 0u32..(1 << (n - 1)) {
        let full = (mask << 1) | 1;
        if full.count_ones() as usize != n / 2 {
            continue;
        }
        let x: Vec<i8> = (0..n).map(|i| if full >> i & 1 == 1 { 1 } else { -1 }).collect();
        let val = graph.signed_weight(&x);
        if best.as_ref().map_or(true, |(_, b)| val < *b) {
            best = Some((x, val));
        }
    }
    Ok(best.expect("at least one balanced vector"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, vec![(1, 1, 1.0)]).is_err());
        assert!(Graph::new(3, vec![(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(Graph::new(3, vec![(0, 5, 1.0)]).is_err());
        assert!(Graph::new(3, vec![(0, 1, f64::NAN)]).is_err());
        let g = Graph::new(3, vec![(2, 0, 1.0)]).unwrap();
        assert_eq!(g.edges, vec![(0, 2, 1.0)]);
    }

    #[test]
    fn structure_of_relaxation() {
        let g = Graph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let prob = gen_equipartition(&g).unwrap();
        assert_eq!(prob.m(), 3);
        assert_eq!(prob.p(), 0);
        assert_eq!(prob.c().get(0, 1), 0.5);
        let x = SymMatrix::from_dense(2, &[1.0, -1.0, -1.0, 1.0]).unwrap();
        let mx = prob.apply_m(&x).unwrap();
        for (v, b) in mx.iter().zip(prob.b()) {
            assert!((v - b).abs() < 1e-14);
        }
        assert!((prob.c().dot(&x) + 1.0).abs() < 1e-14);
        assert!(gen_equipartition(&Graph::new(0, vec![]).unwrap()).is_err());
    }

    #[test]
    fn oracle_small_cases() {
        let g = Graph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let (x, val) = brute_force_equipartition(&g).unwrap();
        assert_eq!(val, -1.0);
        assert_eq!(x[0], -x[1]);

        let k4: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j, 1.0))).collect();
        let (_, val) = brute_force_equipartition(&Graph::new(4, k4).unwrap()).unwrap();
        // two intra-part edges (+1 each), four crossing edges (-1 each)
        assert_eq!(val, -2.0);

        assert!(brute_force_equipartition(&Graph::new(3, vec![]).unwrap()).is_err());
        assert!(brute_force_equipartition(&Graph::new(16, vec![]).unwrap()).is_err());
    }

    #[test]
    fn erdos_renyi_is_seeded() {
        let a = Graph::erdos_renyi(10, 0.5, 3).unwrap();
        let b = Graph::erdos_renyi(10, 0.5, 3).unwrap();
        assert_eq!(a, b);
        assert!(Graph::erdos_renyi(10, 1.5, 3).is_err());
    }
}
