use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::SymMatrix;

/// Anchors, ground-truth sensor positions and the measured distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorScene {
    pub d: usize,
    pub anchors: Vec<Vec<f64>>,
    pub sensors: Vec<Vec<f64>>,
    /// `(i, j, w_ij)` sensor-sensor distances, `i < j`.
    pub omega_s: Vec<(usize, usize, f64)>,
    /// `(k, j, w_kj)` anchor `k` to sensor `j` distances.
    pub omega_a: Vec<(usize, usize, f64)>,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl SensorScene {
    /// Points uniform in `[-0.5, 0.5]^2`, every pairwise distance measured.
    /// Distances are scaled by `1 + noise * N(0, 1)`.
    pub fn random(n_sensors: usize, n_anchors: usize, noise: f64, seed: u64) -> Result<Self> {
        if n_sensors == 0 || n_anchors == 0 {
            return Err(SdpError::InvalidInstance("need at least one sensor and one anchor".into()));
        }
        let d = 2;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..d).map(|_| rng.random_range(-0.5..0.5)).collect() };
        let anchors: Vec<Vec<f64>> = (0..n_anchors).map(|_| point(&mut rng)).collect();
        let sensors: Vec<Vec<f64>> = (0..n_sensors).map(|_| point(&mut rng)).collect();
        let perturb = |w: f64, rng: &mut ChaCha8Rng| -> f64 {
            if noise == 0.0 {
                w
            } else {
                let z: f64 = StandardNormal.sample(rng);
                w * (1.0 + noise * z)
            }
        };
        let mut omega_s = Vec::new();
        for i in 0..n_sensors {
            for j in i + 1..n_sensors {
                let w = perturb(distance(&sensors[i], &sensors[j]), &mut rng);
                omega_s.push((i, j, w));
            }
        }
        let mut omega_a = Vec::new();
        for (k, anchor) in anchors.iter().enumerate() {
            for (j, sensor) in sensors.iter().enumerate() {
                let w = perturb(distance(anchor, sensor), &mut rng);
                omega_a.push((k, j, w));
            }
        }
        Ok(SensorScene {
            d,
            anchors,
            sensors,
            omega_s,
            omega_a,
        })
    }

    pub fn n_sensors(&self) -> usize {
        self.sensors.len()
    }
}

/// Objective of the localization relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensorObjective {
    /// `C = 0`: pure feasibility.
    #[default]
    Feasibility,
    /// `minimize tr(Y)`, which favours low-rank solutions.
    MinTraceY,
}

pub fn gen_sensor_localization(scene: &SensorScene) -> Result<SdpProblem> {
    gen_sensor_localization_with(scene, SensorObjective::Feasibility)
}

/// Relaxation over `Z = [I X; X^T Y]` of order `d + n`:
///
/// * the top-left `d x d` block is pinned to the identity,
/// * `Y_ii + Y_jj - 2 Y_ij = w_ij^2` for measured sensor pairs,
/// * `tr([a; -e_j][a; -e_j]^T Z) = |a_k|^2 - 2 a_k^T x_j + Y_jj = w_kj^2`
///   for measured anchor-sensor pairs.
pub fn gen_sensor_localization_with(scene: &SensorScene, objective: SensorObjective) -> Result<SdpProblem> {
    let d = scene.d;
    if d != 2 {
        return Err(SdpError::InvalidInstance(format!("only d = 2 is supported, got {d}")));
    }
    if scene.omega_s.is_empty() && scene.omega_a.is_empty() {
        return Err(SdpError::InvalidInstance("no distance measurements".into()));
    }
    let n = scene.n_sensors();
    let dim = d + n;
    let mut a = Vec::new();
    let mut b = Vec::new();

    for i in 0..d {
        for j in i..d {
            let coef = if i == j { 1.0 } else { 0.5 };
            a.push(SparseRow::from_entries(dim, &[(i, j, coef)])?);
            b.push(if i == j { 1.0 } else { 0.0 });
        }
    }
    for &(i, j, w) in &scene.omega_s {
        if i >= n || j >= n || i == j {
            return Err(SdpError::InvalidInstance(format!("bad sensor pair ({i}, {j})")));
        }
        let (si, sj) = (d + i, d + j);
        a.push(SparseRow::from_entries(dim, &[(si, si, 1.0), (sj, sj, 1.0), (si, sj, -1.0)])?);
        b.push(w * w);
    }
    for &(k, j, w) in &scene.omega_a {
        let anchor = scene
            .anchors
            .get(k)
            .ok_or_else(|| SdpError::InvalidInstance(format!("unknown anchor {k}")))?;
        if j >= n {
            return Err(SdpError::InvalidInstance(format!("unknown sensor {j}")));
        }
        let sj = d + j;
        let mut entries = Vec::with_capacity(d * (d + 1) / 2 + d + 1);
        for l in 0..d {
            for q in l..d {
                entries.push((l, q, anchor[l] * anchor[q]));
            }
            entries.push((l, sj, -anchor[l]));
        }
        entries.push((sj, sj, 1.0));
        a.push(SparseRow::from_entries(dim, &entries)?);
        b.push(w * w);
    }

    let mut c = SymMatrix::zeros(dim);
    if objective == SensorObjective::MinTraceY {
        for j in d..dim {
            c.set(j, j, 1.0);
        }
    }
    SdpProblem::new(format!("sensor{n}"), c, a, b, vec![], vec![])
}

/// `Z = [I X; X^T X^T X]` built from the true positions.
pub fn sensor_ground_truth(scene: &SensorScene) -> SymMatrix {
    let d = scene.d;
    let n = scene.n_sensors();
    let mut z = SymMatrix::zeros(d + n);
    for l in 0..d {
        z.set(l, l, 1.0);
    }
    for (j, xj) in scene.sensors.iter().enumerate() {
        for (l, &v) in xj.iter().enumerate() {
            z.set(l, d + j, v);
        }
        for (i, xi) in scene.sensors.iter().enumerate().take(j + 1) {
            z.set(d + i, d + j, xi.iter().zip(xj).map(|(p, q)| p * q).sum());
        }
    }
    z
}

/// Columns of the top-right `d x n` block.
pub fn extract_positions(z: &SymMatrix, d: usize, n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|j| (0..d).map(|l| z.get(l, d + j)).collect()).collect()
}
