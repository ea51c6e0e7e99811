//! Problem data in general form and the stacked constraint operator `M = [A; G]`.

use std::f64::consts::SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::symmat::{self, dot, norm2, packed_index, packed_len, SymMatrix};

/// A constraint matrix as a sparse row over packed positions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseRow {
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseRow {
    /// Indices must be strictly increasing.
    pub fn new(indices: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(SdpError::InvalidSparseRow(format!(
                "{} indices but {} values",
                indices.len(),
                values.len()
            )));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SdpError::InvalidSparseRow(
                "indices must be strictly increasing".into(),
            ));
        }
        Ok(SparseRow { indices, values })
    }

    /// Builds the packed row of the symmetric matrix whose entries `(i, j, v)`
    /// (zero-based, either triangle) set both `S[i, j]` and `S[j, i]` to `v`.
    /// Repeated positions are summed.
    pub fn from_entries(n: usize, entries: &[(usize, usize, f64)]) -> Result<Self> {
        let mut packed: Vec<(usize, f64)> = Vec::with_capacity(entries.len());
        for &(i, j, v) in entries {
            if i >= n || j >= n {
                return Err(SdpError::InvalidSparseRow(format!(
                    "entry ({i}, {j}) outside a {n}x{n} matrix"
                )));
            }
            let scaled = if i == j { v } else { SQRT_2 * v };
            packed.push((packed_index(n, i, j), scaled));
        }
        packed.sort_by_key(|&(k, _)| k);
        let mut indices: Vec<usize> = Vec::with_capacity(packed.len());
        let mut values: Vec<f64> = Vec::with_capacity(packed.len());
        for (k, v) in packed {
            if indices.last() == Some(&k) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(k);
                values.push(v);
            }
        }
        Ok(SparseRow { indices, values })
    }

    /// Packed row of a dense symmetric matrix, dropping exact zeros.
    pub fn from_sym(m: &SymMatrix) -> Self {
        let (indices, values) = m
            .packed()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(k, &v)| (k, v))
            .unzip();
        SparseRow { indices, values }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    /// `tr(A X)` for the packed `x`.
    #[inline]
    pub fn dot(&self, x: &[f64]) -> f64 {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&k, &v)| v * x[k])
            .sum()
    }

    /// `out += alpha * row`
    #[inline]
    pub fn scatter_add(&self, alpha: f64, out: &mut [f64]) {
        for (&k, &v) in self.indices.iter().zip(&self.values) {
            out[k] += alpha * v;
        }
    }

    /// Zero-based `(i, j, v)` with `i <= j` and unscaled values, in packed order.
    pub fn entries(&self, n: usize) -> Vec<(usize, usize, f64)> {
        let mut col = 0;
        let mut out = Vec::with_capacity(self.nnz());
        for (&k, &v) in self.indices.iter().zip(&self.values) {
            while col + 1 < n && symmat::packed_col_start(n, col + 1) <= k {
                col += 1;
            }
            let row = col + (k - symmat::packed_col_start(n, col));
            if row == col {
                out.push((col, col, v));
            } else {
                out.push((col, row, v / SQRT_2));
            }
        }
        out
    }

    pub fn to_sym(&self, n: usize) -> SymMatrix {
        let mut data = vec![0.0; packed_len(n)];
        self.scatter_add(1.0, &mut data);
        SymMatrix::from_packed(n, data).expect("length matches")
    }
}

/// SDP in general form: minimize `tr(CX)` s.t. `A(X) = b`, `G(X) <= h`, `X` PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpProblem {
    pub(crate) name: String,
    pub(crate) n: usize,
    pub(crate) c: SymMatrix,
    pub(crate) a: Vec<SparseRow>,
    pub(crate) b: Vec<f64>,
    pub(crate) g: Vec<SparseRow>,
    pub(crate) h: Vec<f64>,
    pub(crate) objective_sign: f64,
}

impl SdpProblem {
    pub fn new(
        name: impl Into<String>,
        c: SymMatrix,
        a: Vec<SparseRow>,
        b: Vec<f64>,
        g: Vec<SparseRow>,
        h: Vec<f64>,
    ) -> Result<Self> {
        let prob = SdpProblem {
            name: name.into(),
            n: c.n(),
            c,
            a,
            b,
            g,
            h,
            objective_sign: 1.0,
        };
        prob.validate()?;
        Ok(prob)
    }

    /// Sign applied to reported objectives. `-1` marks problems read from
    /// maximization-form files whose objective was negated on input.
    pub fn with_objective_sign(mut self, sign: f64) -> Self {
        self.objective_sign = if sign < 0.0 { -1.0 } else { 1.0 };
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let len = packed_len(self.n);
        if self.n == 0 {
            return Err(SdpError::InvalidProblem("matrix dimension is zero".into()));
        }
        if self.a.len() != self.b.len() {
            return Err(SdpError::InvalidProblem(format!(
                "{} equality rows but {} right-hand sides",
                self.a.len(),
                self.b.len()
            )));
        }
        if self.g.len() != self.h.len() {
            return Err(SdpError::InvalidProblem(format!(
                "{} inequality rows but {} right-hand sides",
                self.g.len(),
                self.h.len()
            )));
        }
        if self.a.is_empty() && self.g.is_empty() {
            return Err(SdpError::InvalidProblem("no constraints".into()));
        }
        if !self.c.is_finite() {
            return Err(SdpError::InvalidProblem("objective has non-finite entries".into()));
        }
        for (kind, rows, rhs) in [("equality", &self.a, &self.b), ("inequality", &self.g, &self.h)] {
            for (i, (row, r)) in rows.iter().zip(rhs.iter()).enumerate() {
                if row.indices.last().is_some_and(|&k| k >= len) {
                    return Err(SdpError::InvalidProblem(format!(
                        "{kind} row {i} indexes past packed length {len}"
                    )));
                }
                if !r.is_finite() || row.values.iter().any(|v| !v.is_finite()) {
                    return Err(SdpError::InvalidProblem(format!(
                        "{kind} row {i} has non-finite data"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of equality constraints.
    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// Number of inequality constraints.
    pub fn p(&self) -> usize {
        self.g.len()
    }

    pub fn c(&self) -> &SymMatrix {
        &self.c
    }

    pub fn a(&self) -> &[SparseRow] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn g(&self) -> &[SparseRow] {
        &self.g
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn objective_sign(&self) -> f64 {
        self.objective_sign
    }

    /// Stacked rows of `M = [A; G]`.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.a.iter().chain(self.g.iter())
    }

    pub(crate) fn apply_m_packed(&self, x: &[f64], out: &mut [f64]) {
        for (o, row) in out.iter_mut().zip(self.rows()) {
            *o = row.dot(x);
        }
    }

    /// `out = M^*(y)` in packed form.
    pub(crate) fn apply_m_adjoint_packed(&self, y: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (&yi, row) in y.iter().zip(self.rows()) {
            if yi != 0.0 {
                row.scatter_add(yi, out);
            }
        }
    }

    /// Applies `M` to a symmetric matrix.
    pub fn apply_m(&self, x: &SymMatrix) -> Result<Vec<f64>> {
        if x.n() != self.n {
            return Err(SdpError::DimensionMismatch {
                expected: self.n,
                got: x.n(),
            });
        }
        let mut out = vec![0.0; self.m() + self.p()];
        self.apply_m_packed(x.packed(), &mut out);
        Ok(out)
    }

    /// `sum_i y_i A_i + sum_j y_{m+j} G_j`.
    pub fn apply_m_adjoint(&self, y: &[f64]) -> Result<SymMatrix> {
        if y.len() != self.m() + self.p() {
            return Err(SdpError::DimensionMismatch {
                expected: self.m() + self.p(),
                got: y.len(),
            });
        }
        let mut out = vec![0.0; packed_len(self.n)];
        self.apply_m_adjoint_packed(y, &mut out);
        SymMatrix::from_packed(self.n, out)
    }

    /// Spectral-norm estimate of `M` (see [`estimate_operator_norm`]).
    pub fn operator_norm(&self, seed: u64) -> Result<f64> {
        estimate_operator_norm(self, seed)
    }
}

const NORM_MAX_ITERS: usize = 5000;
const NORM_MIN_ITERS: usize = 20;
const NORM_REL_CHANGE: f64 = 1e-10;
/// Inflation applied only when power iteration has not settled.
const NORM_UNCONVERGED_FACTOR: f64 = 1.01;

/// Power iteration on `M^T M` from a seeded random start.
///
/// Stops once the estimate changes by less than `1e-10` relative between
/// iterations. If the iteration cap is hit first, the estimate is inflated by
/// 1% so that the step size stays on the safe side.
pub fn estimate_operator_norm(prob: &SdpProblem, seed: u64) -> Result<f64> {
    let len = packed_len(prob.n);
    let rows = prob.m() + prob.p();
    if rows == 0 || prob.rows().all(|r| r.values.iter().all(|&v| v == 0.0)) {
        return Err(SdpError::ZeroOperator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut mx = vec![0.0; rows];
    let mut mtmx = vec![0.0; len];

    let mut prev = 0.0;
    let mut sigma = 0.0;
    for it in 0..NORM_MAX_ITERS {
        let nx = norm2(&x);
        if nx == 0.0 {
            // start vector orthogonal to the row space; reseed
            x = (0..len).map(|_| rng.random_range(-1.0..1.0)).collect();
            continue;
        }
        x.iter_mut().for_each(|v| *v /= nx);
        prob.apply_m_packed(&x, &mut mx);
        sigma = norm2(&mx);
        prob.apply_m_adjoint_packed(&mx, &mut mtmx);
        std::mem::swap(&mut x, &mut mtmx);
        if it >= NORM_MIN_ITERS && (sigma - prev).abs() <= NORM_REL_CHANGE * sigma {
            return Ok(sigma);
        }
        prev = sigma;
    }
    log::debug!("operator norm power iteration hit the iteration cap");
    Ok(sigma * NORM_UNCONVERGED_FACTOR)
}

/// Quality measures of a candidate primal-dual pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    /// `sign * tr(CX)`, with the problem's objective sign.
    pub primal_objective: f64,
    /// `-sign * (b^T y_eq + h^T y_ineq)` for the multipliers produced by the
    /// iteration.
    pub dual_objective: f64,
    /// `||A(X) - b||_2`
    pub equality_violation: f64,
    /// `||max(G(X) - h, 0)||_2`
    pub inequality_violation: f64,
    pub min_eigenvalue: f64,
    /// `primal_objective - dual_objective`
    pub duality_gap: f64,
    /// `max_j |y_{m+j} (G(X) - h)_j|`
    pub complementarity: f64,
    pub tolerance: f64,
}

impl SolutionReport {
    /// Violations and PSD defect all within `tol`.
    pub fn is_feasible(&self, tol: f64) -> bool {
        self.equality_violation <= tol
            && self.inequality_violation <= tol
            && self.min_eigenvalue >= -tol
    }

    pub fn within_tolerance(&self) -> bool {
        self.is_feasible(self.tolerance)
    }
}

/// Evaluates objectives, feasibility and gap for `(X, y)`.
pub fn check_solution(prob: &SdpProblem, x: &SymMatrix, y: &[f64], tol: f64) -> Result<SolutionReport> {
    let mx = prob.apply_m(x)?;
    let (m, p) = (prob.m(), prob.p());
    if y.len() != m + p {
        return Err(SdpError::DimensionMismatch {
            expected: m + p,
            got: y.len(),
        });
    }
    let equality_violation = mx[..m]
        .iter()
        .zip(&prob.b)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let inequality_violation = mx[m..]
        .iter()
        .zip(&prob.h)
        .map(|(g, h)| (g - h).max(0.0).powi(2))
        .fold(0.0, |acc, v| acc + v)
        .sqrt();
    let complementarity = mx[m..]
        .iter()
        .zip(&prob.h)
        .zip(&y[m..])
        .map(|((g, h), yj)| (yj * (g - h)).abs())
        .fold(0.0, f64::max);
    let sign = prob.objective_sign;
    let primal_objective = sign * prob.c.dot(x);
    let dual_objective = -sign * (dot(&prob.b, &y[..m]) + dot(&prob.h, &y[m..]));
    Ok(SolutionReport {
        primal_objective,
        dual_objective,
        equality_violation,
        inequality_violation,
        min_eigenvalue: symmat::min_eigenvalue(x)?,
        duality_gap: primal_objective - dual_objective,
        complementarity,
        tolerance: tol,
    })
}
