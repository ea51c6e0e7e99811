//! Exact primal-dual hybrid gradient iteration.
//!
//! One iteration from `(X, y)` with step `alpha`:
//!
//! ```text
//! X+  = proj_psd(X - alpha (M^*(y) + C))
//! y~  = y + alpha M(2 X+ - X)
//! y+  = y~ - alpha proj_box(y~ / alpha)
//! ```
//!
//! where `proj_box(u) = [b; min(u_ineq, h)]`. The second line is the resolvent
//! of the conjugate of the constraint indicator, obtained through Moreau's
//! decomposition. Progress is measured by the fixed-point residuals
//!
//! ```text
//! eps_primal = || (X+ - X) / alpha - M^*(y+ - y) ||_F
//! eps_dual   = || (y+ - y) / alpha - M(X+ - X) ||_2
//! ```
//!
//! and their sum `eps_comb`.

use std::collections::VecDeque;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::problem::{estimate_operator_norm, SdpProblem};
use crate::symmat::{self, dot, norm2, packed_len, SymMatrix};

/// How `eps_tol` is compared against the combined residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    /// Stop when `eps_comb <= eps_tol * (1 + eps_comb at iteration 1)`.
    #[default]
    Relative,
    /// Stop when `eps_comb <= eps_tol`.
    Absolute,
}

/// Eigenvalue plugged into the rank certificate `(n - r) max(lambda, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CertificateEigenvalue {
    /// `lambda_{r+1}`, the largest eigenvalue the truncated projection drops.
    /// Zero certificate exactly when the truncation loses nothing.
    #[default]
    FirstDiscarded,
    /// `lambda_r`, the smallest eigenvalue kept. Never certifies a rank equal
    /// to the number of positive eigenvalues of the argument.
    LastKept,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Combined-residual tolerance.
    pub eps_tol: f64,
    /// Rank-certificate tolerance; `None` means `1e-4 * n`.
    pub eps_lambda: Option<f64>,
    /// Step size is `alpha_safety / ||M||_2`.
    pub alpha_safety: f64,
    /// Stall window of the low-rank solver.
    pub window_ell: usize,
    pub max_iter: usize,
    pub time_limit_s: f64,
    /// Seed for the operator-norm power iteration.
    pub seed: u64,
    /// Starting target rank of the low-rank solver.
    pub initial_rank: usize,
    pub termination: Termination,
    pub certificate_eigenvalue: CertificateEigenvalue,
    /// Explicit step size, bypassing the norm estimate and the safety factor.
    pub step_size: Option<f64>,
    /// Progress callback cadence in iterations; 0 disables it.
    pub log_every: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            eps_tol: 1e-3,
            eps_lambda: None,
            alpha_safety: 0.99,
            window_ell: 100,
            max_iter: 100_000,
            time_limit_s: 1200.0,
            seed: 0,
            initial_rank: 1,
            termination: Termination::Relative,
            certificate_eigenvalue: CertificateEigenvalue::FirstDiscarded,
            step_size: None,
            log_every: 100,
        }
    }
}

impl SolverConfig {
    /// Rejects NaN along with out-of-range values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SdpError::InvalidConfig(msg));
        if !(self.eps_tol > 0.0) {
            return bad(format!("eps_tol must be positive, got {}", self.eps_tol));
        }
        if !(self.alpha_safety > 0.0 && self.alpha_safety < 1.0) {
            return bad(format!("alpha_safety must lie in (0, 1), got {}", self.alpha_safety));
        }
        if self.window_ell == 0 {
            return bad("window_ell must be at least 1".into());
        }
        if self.initial_rank == 0 {
            return bad("initial_rank must be at least 1".into());
        }
        if let Some(e) = self.eps_lambda {
            if !(e >= 0.0) {
                return bad(format!("eps_lambda must be non-negative, got {e}"));
            }
        }
        if let Some(a) = self.step_size {
            if !(a > 0.0 && a.is_finite()) {
                return bad(format!("step_size must be positive, got {a}"));
            }
        }
        if !(self.time_limit_s > 0.0) {
            return bad(format!("time_limit_s must be positive, got {}", self.time_limit_s));
        }
        Ok(())
    }

    pub fn eps_lambda_for(&self, n: usize) -> f64 {
        self.eps_lambda.unwrap_or(1e-4 * n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    MaxIterations,
    TimeLimit,
    Diverged,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::TimeLimit => "time_limit",
            SolveStatus::Diverged => "diverged",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Residuals {
    pub primal: f64,
    pub dual: f64,
    pub comb: f64,
}

/// Feasible pair saved by the low-rank solver when its inner loop converges.
#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub rank: usize,
    pub iteration: usize,
    pub x: SymMatrix,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub x: SymMatrix,
    pub y: Vec<f64>,
    /// `tr(CX)` in the internal minimization sense.
    pub primal_objective: f64,
    /// `-(b^T y_eq + h^T y_ineq)`.
    pub dual_objective: f64,
    pub final_residuals: Residuals,
    /// Absolute value `eps_comb` had to reach.
    pub threshold: f64,
    pub iterations: usize,
    pub alpha: f64,
    /// `(iteration, target rank)` at start and after every rank change.
    pub rank_path: Vec<(usize, usize)>,
    pub checkpoints: Vec<Checkpoint>,
    pub wall_time_s: f64,
}

impl SolveResult {
    pub fn final_rank(&self) -> usize {
        self.rank_path.last().map_or(self.x.n(), |&(_, r)| r)
    }
}

/// Snapshot handed to progress callbacks.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub iteration: usize,
    pub residuals: Residuals,
    pub target_rank: usize,
    pub objective: f64,
    /// `(n - r) max(lambda_r, 0)` for the low-rank solver.
    pub certificate: Option<f64>,
}

/// Current and previous primal-dual pair plus a bounded residual history.
#[derive(Debug, Clone)]
pub struct IterateState {
    pub x_cur: SymMatrix,
    pub x_prev: SymMatrix,
    pub y_cur: Vec<f64>,
    pub y_prev: Vec<f64>,
    pub k: usize,
    pub residual_history: VecDeque<Residuals>,
    history_capacity: usize,
}

impl IterateState {
    /// Cold start `X = 0`, `y = 0`.
    pub fn zeros(prob: &SdpProblem, history_capacity: usize) -> Self {
        let n = prob.n();
        let rows = prob.m() + prob.p();
        IterateState {
            x_cur: SymMatrix::zeros(n),
            x_prev: SymMatrix::zeros(n),
            y_cur: vec![0.0; rows],
            y_prev: vec![0.0; rows],
            k: 0,
            residual_history: VecDeque::with_capacity(history_capacity.max(1)),
            history_capacity: history_capacity.max(1),
        }
    }

    /// Records a new iterate, shifting the current one into `prev`.
    pub fn advance(&mut self, x: SymMatrix, y: Vec<f64>) {
        self.x_prev = std::mem::replace(&mut self.x_cur, x);
        self.y_prev = std::mem::replace(&mut self.y_cur, y);
        self.k += 1;
    }

    pub fn push_residuals(&mut self, r: Residuals) {
        if self.residual_history.len() == self.history_capacity {
            self.residual_history.pop_front();
        }
        self.residual_history.push_back(r);
    }
}

/// Projection onto `{u : u_eq = b, u_ineq <= h}`.
pub fn proj_box(u: &[f64], b: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    let mut out = u.to_vec();
    proj_box_in_place(&mut out, b, h)?;
    Ok(out)
}

fn proj_box_in_place(u: &mut [f64], b: &[f64], h: &[f64]) -> Result<()> {
    let m = b.len();
    if u.len() != m + h.len() {
        return Err(SdpError::DimensionMismatch {
            expected: m + h.len(),
            got: u.len(),
        });
    }
    u[..m].copy_from_slice(b);
    for (ui, &hi) in u[m..].iter_mut().zip(h) {
        *ui = ui.min(hi);
    }
    Ok(())
}

/// Resolvent of the conjugate box indicator: `u - alpha proj_box(u / alpha)`.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn dual_resolvent(u: &[f64], alpha: f64, b: &[f64], h: &[f64]) -> Result<Vec<f64>> {
    if !(alpha > 0.0) {
        return Err(SdpError::NonPositiveStep(alpha));
    }
    let mut scaled: Vec<f64> = u.iter().map(|v| v / alpha).collect();
    proj_box_in_place(&mut scaled, b, h)?;
    Ok(u.iter().zip(&scaled).map(|(ui, pi)| ui - alpha * pi).collect())
}

fn check_step(alpha: f64) -> Result<()> {
    if alpha > 0.0 {
        Ok(())
    } else {
        Err(SdpError::NonPositiveStep(alpha))
    }
}

/// `X - alpha (M^*(y) + C)`, the argument of the primal projection.
pub(crate) fn primal_argument(
    prob: &SdpProblem,
    x_prev: &SymMatrix,
    y_prev: &[f64],
    alpha: f64,
) -> Result<SymMatrix> {
    check_step(alpha)?;
    if x_prev.n() != prob.n() {
        return Err(SdpError::DimensionMismatch {
            expected: prob.n(),
            got: x_prev.n(),
        });
    }
    let mut arg = prob.apply_m_adjoint(y_prev)?;
    arg.axpy(1.0, prob.c());
    arg.scale(-alpha);
    arg.axpy(1.0, x_prev);
    Ok(arg)
}

/// `proj_psd(X - alpha (M^*(y) + C))`.
pub fn primal_step(prob: &SdpProblem, x_prev: &SymMatrix, y_prev: &[f64], alpha: f64) -> Result<SymMatrix> {
    symmat::proj_psd(&primal_argument(prob, x_prev, y_prev, alpha)?)
}

/// Extrapolated dual ascent followed by the conjugate-box resolvent.
pub fn dual_step(
    prob: &SdpProblem,
    y_prev: &[f64],
    x_new: &SymMatrix,
    x_prev: &SymMatrix,
    alpha: f64,
) -> Result<Vec<f64>> {
    check_step(alpha)?;
    let mut extrapolated = x_new.clone();
    extrapolated.scale(2.0);
    extrapolated.axpy(-1.0, x_prev);
    let m_ext = prob.apply_m(&extrapolated)?;
    if y_prev.len() != m_ext.len() {
        return Err(SdpError::DimensionMismatch {
            expected: m_ext.len(),
            got: y_prev.len(),
        });
    }
    let half: Vec<f64> = y_prev.iter().zip(&m_ext).map(|(y, v)| y + alpha * v).collect();
    dual_resolvent(&half, alpha, prob.b(), prob.h())
}

/// Fixed-point residuals between the two iterates held by `state`.
pub fn residuals(state: &IterateState, alpha: f64, prob: &SdpProblem) -> Residuals {
    let mut dx = state.x_cur.clone();
    dx.axpy(-1.0, &state.x_prev);
    let dy: Vec<f64> = state.y_cur.iter().zip(&state.y_prev).map(|(a, b)| a - b).collect();

    let mut prim = vec![0.0; packed_len(prob.n())];
    prob.apply_m_adjoint_packed(&dy, &mut prim);
    prim.iter_mut().zip(dx.packed()).for_each(|(p, d)| *p = d / alpha - *p);

    let mut dual = vec![0.0; dy.len()];
    prob.apply_m_packed(dx.packed(), &mut dual);
    dual.iter_mut().zip(&dy).for_each(|(v, d)| *v = d / alpha - *v);

    let (primal, dual) = (norm2(&prim), norm2(&dual));
    Residuals {
        primal,
        dual,
        comb: primal + dual,
    }
}

/// Step size from the config: explicit override or `alpha_safety / ||M||`.
pub(crate) fn step_size(prob: &SdpProblem, config: &SolverConfig) -> Result<f64> {
    match config.step_size {
        Some(a) => Ok(a),
        None => Ok(config.alpha_safety / estimate_operator_norm(prob, config.seed)?),
    }
}

/// Outcome of one engine step.
pub(crate) enum StepOutcome {
    Advanced { residuals: Residuals, lambda_r: Option<f64> },
    NonFinite,
}

/// Iteration engine shared by the exact and the low-rank solver. Caches
/// `M(X)` and `M^*(y)` of the current iterate so each step costs one forward
/// and one adjoint application besides the projection.
pub(crate) struct Engine<'p> {
    pub prob: &'p SdpProblem,
    pub alpha: f64,
    pub state: IterateState,
    mx: Vec<f64>,
    aty: Vec<f64>,
}

impl<'p> Engine<'p> {
    pub fn new(prob: &'p SdpProblem, alpha: f64, history_capacity: usize) -> Self {
        let rows = prob.m() + prob.p();
        Engine {
            prob,
            alpha,
            state: IterateState::zeros(prob, history_capacity),
            mx: vec![0.0; rows],
            aty: vec![0.0; packed_len(prob.n())],
        }
    }

    /// Runs one iteration. `project` maps the primal argument to the new
    /// iterate and optionally reports `lambda_r`.
    pub fn step<F>(&mut self, mut project: F) -> Result<StepOutcome>
    where
        F: FnMut(&SymMatrix) -> Result<(SymMatrix, Option<f64>)>,
    {
        let prob = self.prob;
        let alpha = self.alpha;
        let n = prob.n();

        let mut arg = self.state.x_cur.packed().to_vec();
        for ((a, &g), &c) in arg.iter_mut().zip(&self.aty).zip(prob.c().packed()) {
            *a -= alpha * (g + c);
        }
        if arg.iter().any(|v| !v.is_finite()) {
            return Ok(StepOutcome::NonFinite);
        }
        let arg = SymMatrix::from_packed(n, arg)?;
        let (x_new, lambda_r) = project(&arg)?;

        let mut mx_new = vec![0.0; self.mx.len()];
        prob.apply_m_packed(x_new.packed(), &mut mx_new);

        let y = &self.state.y_cur;
        let mut y_new: Vec<f64> = y
            .iter()
            .zip(&mx_new)
            .zip(&self.mx)
            .map(|((yi, a), b)| yi + alpha * (2.0 * a - b))
            .collect();
        let mut scaled: Vec<f64> = y_new.iter().map(|v| v / alpha).collect();
        proj_box_in_place(&mut scaled, prob.b(), prob.h())?;
        y_new.iter_mut().zip(&scaled).for_each(|(v, p)| *v -= alpha * p);

        if !x_new.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            return Ok(StepOutcome::NonFinite);
        }

        let mut aty_new = vec![0.0; self.aty.len()];
        prob.apply_m_adjoint_packed(&y_new, &mut aty_new);

        let primal = x_new
            .packed()
            .iter()
            .zip(self.state.x_cur.packed())
            .zip(aty_new.iter().zip(&self.aty))
            .map(|((xn, xo), (an, ao))| {
                let v = (xn - xo) / alpha - (an - ao);
                v * v
            })
            .sum::<f64>()
            .sqrt();
        let dual = y_new
            .iter()
            .zip(y)
            .zip(mx_new.iter().zip(&self.mx))
            .map(|((yn, yo), (mn, mo))| {
                let v = (yn - yo) / alpha - (mn - mo);
                v * v
            })
            .sum::<f64>()
            .sqrt();
        let residuals = Residuals {
            primal,
            dual,
            comb: primal + dual,
        };
        if !residuals.comb.is_finite() {
            return Ok(StepOutcome::NonFinite);
        }

        self.state.advance(x_new, y_new);
        self.state.push_residuals(residuals);
        self.mx = mx_new;
        self.aty = aty_new;
        Ok(StepOutcome::Advanced { residuals, lambda_r })
    }

    pub fn objective(&self) -> f64 {
        self.prob.c().dot(&self.state.x_cur)
    }

    pub fn dual_objective(&self) -> f64 {
        let m = self.prob.m();
        let y = &self.state.y_cur;
        -(dot(self.prob.b(), &y[..m]) + dot(self.prob.h(), &y[m..]))
    }

    /// Absolute threshold for `eps_comb` given the first-iteration residual.
    pub fn threshold(config: &SolverConfig, first: f64) -> f64 {
        match config.termination {
            Termination::Relative => config.eps_tol * (1.0 + first),
            Termination::Absolute => config.eps_tol,
        }
    }

    pub fn into_result(
        self,
        status: SolveStatus,
        threshold: f64,
        rank_path: Vec<(usize, usize)>,
        checkpoints: Vec<Checkpoint>,
        started: Instant,
    ) -> SolveResult {
        let primal_objective = self.objective();
        let dual_objective = self.dual_objective();
        let final_residuals = self.state.residual_history.back().copied().unwrap_or_default();
        SolveResult {
            status,
            primal_objective,
            dual_objective,
            final_residuals,
            threshold,
            iterations: self.state.k,
            alpha: self.alpha,
            rank_path,
            checkpoints,
            wall_time_s: started.elapsed().as_secs_f64(),
            x: self.state.x_cur,
            y: self.state.y_cur,
        }
    }
}

pub fn solve_pd_sdp(prob: &SdpProblem, config: &SolverConfig) -> Result<SolveResult> {
    solve_pd_sdp_with(prob, config, &mut |_| {})
}

/// Exact solver with a progress callback invoked every `config.log_every`
/// iterations and on termination.
pub fn solve_pd_sdp_with(
    prob: &SdpProblem,
    config: &SolverConfig,
    progress: &mut dyn FnMut(&Progress),
) -> Result<SolveResult> {
    config.validate()?;
    prob.validate()?;
    let started = Instant::now();
    let alpha = step_size(prob, config)?;
    let n = prob.n();
    let mut engine = Engine::new(prob, alpha, 2);
    let mut threshold = f64::INFINITY;

    let status = loop {
        if engine.state.k >= config.max_iter {
            break SolveStatus::MaxIterations;
        }
        if started.elapsed().as_secs_f64() >= config.time_limit_s {
            break SolveStatus::TimeLimit;
        }
        let residuals = match engine.step(|arg| Ok((symmat::proj_psd(arg)?, None)))? {
            StepOutcome::Advanced { residuals, .. } => residuals,
            StepOutcome::NonFinite => break SolveStatus::Diverged,
        };
        let k = engine.state.k;
        if k == 1 {
            threshold = Engine::threshold(config, residuals.comb);
        }
        let done = residuals.comb <= threshold;
        if done || (config.log_every > 0 && k % config.log_every == 0) {
            progress(&Progress {
                iteration: k,
                residuals,
                target_rank: n,
                objective: engine.objective(),
                certificate: None,
            });
        }
        if done {
            break SolveStatus::Optimal;
        }
    };
    Ok(engine.into_result(status, threshold, vec![(0, n)], Vec::new(), started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::SparseRow;

    fn trace_problem() -> SdpProblem {
        let a = SparseRow::from_sym(&SymMatrix::identity(2));
        SdpProblem::new("trace", SymMatrix::identity(2), vec![a], vec![1.0], vec![], vec![]).unwrap()
    }

    #[test]
    fn proj_box_examples() {
        assert_eq!(proj_box(&[4.0, 2.0], &[1.0], &[0.0]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(proj_box(&[1.0, -3.0], &[1.0], &[0.0]).unwrap(), vec![1.0, -3.0]);
        assert_eq!(proj_box(&[7.0, 8.0], &[1.0, 2.0], &[]).unwrap(), vec![1.0, 2.0]);
        assert!(proj_box(&[1.0], &[1.0], &[0.0]).is_err());
    }

    #[test]
    fn dual_resolvent_examples() {
        assert_eq!(dual_resolvent(&[4.0], 1.0, &[1.0], &[]).unwrap(), vec![3.0]);
        assert_eq!(dual_resolvent(&[4.0], 2.0, &[1.0], &[]).unwrap(), vec![2.0]);
        assert!(matches!(
            dual_resolvent(&[4.0], 0.0, &[1.0], &[]),
            Err(SdpError::NonPositiveStep(_))
        ));
    }

    #[test]
    fn primal_step_examples() {
        let prob = trace_problem();
        let x = SymMatrix::from_diagonal(&[0.3, 0.7]);
        let zero_c = SdpProblem::new("z", SymMatrix::zeros(2), prob.a().to_vec(), vec![1.0], vec![], vec![])
            .unwrap();
        let out = primal_step(&zero_c, &x, &[0.0], 0.5).unwrap();
        let mut d = out.clone();
        d.axpy(-1.0, &x);
        assert!(d.frobenius_norm() < 1e-9);

        let mut neg = SymMatrix::identity(2);
        neg.scale(-1.0);
        let p = SdpProblem::new("n", neg, prob.a().to_vec(), vec![1.0], vec![], vec![]).unwrap();
        let out = primal_step(&p, &SymMatrix::zeros(2), &[0.0], 1.0).unwrap();
        let mut d = out;
        d.axpy(-1.0, &SymMatrix::identity(2));
        assert!(d.frobenius_norm() < 1e-12);
    }

    #[test]
    fn dual_step_fixed_point() {
        let prob = trace_problem();
        let x = SymMatrix::from_diagonal(&[0.5, 0.5]);
        let y = dual_step(&prob, &[-1.0], &x, &x, 0.7).unwrap();
        assert!((y[0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn dual_step_zero() {
        let a = SparseRow::from_sym(&SymMatrix::identity(2));
        let prob = SdpProblem::new("z", SymMatrix::zeros(2), vec![a], vec![0.0], vec![], vec![]).unwrap();
        let z = SymMatrix::zeros(2);
        assert_eq!(dual_step(&prob, &[0.0], &z, &z, 0.5).unwrap(), vec![0.0]);
    }

    #[test]
    fn residuals_examples() {
        let prob = trace_problem();
        let mut state = IterateState::zeros(&prob, 2);
        assert_eq!(residuals(&state, 0.5, &prob), Residuals::default());

        let d = SymMatrix::from_diagonal(&[1.0, 2.0]);
        state.advance(d.clone(), vec![0.0]);
        let r = residuals(&state, 0.5, &prob);
        assert!((r.primal - d.frobenius_norm() / 0.5).abs() < 1e-12);
        assert!((r.dual - 3.0).abs() < 1e-12);
        assert!((r.comb - r.primal - r.dual).abs() < 1e-15);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            alpha_safety: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            eps_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            window_ell: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn trace_pinned_solves() {
        let res = solve_pd_sdp(&trace_problem(), &SolverConfig::default()).unwrap();
        assert_eq!(res.status, SolveStatus::Optimal);
        assert!((res.primal_objective - 1.0).abs() <= 2e-3);
        assert!(res.final_residuals.comb <= res.threshold);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let cfg = SolverConfig {
            max_iter: 1,
            ..Default::default()
        };
        let res = solve_pd_sdp(&trace_problem(), &cfg).unwrap();
        assert_eq!(res.iterations, 1);
    }
}
