//! Low-rank primal-dual iteration.
//!
//! The exact PSD projection is replaced by the positive part of the `r`
//! leading eigenpairs. The inner loop runs until the combined residual reaches
//! the tolerance or stops improving over a window of `ell` iterations. After
//! inner convergence the pair is saved as a checkpoint and the target rank is
//! accepted once `(n - r) max(lambda, 0) <= eps_lambda`, where `lambda` is the
//! largest discarded eigenvalue by default (see [`CertificateEigenvalue`]);
//! otherwise, and after a stall, the target rank doubles. Iterates carry over
//! between ranks.

use std::collections::VecDeque;
use std::time::Instant;

use crate::error::{Result, SdpError};
use crate::pdhg::{
    primal_argument, step_size, CertificateEigenvalue, Checkpoint, Engine, Progress, SolveResult,
    SolveStatus, SolverConfig, StepOutcome,
};
use crate::problem::SdpProblem;
use crate::symmat::{approx_error_bound, aproj_psd, aproj_psd_detailed_with, SymMatrix, TruncatedEigenSolver};

/// Target rank, stall window and saved feasible pairs.
#[derive(Debug, Clone)]
pub struct RankController {
    pub r: usize,
    pub ell: usize,
    history: VecDeque<f64>,
    pub checkpoints: Vec<Checkpoint>,
    /// Eigenvalue fed to the most recent certificate.
    pub last_lambda_r: Option<f64>,
}

impl RankController {
    pub fn new(initial_rank: usize, ell: usize, n: usize) -> Self {
        RankController {
            r: initial_rank.clamp(1, n.max(1)),
            ell,
            history: VecDeque::with_capacity(ell + 1),
            checkpoints: Vec::new(),
            last_lambda_r: None,
        }
    }

    /// Appends a combined residual, keeping the last `ell + 1` values.
    pub fn push(&mut self, eps_comb: f64) {
        if self.history.len() == self.ell + 1 {
            self.history.pop_front();
        }
        self.history.push_back(eps_comb);
    }

    pub fn history(&self) -> &VecDeque<f64> {
        &self.history
    }

    pub fn clear_history(&mut self) {
        self.history.clear();
    }

    pub fn stalled(&self) -> bool {
        stall_detected(&self.history, self.ell)
    }
}

/// True when the newest residual is no better than the one `ell` iterations
/// earlier. Needs at least `ell + 1` entries.
pub fn stall_detected(history: &VecDeque<f64>, ell: usize) -> bool {
    let len = history.len();
    if len < ell + 1 {
        return false;
    }
    history[len - 1] >= history[len - 1 - ell]
}

/// Doubles the target rank (capped at `n`) and starts a fresh window.
pub fn update_rank(controller: &mut RankController, n: usize) -> usize {
    controller.r = (2 * controller.r).min(n);
    controller.clear_history();
    controller.r
}

pub fn rank_certificate_satisfied(n: usize, r: usize, lambda_r: f64, eps_lambda: f64) -> bool {
    approx_error_bound(n, r, lambda_r) <= eps_lambda
}

/// Truncated-projection primal step; returns the new iterate and `lambda_r`.
pub fn approximate_primal_step(
    prob: &SdpProblem,
    x_prev: &SymMatrix,
    y_prev: &[f64],
    alpha: f64,
    r: usize,
) -> Result<(SymMatrix, f64)> {
    if r == 0 || r > prob.n() {
        return Err(SdpError::RankOutOfRange { rank: r, n: prob.n() });
    }
    aproj_psd(&primal_argument(prob, x_prev, y_prev, alpha)?, r)
}

pub fn solve_lr_pd_sdp(prob: &SdpProblem, config: &SolverConfig) -> Result<SolveResult> {
    solve_lr_pd_sdp_with(prob, config, &mut |_| {})
}

pub fn solve_lr_pd_sdp_with(
    prob: &SdpProblem,
    config: &SolverConfig,
    progress: &mut dyn FnMut(&Progress),
) -> Result<SolveResult> {
    config.validate()?;
    prob.validate()?;
    let started = Instant::now();
    let n = prob.n();
    let eps_lambda = config.eps_lambda_for(n);
    let alpha = step_size(prob, config)?;
    let mut engine = Engine::new(prob, alpha, 2);
    let mut ctl = RankController::new(config.initial_rank, config.window_ell, n);
    let mut rank_path = vec![(0, ctl.r)];
    let mut threshold = f64::INFINITY;
    let mut eigensolver = TruncatedEigenSolver::new();

    let status = loop {
        if engine.state.k >= config.max_iter {
            break SolveStatus::MaxIterations;
        }
        if started.elapsed().as_secs_f64() >= config.time_limit_s {
            break SolveStatus::TimeLimit;
        }
        let r = ctl.r;
        let which = config.certificate_eigenvalue;
        let outcome = engine.step(|arg| {
            let proj = aproj_psd_detailed_with(&mut eigensolver, arg, r)?;
            let lambda = match which {
                CertificateEigenvalue::LastKept => proj.lambda_r,
                // r = n: nothing is discarded
                CertificateEigenvalue::FirstDiscarded => proj.lambda_next.unwrap_or(f64::NEG_INFINITY),
            };
            Ok((proj.matrix, Some(lambda)))
        })?;
        let (residuals, lambda) = match outcome {
            StepOutcome::Advanced { residuals, lambda_r } => (residuals, lambda_r.unwrap_or(0.0)),
            StepOutcome::NonFinite => break SolveStatus::Diverged,
        };
        let k = engine.state.k;
        if k == 1 {
            threshold = Engine::threshold(config, residuals.comb);
        }
        ctl.last_lambda_r = Some(lambda);
        ctl.push(residuals.comb);

        let converged = residuals.comb <= threshold;
        let certified = rank_certificate_satisfied(n, r, lambda, eps_lambda);
        if converged || (config.log_every > 0 && k % config.log_every == 0) {
            progress(&Progress {
                iteration: k,
                residuals,
                target_rank: r,
                objective: engine.objective(),
                certificate: Some(approx_error_bound(n, r, lambda)),
            });
        }

        if converged {
            ctl.checkpoints.push(Checkpoint {
                rank: r,
                iteration: k,
                x: engine.state.x_cur.clone(),
                y: engine.state.y_cur.clone(),
            });
            if certified {
                break SolveStatus::Optimal;
            }
            update_rank(&mut ctl, n);
            log::debug!("iteration {k}: converged at rank {r}, certificate failed; target rank {}", ctl.r);
            rank_path.push((k, ctl.r));
        } else if ctl.stalled() {
            if r < n {
                update_rank(&mut ctl, n);
                log::debug!("iteration {k}: stalled at rank {r}; target rank {}", ctl.r);
                rank_path.push((k, ctl.r));
            } else {
                // Already exact; keep iterating with a fresh window.
                ctl.clear_history();
            }
        }
    };
    let (krylov, dense) = eigensolver.solve_counts();
    log::debug!("truncated decompositions: {krylov} Krylov, {dense} dense");
    Ok(engine.into_result(status, threshold, rank_path, ctl.checkpoints, started))
}
