use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::Args;
use pdsdp_core::instances::{mimo_ground_truth, sensor_ground_truth};
use pdsdp_core::io::{parse_sidecar, parse_solution, GroundTruth};
use pdsdp_core::{check_solution, SdpProblem, SymMatrix};

use crate::{read_problem, FormatArg, EXIT_OPTIMAL, EXIT_VIOLATION};

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Problem file.
    problem: PathBuf,
    /// Solution document written by `solve`, or a ground-truth sidecar
    /// written by `gen`.
    solution: PathBuf,
    /// Largest accepted scaled violation: equality violation over
    /// `1 + ||b||`, inequality violation over `1 + ||h||`, negative
    /// eigenvalue over `1 + ||X||_F`.
    #[arg(long, default_value_t = 1e-2)]
    tol: f64,
    /// Problem format [default: from the extension].
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

/// Lifted primal matrix of a generator's ground truth. The multipliers are zero.
fn lift(truth: &GroundTruth, prob: &SdpProblem) -> anyhow::Result<(SymMatrix, Vec<f64>)> {
    let x = match truth {
        GroundTruth::Mimo { x_true, .. } => mimo_ground_truth(x_true),
        GroundTruth::Sensor { scene, .. } => sensor_ground_truth(scene),
        GroundTruth::Equipartition { partition, .. } => {
            let Some(v) = partition else {
                bail!("sidecar records no optimal partition");
            };
            let mut x = SymMatrix::zeros(v.len());
            for j in 0..v.len() {
                for i in j..v.len() {
                    x.set(i, j, f64::from(v[i] * v[j]));
                }
            }
            x
        }
    };
    Ok((x, vec![0.0; prob.m() + prob.p()]))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn run(args: &CheckArgs) -> anyhow::Result<u8> {
    let prob = read_problem(&args.problem, args.format)?;
    let text = std::fs::read_to_string(&args.solution)
        .with_context(|| format!("cannot read {}", args.solution.display()))?;
    let (x, y) = match parse_solution(&text) {
        Ok(doc) => (doc.x_matrix()?, doc.y_vector()),
        Err(sol_err) => match parse_sidecar(&text) {
            Ok(truth) => lift(&truth, &prob)?,
            Err(_) => {
                return Err(sol_err)
                    .with_context(|| format!("{} is neither a solution nor a sidecar", args.solution.display()))
            }
        },
    };
    if x.n() != prob.n() {
        bail!("solution has order {} but the problem has order {}", x.n(), prob.n());
    }
    let report = check_solution(&prob, &x, &y, args.tol)?;
    let rel_eq = report.equality_violation / (1.0 + norm(prob.b()));
    let rel_ineq = report.inequality_violation / (1.0 + norm(prob.h()));
    let rel_psd = (-report.min_eigenvalue).max(0.0) / (1.0 + x.frobenius_norm());
    let feasible = rel_eq <= args.tol && rel_ineq <= args.tol && rel_psd <= args.tol;
    println!("primal objective      {:.10e}", report.primal_objective);
    println!("dual objective        {:.10e}", report.dual_objective);
    println!("duality gap           {:.3e}", report.duality_gap);
    println!("equality violation    {:.3e}  (scaled {rel_eq:.3e})", report.equality_violation);
    println!("inequality violation  {:.3e}  (scaled {rel_ineq:.3e})", report.inequality_violation);
    println!("min eigenvalue        {:.3e}  (scaled defect {rel_psd:.3e})", report.min_eigenvalue);
    println!("complementarity       {:.3e}", report.complementarity);
    println!("tolerance             {:.3e}", args.tol);
    println!("verdict               {}", if feasible { "feasible" } else { "violated" });
    Ok(if feasible { EXIT_OPTIMAL } else { EXIT_VIOLATION })
}
