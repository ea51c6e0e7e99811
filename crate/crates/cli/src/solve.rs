use std::path::PathBuf;

use clap::Args;
use pdsdp_core::io::write_solution;
use pdsdp_core::{
    check_solution, solve_lr_pd_sdp_with, solve_pd_sdp_with, Progress, SdpProblem, SolveResult, SolveStatus,
    SolverConfig,
};

use crate::{read_problem, write_file, Algorithm, FormatArg, SolverArgs};
use crate::{EXIT_DIVERGED, EXIT_LIMIT, EXIT_OPTIMAL};

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem file (`.dat-s` SDPA sparse or JSON).
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Lr)]
    algo: Algorithm,
    /// Input format [default: from the extension].
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Solution document [default: input with a `.sol` extension].
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

pub fn exit_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Optimal => EXIT_OPTIMAL,
        SolveStatus::MaxIterations | SolveStatus::TimeLimit => EXIT_LIMIT,
        SolveStatus::Diverged => EXIT_DIVERGED,
    }
}

/// Runs one solver, logging progress lines at info level.
pub fn solve(prob: &SdpProblem, algo: Algorithm, config: &SolverConfig) -> pdsdp_core::Result<SolveResult> {
    let sign = prob.objective_sign();
    let mut log_progress = |p: &Progress| {
        log::info!(
            "k {:>7}  primal {:.3e}  dual {:.3e}  comb {:.3e}  rank {:>4}  obj {:.6e}",
            p.iteration,
            p.residuals.primal,
            p.residuals.dual,
            p.residuals.comb,
            p.target_rank,
            sign * p.objective
        );
    };
    match algo {
        Algorithm::Pd => solve_pd_sdp_with(prob, config, &mut log_progress),
        Algorithm::Lr => solve_lr_pd_sdp_with(prob, config, &mut log_progress),
    }
}

pub fn run(args: &SolveArgs) -> anyhow::Result<u8> {
    let prob = read_problem(&args.input, args.format)?;
    let config = args.solver.apply(SolverConfig::default());
    log::info!(
        "{}: n = {}, {} equalities, {} inequalities, algorithm {}",
        prob.name(),
        prob.n(),
        prob.m(),
        prob.p(),
        args.algo.as_str()
    );
    let result = solve(&prob, args.algo, &config)?;
    let report = check_solution(&prob, &result.x, &result.y, config.eps_tol)?;
    let output = args.output.clone().unwrap_or_else(|| args.input.with_extension("sol"));
    write_file(&output, &write_solution(&result, &report)?)?;

    println!("status       {}", result.status);
    println!("objective    {:.10e}", report.primal_objective);
    println!("dual         {:.10e}", report.dual_objective);
    println!("iterations   {}", result.iterations);
    println!("final rank   {}", result.final_rank());
    println!("wall time    {:.3} s", result.wall_time_s);
    println!("solution     {}", output.display());
    Ok(exit_code(result.status))
}
