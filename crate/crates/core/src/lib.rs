//! First-order semidefinite programming.
//!
//! Problems are taken in the general form
//!
//! ```text
//! minimize    tr(C X)
//! subject to  A(X) = b,  G(X) <= h,  X PSD
//! ```
//!
//! and solved with a primal-dual hybrid gradient iteration ([`solve_pd_sdp`])
//! or its low-rank variant ([`solve_lr_pd_sdp`]), which replaces the exact PSD
//! projection by a truncated one and grows the target rank on demand.

pub mod error;
pub mod instances;
pub mod io;
pub mod lowrank;
pub mod pdhg;
pub mod problem;
pub mod symmat;

use std::num::NonZeroUsize;
use std::sync::OnceLock;

pub use faer;

pub use error::{Result, SdpError};
pub use lowrank::{solve_lr_pd_sdp, solve_lr_pd_sdp_with, RankController};
pub use pdhg::{
    solve_pd_sdp, solve_pd_sdp_with, CertificateEigenvalue, Progress, SolveResult, SolveStatus,
    SolverConfig, Termination,
};
pub use problem::{check_solution, SdpProblem, SolutionReport, SparseRow};
pub use symmat::{EigenDecomposition, SymMatrix};

/// Environment variable holding the thread count for dense linear algebra.
/// Unset, empty or `1` means sequential kernels.
pub const THREADS_ENV: &str = "PDSDP_NUM_THREADS";

/// Parallelism used by the dense eigensolver and matrix products.
pub fn linalg_parallelism() -> faer::Par {
    static PAR: OnceLock<faer::Par> = OnceLock::new();
    *PAR.get_or_init(|| {
        match std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(t) if t > 1 => faer::Par::Rayon(NonZeroUsize::new(t).unwrap()),
            _ => faer::Par::Seq,
        }
    })
}
