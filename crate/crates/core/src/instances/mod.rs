//! Seeded generators for the benchmark families, solution extractors and
//! exhaustive oracles for small instances.

mod equipartition;
mod mimo;
mod sensor;

pub use equipartition::{brute_force_equipartition, gen_equipartition, Graph};
pub use mimo::{brute_force_mimo, extract_mimo_signal, gen_mimo, mimo_ground_truth, MimoInstance};
pub use sensor::{
    extract_positions, gen_sensor_localization, gen_sensor_localization_with, sensor_ground_truth,
    SensorObjective, SensorScene,
};

use crate::problem::{SdpProblem, SparseRow};
use crate::symmat::SymMatrix;

/// `min tr(X)` s.t. `tr(X) = 1` on 2x2 matrices; optimal value 1.
pub fn toy_trace() -> SdpProblem {
    let a = SparseRow::from_sym(&SymMatrix::identity(2));
    SdpProblem::new("trace2", SymMatrix::identity(2), vec![a], vec![1.0], vec![], vec![])
        .expect("valid toy")
}

/// Two vertices joined by a unit edge; the feasible set is a single point and
/// the optimal value is -1.
pub fn toy_equipartition() -> SdpProblem {
    let graph = Graph::new(2, vec![(0, 1, 1.0)]).expect("valid graph");
    gen_equipartition(&graph)
        .expect("valid toy")
        .with_name("equipartition2")
}

/// Zero-noise MIMO detection with four symbols; optimal value 0.
pub fn toy_mimo() -> SdpProblem {
    gen_mimo(&MimoInstance::random(4, 0.0, 1))
        .expect("valid toy")
        .with_name("mimo4")
}

/// The three toy problems used for smoke tests and benchmarks.
pub fn toy_suite() -> Vec<SdpProblem> {
    vec![toy_trace(), toy_equipartition(), toy_mimo()]
}

/// Looks up a toy problem by name.
pub fn toy_by_name(name: &str) -> Option<SdpProblem> {
    toy_suite().into_iter().find(|p| p.name() == name)
}
