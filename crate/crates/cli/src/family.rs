use anyhow::{bail, Context};
use clap::{Subcommand, ValueEnum};
use pdsdp_core::instances::{
    brute_force_equipartition, gen_equipartition, gen_mimo, gen_sensor_localization_with, toy_by_name, Graph,
    MimoInstance, SensorObjective, SensorScene,
};
use pdsdp_core::io::GroundTruth;
use pdsdp_core::SdpProblem;
use serde::Deserialize;

/// Largest graph for which `gen` records the exact optimal partition.
const ORACLE_MAX_N: usize = 14;

#[derive(Debug, Clone, Copy, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveArg {
    #[default]
    Feasibility,
    MinTraceY,
}

impl From<ObjectiveArg> for SensorObjective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Feasibility => SensorObjective::Feasibility,
            ObjectiveArg::MinTraceY => SensorObjective::MinTraceY,
        }
    }
}

fn half() -> f64 {
    0.5
}

/// An instance family with its parameters. Used as `gen` subcommands and as
/// `generate` tables in bench manifests.
#[derive(Debug, Clone, Subcommand, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Balanced bisection of an Erdos-Renyi graph.
    Equipartition {
        #[arg(long)]
        n: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.5)]
        #[serde(default = "half")]
        prob: f64,
        #[arg(long, default_value_t = 0)]
        #[serde(default)]
        seed: u64,
    },
    /// Binary MIMO detection over a Gaussian channel.
    Mimo {
        #[arg(long)]
        n: usize,
        /// Noise standard deviation.
        #[arg(long, default_value_t = 0.0)]
        #[serde(default)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        #[serde(default)]
        seed: u64,
    },
    /// Planar sensor network localization.
    Sensor {
        #[arg(long)]
        sensors: usize,
        #[arg(long)]
        anchors: usize,
        /// Multiplicative distance noise.
        #[arg(long, default_value_t = 0.0)]
        #[serde(default)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        #[serde(default)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Feasibility)]
        #[serde(default)]
        objective: ObjectiveArg,
    },
    /// One of the built-in toy problems: trace2, equipartition2, mimo4.
    Toy { name: String },
}

impl Family {
    /// File stem used when no output path is given.
    pub fn default_stem(&self) -> String {
        match self {
            Family::Equipartition { n, prob, seed } => format!("equipartition_n{n}_p{prob}_s{seed}"),
            Family::Mimo { n, sigma, seed } => format!("mimo_n{n}_sigma{sigma}_s{seed}"),
            Family::Sensor {
                sensors, anchors, seed, ..
            } => format!("sensor_{sensors}x{anchors}_s{seed}"),
            Family::Toy { name } => name.clone(),
        }
    }

    /// Builds the problem and, except for toys, its ground truth.
    pub fn generate(&self) -> anyhow::Result<(SdpProblem, Option<GroundTruth>)> {
        match *self {
            Family::Equipartition { n, prob, seed } => {
                let graph = Graph::erdos_renyi(n, prob, seed)?;
                let problem = gen_equipartition(&graph)?;
                let (partition, optimum) = if n <= ORACLE_MAX_N {
                    brute_force_equipartition(&graph).ok().unzip()
                } else {
                    (None, None)
                };
                let truth = GroundTruth::Equipartition {
                    seed,
                    n,
                    prob,
                    edges: graph.edges,
                    partition,
                    optimum,
                };
                Ok((problem, Some(truth)))
            }
            Family::Mimo { n, sigma, seed } => {
                if n == 0 {
                    bail!("MIMO size must be positive");
                }
                if !(sigma >= 0.0 && sigma.is_finite()) {
                    bail!("noise level must be finite and non-negative, got {sigma}");
                }
                let inst = MimoInstance::random(n, sigma, seed);
                let problem = gen_mimo(&inst)?;
                let truth = GroundTruth::Mimo {
                    seed,
                    n,
                    sigma,
                    h: inst.h,
                    y_obs: inst.y_obs,
                    x_true: inst.x_true,
                };
                Ok((problem, Some(truth)))
            }
            Family::Sensor {
                sensors,
                anchors,
                noise,
                seed,
                objective,
            } => {
                let scene = SensorScene::random(sensors, anchors, noise, seed)?;
                let problem = gen_sensor_localization_with(&scene, objective.into())?;
                let truth = GroundTruth::Sensor {
                    seed,
                    noise,
                    objective: objective.into(),
                    scene,
                };
                Ok((problem, Some(truth)))
            }
            Family::Toy { ref name } => {
                let problem = toy_by_name(name).with_context(|| format!("unknown toy problem '{name}'"))?;
                Ok((problem, None))
            }
        }
    }
}
