use serde::{Deserialize, Serialize};

use crate::error::{Result, SdpError};
use crate::instances::{SensorObjective, SensorScene};

/// Ground truth and generation parameters written next to a generated problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroundTruth {
    Equipartition {
        seed: u64,
        n: usize,
        prob: f64,
        edges: Vec<(usize, usize, f64)>,
        /// Optimal balanced partition, when the exhaustive oracle applies.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        partition: Option<Vec<i8>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        optimum: Option<f64>,
    },
    Mimo {
        seed: u64,
        n: usize,
        sigma: f64,
        /// Row-major channel matrix.
        h: Vec<f64>,
        y_obs: Vec<f64>,
        x_true: Vec<i8>,
    },
    Sensor {
        seed: u64,
        noise: f64,
        objective: SensorObjective,
        scene: SensorScene,
    },
}

pub fn write_sidecar(truth: &GroundTruth) -> Result<String> {
    Ok(serde_json::to_string_pretty(truth)?)
}

pub fn parse_sidecar(text: &str) -> Result<GroundTruth> {
    serde_json::from_str(text).map_err(|e| SdpError::parse(e.line(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let truth = GroundTruth::Mimo {
            seed: 7,
            n: 1,
            sigma: 0.0,
            h: vec![0.5],
            y_obs: vec![0.5],
            x_true: vec![1],
        };
        let text = write_sidecar(&truth).unwrap();
        assert!(text.contains("\"family\": \"mimo\""));
        assert_eq!(parse_sidecar(&text).unwrap(), truth);
    }
}
