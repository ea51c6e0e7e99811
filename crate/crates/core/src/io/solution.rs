use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SdpError};
use crate::pdhg::{Residuals, SolveResult, SolveStatus};
use crate::problem::SolutionReport;
use crate::symmat::SymMatrix;

/// A float that survives JSON even when it is NaN or infinite: finite values
/// are plain numbers (shortest round-trip form), others are the strings
/// `"NaN"`, `"inf"` and `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("NaN")
        } else if v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Real(v)),
            Raw::Str(s) => match s.as_str() {
                "NaN" => Ok(Real(f64::NAN)),
                "inf" => Ok(Real(f64::INFINITY)),
                "-inf" => Ok(Real(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!("invalid number '{s}'"))),
            },
        }
    }
}

fn reals(v: &[f64]) -> Vec<Real> {
    v.iter().copied().map(Real).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointSummary {
    pub rank: usize,
    pub iteration: usize,
    pub trace: Real,
    pub y_norm: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub primal: Real,
    pub dual: Real,
    pub comb: Real,
}

impl From<Residuals> for ResidualSummary {
    fn from(r: Residuals) -> Self {
        ResidualSummary {
            primal: Real(r.primal),
            dual: Real(r.dual),
            comb: Real(r.comb),
        }
    }
}

/// Contents of a `.sol` document. Objectives are in the reported sense, i.e.
/// multiplied by the problem's objective sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub status: SolveStatus,
    pub primal_objective: Real,
    pub dual_objective: Real,
    pub duality_gap: Real,
    pub abs_gap: Real,
    pub equality_violation: Real,
    pub inequality_violation: Real,
    pub min_eigenvalue: Real,
    pub complementarity: Real,
    pub iterations: usize,
    pub wall_time_s: f64,
    pub alpha: Real,
    pub threshold: Real,
    pub final_residuals: ResidualSummary,
    /// `[iteration, target rank]` pairs.
    pub rank_path: Vec<(usize, usize)>,
    pub n: usize,
    /// Dense, row-major.
    pub x: Vec<Vec<Real>>,
    pub y: Vec<Real>,
    pub checkpoints: Vec<CheckpointSummary>,
}

impl SolutionDocument {
    pub fn new(result: &SolveResult, report: &SolutionReport) -> Self {
        let n = result.x.n();
        let dense = result.x.to_dense();
        SolutionDocument {
            status: result.status,
            primal_objective: Real(report.primal_objective),
            dual_objective: Real(report.dual_objective),
            duality_gap: Real(report.duality_gap),
            abs_gap: Real(report.duality_gap.abs()),
            equality_violation: Real(report.equality_violation),
            inequality_violation: Real(report.inequality_violation),
            min_eigenvalue: Real(report.min_eigenvalue),
            complementarity: Real(report.complementarity),
            iterations: result.iterations,
            wall_time_s: result.wall_time_s,
            alpha: Real(result.alpha),
            threshold: Real(result.threshold),
            final_residuals: result.final_residuals.into(),
            rank_path: result.rank_path.clone(),
            n,
            x: dense.chunks(n.max(1)).take(n).map(reals).collect(),
            y: reals(&result.y),
            checkpoints: result
                .checkpoints
                .iter()
                .map(|c| CheckpointSummary {
                    rank: c.rank,
                    iteration: c.iteration,
                    trace: Real(c.x.trace()),
                    y_norm: Real(c.y.iter().map(|v| v * v).sum::<f64>().sqrt()),
                })
                .collect(),
        }
    }

    /// The stored primal matrix.
    pub fn x_matrix(&self) -> Result<SymMatrix> {
        if self.x.len() != self.n || self.x.iter().any(|r| r.len() != self.n) {
            return Err(SdpError::DimensionMismatch {
                expected: self.n,
                got: self.x.len(),
            });
        }
        let rows: Vec<f64> = self.x.iter().flatten().map(|r| r.0).collect();
        SymMatrix::from_dense(self.n, &rows)
    }

    pub fn y_vector(&self) -> Vec<f64> {
        self.y.iter().map(|r| r.0).collect()
    }
}

pub fn write_solution(result: &SolveResult, report: &SolutionReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(&SolutionDocument::new(result, report))?)
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument> {
    serde_json::from_str(text).map_err(|e| SdpError::parse(e.line(), e.to_string()))
}
