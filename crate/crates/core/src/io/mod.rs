//! Problem and solution documents.
//!
//! Two problem formats are read: SDPA sparse text (`.dat-s`), whose blocks are
//! embedded block-diagonally into one matrix, and a JSON document that also
//! carries inequality constraints. Both use unscaled matrix entries; the
//! packed `sqrt(2)` scaling never leaves the process. Solutions and generator
//! ground truth are JSON as well.

mod extended;
mod sdpa;
mod sidecar;
mod solution;

use std::path::Path;

pub use extended::{parse_extended, write_extended};
pub use sdpa::{parse_sdpa, write_sdpa, SdpaEntry, SdpaFile};
pub use sidecar::{parse_sidecar, write_sidecar, GroundTruth};
pub use solution::{
    parse_solution, write_solution, CheckpointSummary, Real, ResidualSummary, SolutionDocument,
};

use crate::error::Result;
use crate::problem::SdpProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemFormat {
    Sdpa,
    Extended,
}

impl ProblemFormat {
    /// `.dat-s` and `.dat` are SDPA; everything else is the JSON document.
    pub fn from_path(path: &Path) -> Self {
        let name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
        if name.ends_with(".dat-s") || name.ends_with(".dat") {
            ProblemFormat::Sdpa
        } else {
            ProblemFormat::Extended
        }
    }
}

impl std::str::FromStr for ProblemFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sdpa" | "dat-s" => Ok(ProblemFormat::Sdpa),
            "extended" | "json" => Ok(ProblemFormat::Extended),
            _ => Err(format!("unknown format '{s}' (expected sdpa or extended)")),
        }
    }
}

/// Parses `text` in the given format. SDPA problems take `name`; JSON
/// documents keep their own name when they have one.
pub fn parse_problem(text: &str, format: ProblemFormat, name: &str) -> Result<SdpProblem> {
    match format {
        ProblemFormat::Sdpa => SdpaFile::parse(text)?.to_problem(name),
        ProblemFormat::Extended => parse_extended(text),
    }
}
