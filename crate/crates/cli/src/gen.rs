use std::path::PathBuf;

use clap::Args;
use pdsdp_core::io::{write_extended, write_sdpa, write_sidecar, ProblemFormat};

use crate::family::Family;
use crate::{write_file, FormatArg, EXIT_OPTIMAL};

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Problem file to write [default: derived from the parameters, in the
    /// current directory].
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Output format [default: from the extension].
    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,
    #[command(subcommand)]
    family: Family,
}

/// `out.json` -> `out.truth.json`, `out.dat-s` -> `out.truth.json`.
pub fn sidecar_path(problem: &std::path::Path) -> PathBuf {
    problem.with_extension("truth.json")
}

pub fn run(args: &GenArgs) -> anyhow::Result<u8> {
    let (problem, truth) = args.family.generate()?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.json", args.family.default_stem())));
    let format = args.format.map_or_else(|| ProblemFormat::from_path(&output), Into::into);
    let text = match format {
        ProblemFormat::Sdpa => write_sdpa(&problem)?,
        ProblemFormat::Extended => write_extended(&problem)?,
    };
    write_file(&output, &text)?;
    log::info!(
        "wrote {} (n = {}, {} equalities, {} inequalities)",
        output.display(),
        problem.n(),
        problem.m(),
        problem.p()
    );
    if let Some(truth) = truth {
        let path = sidecar_path(&output);
        write_file(&path, &write_sidecar(&truth)?)?;
        log::info!("wrote {}", path.display());
    }
    Ok(EXIT_OPTIMAL)
}
