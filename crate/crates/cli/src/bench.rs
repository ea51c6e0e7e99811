//! Benchmark manifests and result tables.
//!
//! A manifest is TOML:
//!
//! ```toml
//! algorithms = ["pd", "lr"]          # default for every instance
//!
//! [solver]                           # optional overrides
//! eps_tol = 1e-3
//! time_limit_s = 300
//!
//! [[instances]]
//! generate = { family = "toy", name = "trace2" }
//!
//! [[instances]]
//! name = "mimo300"
//! generate = { family = "mimo", n = 300, sigma = 1e-3, seed = 0 }
//!
//! [[instances]]
//! path = "sdplib/gpp124-1.dat-s"     # relative to the manifest
//! algorithms = ["lr"]
//! ```
//!
//! Results go to a CSV file with the columns
//! `n,instance,algorithm,status,objective,iterations,final_rank,wall_seconds`
//! and to stdout as an aligned table. A row that fails to load or solve has
//! status `error` and empty numeric fields.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context};
use clap::Args;
use pdsdp_core::{SdpProblem, SolverConfig, Termination};
use serde::{Deserialize, Serialize};

use crate::family::Family;
use crate::{read_problem, Algorithm, FormatArg, EXIT_OPTIMAL};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML manifest.
    manifest: PathBuf,
    /// CSV output [default: the manifest with a `.csv` extension].
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Run rows concurrently. Wall times are then not comparable across rows.
    #[arg(long)]
    parallel: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct Manifest {
    algorithms: Vec<Algorithm>,
    solver: SolverOverrides,
    instances: Vec<InstanceEntry>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest {
            algorithms: vec![Algorithm::Pd, Algorithm::Lr],
            solver: SolverOverrides::default(),
            instances: Vec::new(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverOverrides {
    eps_tol: Option<f64>,
    eps_lambda: Option<f64>,
    alpha_safety: Option<f64>,
    window_ell: Option<usize>,
    max_iter: Option<usize>,
    time_limit_s: Option<f64>,
    seed: Option<u64>,
    initial_rank: Option<usize>,
    #[serde(default)]
    absolute: bool,
}

impl SolverOverrides {
    fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            eps_tol: self.eps_tol.unwrap_or(d.eps_tol),
            eps_lambda: self.eps_lambda.or(d.eps_lambda),
            alpha_safety: self.alpha_safety.unwrap_or(d.alpha_safety),
            window_ell: self.window_ell.unwrap_or(d.window_ell),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            time_limit_s: self.time_limit_s.unwrap_or(d.time_limit_s),
            seed: self.seed.unwrap_or(d.seed),
            initial_rank: self.initial_rank.unwrap_or(d.initial_rank),
            termination: if self.absolute {
                Termination::Absolute
            } else {
                d.termination
            },
            log_every: 0,
            ..d
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceEntry {
    name: Option<String>,
    path: Option<PathBuf>,
    format: Option<String>,
    generate: Option<Family>,
    algorithms: Option<Vec<Algorithm>>,
}

impl InstanceEntry {
    fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match (&self.path, &self.generate) {
            (Some(p), _) => p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into()),
            (None, Some(f)) => f.default_stem(),
            (None, None) => "unnamed".into(),
        }
    }

    fn load(&self, base: &Path) -> anyhow::Result<SdpProblem> {
        match (&self.path, &self.generate) {
            (Some(path), None) => {
                let format = match self.format.as_deref() {
                    None => None,
                    Some("sdpa") => Some(FormatArg::Sdpa),
                    Some("extended") => Some(FormatArg::Extended),
                    Some(other) => bail!("unknown format '{other}'"),
                };
                read_problem(&base.join(path), format)
            }
            (None, Some(family)) => Ok(family.generate()?.0),
            _ => bail!("instance needs exactly one of `path` and `generate`"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub n: Option<usize>,
    pub instance: String,
    pub algorithm: &'static str,
    pub status: String,
    pub objective: Option<f64>,
    pub iterations: Option<usize>,
    pub final_rank: Option<usize>,
    pub wall_seconds: Option<f64>,
}

const HEADER: [&str; 8] = [
    "n",
    "instance",
    "algorithm",
    "status",
    "objective",
    "iterations",
    "final_rank",
    "wall_seconds",
];

fn error_row(n: Option<usize>, instance: &str, algo: Algorithm) -> Row {
    Row {
        n,
        instance: instance.to_string(),
        algorithm: algo.as_str(),
        status: "error".into(),
        objective: None,
        iterations: None,
        final_rank: None,
        wall_seconds: None,
    }
}

#[derive(Clone, Copy)]
struct Job<'a> {
    instance: &'a str,
    problem: &'a SdpProblem,
    algorithm: Algorithm,
}

fn run_job(job: &Job, config: &SolverConfig) -> Row {
    log::info!("solving {} with {}", job.instance, job.algorithm.as_str());
    match crate::solve::solve(job.problem, job.algorithm, config) {
        Ok(result) => Row {
            n: Some(job.problem.n()),
            instance: job.instance.to_string(),
            algorithm: job.algorithm.as_str(),
            status: result.status.to_string(),
            objective: Some(job.problem.objective_sign() * result.primal_objective),
            iterations: Some(result.iterations),
            final_rank: Some(result.final_rank()),
            wall_seconds: Some(result.wall_time_s),
        },
        Err(e) => {
            log::error!("{} / {}: {e}", job.instance, job.algorithm.as_str());
            error_row(Some(job.problem.n()), job.instance, job.algorithm)
        }
    }
}

fn run_jobs(jobs: &[Job], config: &SolverConfig, parallel: bool) -> Vec<Row> {
    if !parallel || jobs.len() < 2 {
        return jobs.iter().map(|j| run_job(j, config)).collect();
    }
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(jobs.len());
    let next = AtomicUsize::new(0);
    let rows: Vec<Mutex<Option<Row>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(k) else { break };
                let row = run_job(job, config);
                *rows[k].lock().expect("row lock") = Some(row);
            });
        }
    });
    rows.into_iter()
        .map(|m| m.into_inner().expect("row lock").expect("every job ran"))
        .collect()
}

fn cells(row: &Row) -> [String; 8] {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    [
        opt(row.n.map(|v| v.to_string())),
        row.instance.clone(),
        row.algorithm.to_string(),
        row.status.clone(),
        opt(row.objective.map(|v| format!("{v:.6e}"))),
        opt(row.iterations.map(|v| v.to_string())),
        opt(row.final_rank.map(|v| v.to_string())),
        opt(row.wall_seconds.map(|v| format!("{v:.3}"))),
    ]
}

/// Right-aligned numeric columns, left-aligned text columns.
pub fn format_table(rows: &[Row]) -> String {
    let body: Vec<[String; 8]> = rows.iter().map(cells).collect();
    let mut widths = HEADER.map(str::len);
    for r in &body {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let left = [false, true, true, true, false, false, false, false];
    let line = |r: &[String]| {
        r.iter()
            .zip(widths)
            .zip(left)
            .map(|((c, w), l)| if l { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&HEADER.map(String::from));
    out.push('\n');
    for r in &body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn write_csv(path: &Path, rows: &[Row]) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    if rows.is_empty() {
        // serde only emits the header with the first record
        w.write_record(HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(args: &BenchArgs) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.manifest)
        .with_context(|| format!("cannot read manifest {}", args.manifest.display()))?;
    let manifest: Manifest =
        toml::from_str(&text).with_context(|| format!("invalid manifest {}", args.manifest.display()))?;
    let base = args.manifest.parent().unwrap_or(Path::new("."));
    let config = manifest.solver.config();

    let labels: Vec<String> = manifest.instances.iter().map(InstanceEntry::label).collect();
    let problems: Vec<Option<SdpProblem>> = manifest
        .instances
        .iter()
        .zip(&labels)
        .map(|(entry, label)| match entry.load(base) {
            Ok(p) => Some(p),
            Err(e) => {
                log::error!("{label}: {e:#}");
                None
            }
        })
        .collect();

    // one slot per table row, in manifest order
    let mut slots: Vec<Result<Job, Row>> = Vec::new();
    for ((entry, label), problem) in manifest.instances.iter().zip(&labels).zip(&problems) {
        for &algorithm in entry.algorithms.as_ref().unwrap_or(&manifest.algorithms) {
            slots.push(match problem {
                Some(problem) => Ok(Job {
                    instance: label,
                    problem,
                    algorithm,
                }),
                None => Err(error_row(None, label, algorithm)),
            });
        }
    }
    let jobs: Vec<Job> = slots
        .iter()
        .filter_map(|s| s.as_ref().ok())
        .copied()
        .collect();
    let mut solved = run_jobs(&jobs, &config, args.parallel).into_iter();
    let rows: Vec<Row> = slots
        .into_iter()
        .map(|s| match s {
            Ok(_) => solved.next().expect("one row per job"),
            Err(row) => row,
        })
        .collect();

    let csv_path = args.csv.clone().unwrap_or_else(|| args.manifest.with_extension("csv"));
    write_csv(&csv_path, &rows)?;
    print!("{}", format_table(&rows));
    log::info!("wrote {}", csv_path.display());
    Ok(EXIT_OPTIMAL)
}
