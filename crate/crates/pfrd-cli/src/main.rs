//! Command-line front end: graph and point-cloud ingestion, schedule
//! specification, the four analysis commands, and benchmark harnesses.
//! Machine-readable records go to stdout, one JSON object per line;
//! human-readable summaries go to stderr.
//!
//! Exit status: 0 success, 1 runtime failure, 2 usage error.

mod bench;
mod records;
mod schedule;

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pfrd::applications::{densest_k_path, density_shrink, find_clique_pfrd};
use pfrd::points::{load_points_csv, to_planar};
use pfrd::structfit::fit_lines;
use pfrd::{load_edge_list, IterationConfig, PathSchedule, SparseGraph};

use bench::BenchScale;
use records::{
    emit, CliqueRecord, ClusterRecord, DksRecord, EntryRecord, RunHeader, StructureRecord,
};
use schedule::parse_schedule;

#[derive(Parser)]
#[command(
    name = "pfrd",
    about = "Path-following replicator dynamic for graph cluster analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IterationFlags {
    /// Convergence threshold on the l1 change between iterates
    #[arg(long, default_value_t = 1e-4)]
    delta2: f64,
    /// Pruning threshold; components below it are zeroed when --prune is on
    #[arg(long, default_value_t = 1e-12)]
    delta3: f64,
    /// Zero out negligible components between steps
    #[arg(long)]
    prune: bool,
    /// Iteration cap per schedule entry
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
}

impl IterationFlags {
    fn to_config(&self) -> IterationConfig {
        IterationConfig {
            delta2: self.delta2,
            delta3: self.delta3,
            prune: self.prune,
            max_iters: self.max_iters,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the path dynamic over a schedule, streaming one record per cap
    Evolve {
        /// Edge-list file: lines "u v" or "u v w", 0-based ids, '#' comments
        #[arg(long)]
        graph: PathBuf,
        /// Cap schedule: recip:KSTART:KEND:STEP[,1] or list:V1,V2,...
        #[arg(long)]
        schedule: String,
        #[command(flatten)]
        iteration: IterationFlags,
        /// Emit support entries above this weight (defaults to delta3)
        #[arg(long)]
        emit_threshold: Option<f64>,
    },
    /// Extract a clique by following the path to cap 1
    Clique {
        #[arg(long)]
        graph: PathBuf,
        /// Cap schedule; defaults to a dense ramp over the whole range
        #[arg(long)]
        schedule: Option<String>,
        /// Cluster membership threshold (default 1/n)
        #[arg(long)]
        delta1: Option<f64>,
        #[command(flatten)]
        iteration: IterationFlags,
    },
    /// Densest k-subgraph candidates for one or more sizes in one run
    Dks {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated subgraph sizes, e.g. 1000,2000,4000
        #[arg(long)]
        k: String,
        #[command(flatten)]
        iteration: IterationFlags,
    },
    /// High-density-region shrink process over a point cloud
    Density {
        /// CSV file: one comma-separated point per line, '#' comments
        #[arg(long)]
        points: PathBuf,
        /// Gaussian kernel bandwidth
        #[arg(long)]
        bandwidth: f64,
        /// Cap schedule: recip:... or list:...
        #[arg(long)]
        schedule: String,
        /// Cluster membership threshold (default 1/n)
        #[arg(long)]
        delta1: Option<f64>,
        #[command(flatten)]
        iteration: IterationFlags,
    },
    /// Fit line structures to a planar point cloud
    Fit {
        #[arg(long)]
        points: PathBuf,
        /// Inlier deviation threshold
        #[arg(long, default_value_t = 0.025)]
        delta4: f64,
        /// Final cap; ceil of its reciprocal is the minimum structure size
        #[arg(long, default_value_t = 1.0 / 40.0)]
        epsilon_m: f64,
        /// Number of line hypotheses
        #[arg(long, default_value_t = 1000)]
        hypotheses: usize,
        /// Consensus threshold for hypothesis agreement (default: delta4)
        #[arg(long)]
        consensus_threshold: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cluster membership threshold (default 1/n)
        #[arg(long)]
        delta1: Option<f64>,
        #[command(flatten)]
        iteration: IterationFlags,
    },
    /// Benchmark harnesses with aggregated tables
    Bench {
        /// Benchmark name: table1 (planted-clique robustness) or table4
        /// (line fitting)
        name: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance scale for table1
        #[arg(long, value_enum, default_value_t = ScaleArg::Desk)]
        scale: ScaleArg,
        /// Noise level for table4
        #[arg(long, default_value_t = 0.01)]
        sigma: f64,
        /// Hypothesis count for table4
        #[arg(long, default_value_t = 1000)]
        hypotheses: usize,
        #[command(flatten)]
        iteration: IterationFlags,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Desk,
    Paper,
    Small,
}

impl From<ScaleArg> for BenchScale {
    fn from(s: ScaleArg) -> BenchScale {
        match s {
            ScaleArg::Desk => BenchScale::Desk,
            ScaleArg::Paper => BenchScale::Paper,
            ScaleArg::Small => BenchScale::Small,
        }
    }
}

enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Runtime(e.into())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<SparseGraph, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!("cannot open {}: {e}", path.display())))?;
    load_edge_list(BufReader::new(file)).map_err(|e| CliError::Runtime(e.into()))
}

fn load_points(path: &PathBuf) -> Result<Vec<Vec<f64>>, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!("cannot open {}: {e}", path.display())))?;
    load_points_csv(BufReader::new(file)).map_err(|e| CliError::Runtime(e.into()))
}

fn run(command: Command) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    match command {
        Command::Evolve {
            graph,
            schedule,
            iteration,
            emit_threshold,
        } => {
            let parsed = parse_schedule(&schedule).map_err(usage)?;
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let g = load_graph(&graph)?;
            parsed
                .validate_for(g.vertex_count())
                .map_err(|e| usage(e.to_string()))?;
            let threshold = emit_threshold.unwrap_or(iteration.delta3);
            let mut out = stdout.lock();
            emit(
                &mut out,
                &RunHeader::new(
                    "evolve",
                    0,
                    json!({
                        "graph": graph.display().to_string(),
                        "schedule": schedule,
                        "delta2": iteration.delta2,
                        "delta3": iteration.delta3,
                        "prune": iteration.prune,
                        "max_iters": iteration.max_iters,
                        "emit_threshold": threshold,
                    }),
                ),
            )?;
            let start = Instant::now();
            let mut entries = 0usize;
            pfrd::run_pfrd_streaming(&g, &parsed, &cfg, |entry| {
                entries += 1;
                emit(&mut out, &EntryRecord::from_entry(&entry, threshold))
                    .map_err(|e| pfrd::Error::InvalidConfig(e.to_string()))?;
                out.flush()
                    .map_err(|e| pfrd::Error::InvalidConfig(e.to_string()))?;
                Ok(())
            })?;
            eprintln!(
                "evolve: {} caps in {:.3}s on {} vertices / {} edges",
                entries,
                start.elapsed().as_secs_f64(),
                g.vertex_count(),
                g.edge_count()
            );
        }
        Command::Clique {
            graph,
            schedule,
            delta1,
            iteration,
        } => {
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let g = load_graph(&graph)?;
            let parsed = match &schedule {
                Some(spec) => parse_schedule(spec).map_err(usage)?,
                None => {
                    let n = g.vertex_count();
                    if n < 3 {
                        return Err(usage(format!("graph has only {n} vertices")));
                    }
                    PathSchedule::reciprocal(n - 1, 2, 1, true)
                        .map_err(|e| usage(e.to_string()))?
                }
            };
            let mut out = stdout.lock();
            emit(
                &mut out,
                &RunHeader::new(
                    "clique",
                    0,
                    json!({
                        "graph": graph.display().to_string(),
                        "schedule": schedule,
                        "delta1": delta1,
                    }),
                ),
            )?;
            let start = Instant::now();
            let result = find_clique_pfrd(&g, &parsed, &cfg, delta1)?;
            emit(
                &mut out,
                &CliqueRecord {
                    record: "clique",
                    members: result.members.clone(),
                    objective: result.objective,
                    clique_objective: result.clique_objective,
                    converged: result.converged,
                },
            )?;
            eprintln!(
                "clique: {} vertices, objective {:.6}, {:.3}s",
                result.members.len(),
                result.objective,
                start.elapsed().as_secs_f64()
            );
        }
        Command::Dks {
            graph,
            k,
            iteration,
        } => {
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let sizes: Vec<usize> = k
                .split(',')
                .map(|f| {
                    f.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("invalid subgraph size '{f}'")))
                })
                .collect::<Result<_, _>>()?;
            let g = load_graph(&graph)?;
            let mut out = stdout.lock();
            emit(
                &mut out,
                &RunHeader::new(
                    "dks",
                    0,
                    json!({
                        "graph": graph.display().to_string(),
                        "k": sizes,
                    }),
                ),
            )?;
            let start = Instant::now();
            let results = densest_k_path(&g, &sizes, &cfg)?;
            for r in &results {
                emit(
                    &mut out,
                    &DksRecord {
                        record: "dks",
                        k: r.k,
                        members: r.members.clone(),
                        weight: r.weight,
                        converged: r.converged,
                    },
                )?;
            }
            eprintln!(
                "dks: {} sizes in {:.3}s",
                results.len(),
                start.elapsed().as_secs_f64()
            );
        }
        Command::Density {
            points,
            bandwidth,
            schedule,
            delta1,
            iteration,
        } => {
            let parsed = parse_schedule(&schedule).map_err(usage)?;
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            if bandwidth <= 0.0 {
                return Err(usage(format!("bandwidth must be positive, got {bandwidth}")));
            }
            let cloud = load_points(&points)?;
            let mut out = stdout.lock();
            emit(
                &mut out,
                &RunHeader::new(
                    "density",
                    0,
                    json!({
                        "points": points.display().to_string(),
                        "bandwidth": bandwidth,
                        "schedule": schedule,
                        "delta1": delta1,
                    }),
                ),
            )?;
            let start = Instant::now();
            let clusters = density_shrink(&cloud, bandwidth, &parsed, &cfg, delta1)?;
            for c in &clusters {
                emit(
                    &mut out,
                    &ClusterRecord {
                        record: "cluster",
                        epsilon: c.epsilon,
                        size: c.members.len(),
                        members: c.members.clone(),
                    },
                )?;
            }
            eprintln!(
                "density: {} caps over {} points in {:.3}s",
                clusters.len(),
                cloud.len(),
                start.elapsed().as_secs_f64()
            );
        }
        Command::Fit {
            points,
            delta4,
            epsilon_m,
            hypotheses,
            consensus_threshold,
            seed,
            delta1,
            iteration,
        } => {
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            let cloud = load_points(&points)?;
            let planar = to_planar(&cloud).map_err(|e| usage(e.to_string()))?;
            let mut fit_cfg = pfrd::structfit::FitConfig::new(delta4, epsilon_m, hypotheses, seed);
            if let Some(t) = consensus_threshold {
                fit_cfg.consensus_threshold = t;
            }
            fit_cfg.delta1 = delta1;
            fit_cfg.iteration = cfg;
            let mut out = stdout.lock();
            emit(
                &mut out,
                &RunHeader::new(
                    "fit",
                    seed,
                    json!({
                        "points": points.display().to_string(),
                        "delta4": delta4,
                        "epsilon_m": epsilon_m,
                        "hypotheses": hypotheses,
                        "consensus_threshold": fit_cfg.consensus_threshold,
                        "delta1": delta1,
                    }),
                ),
            )?;
            let start = Instant::now();
            let outcome = fit_lines(&planar, &fit_cfg)?;
            for s in &outcome.structures {
                emit(
                    &mut out,
                    &StructureRecord {
                        record: "structure",
                        a: s.line.a,
                        b: s.line.b,
                        c: s.line.c,
                        inlier_count: s.inliers.len(),
                        mean_deviation: s.mean_deviation,
                    },
                )?;
            }
            eprintln!(
                "fit: {} structures from {} points in {:.3}s",
                outcome.structures.len(),
                planar.len(),
                start.elapsed().as_secs_f64()
            );
        }
        Command::Bench {
            name,
            trials,
            seed,
            scale,
            sigma,
            hypotheses,
            iteration,
        } => {
            let cfg = iteration.to_config();
            cfg.validate().map_err(|e| usage(e.to_string()))?;
            match name.as_str() {
                "table1" => {
                    let scale: BenchScale = scale.into();
                    let trials = trials.unwrap_or_else(|| scale.default_trials());
                    let start = Instant::now();
                    let cells = bench::robustness_grid(scale, trials, seed, &cfg)?;
                    print!("{}", bench::format_robustness_table(&cells));
                    eprintln!(
                        "bench table1: {} trials/cell in {:.1}s",
                        trials,
                        start.elapsed().as_secs_f64()
                    );
                }
                "table4" => {
                    let trials = trials.unwrap_or(20);
                    let start = Instant::now();
                    let summary = bench::line_bench(sigma, trials, hypotheses, seed)?;
                    print!("{}", bench::format_line_bench(&summary));
                    eprintln!(
                        "bench table4: {} trials in {:.1}s",
                        trials,
                        start.elapsed().as_secs_f64()
                    );
                }
                other => {
                    return Err(usage(format!(
                        "unknown benchmark '{other}' (expected table1 or table4)"
                    )));
                }
            }
        }
    }
    Ok(())
}
