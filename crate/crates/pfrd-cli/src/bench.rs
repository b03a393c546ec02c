//! Benchmark harnesses: the planted-clique robustness grid and the
//! line-fitting accuracy row. Trials run in parallel on derived seeds, so
//! results are independent of thread scheduling.

use std::time::Instant;

use rayon::prelude::*;

use pfrd::applications::extract_cluster;
use pfrd::structfit::{fit_lines, fitting_error, FitConfig};
use pfrd::synth::{gen_lines, gen_planted_clique, DegreeDistribution, PlantedCliqueSpec};
use pfrd::{run_pfrd, IterationConfig, PathSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchScale {
    /// Full-size instances, a reduced trial count.
    Desk,
    /// Full-size instances, the published trial count.
    Paper,
    /// Tiny instances for smoke runs.
    Small,
}

impl BenchScale {
    pub fn default_trials(self) -> usize {
        match self {
            BenchScale::Desk => 20,
            BenchScale::Paper => 100,
            BenchScale::Small => 5,
        }
    }

    fn spec(self, distribution: DegreeDistribution, seed: u64) -> PlantedCliqueSpec {
        match self {
            BenchScale::Desk | BenchScale::Paper => PlantedCliqueSpec::benchmark(distribution, seed),
            BenchScale::Small => PlantedCliqueSpec::scaled(12, 60, distribution, seed),
        }
    }

    /// The four cap samplings of the robustness grid, sparsest to densest.
    fn schedules(self) -> Vec<(&'static str, PathSchedule)> {
        match self {
            BenchScale::Desk | BenchScale::Paper => vec![
                ("DRD", PathSchedule::classical()),
                ("PFRD-1", PathSchedule::reciprocal(900, 100, 100, true).unwrap()),
                ("PFRD-2", PathSchedule::reciprocal(950, 50, 50, true).unwrap()),
                ("PFRD-3", PathSchedule::reciprocal(990, 10, 10, true).unwrap()),
            ],
            BenchScale::Small => vec![
                ("DRD", PathSchedule::classical()),
                ("PFRD-1", PathSchedule::reciprocal(63, 9, 9, true).unwrap()),
                ("PFRD-2", PathSchedule::reciprocal(68, 4, 4, true).unwrap()),
                ("PFRD-3", PathSchedule::reciprocal(71, 1, 1, true).unwrap()),
            ],
        }
    }
}

pub struct RobustnessCell {
    pub distribution: &'static str,
    pub dynamic: &'static str,
    pub successes: usize,
    pub trials: usize,
    pub mean_seconds: f64,
}

/// Runs the planted-clique robustness grid: distributions x cap samplings,
/// `trials` seeded instances per cell; success means the final cluster is
/// exactly the planted set.
pub fn robustness_grid(
    scale: BenchScale,
    trials: usize,
    seed: u64,
    cfg: &IterationConfig,
) -> anyhow::Result<Vec<RobustnessCell>> {
    let distributions = [
        DegreeDistribution::uniform(),
        DegreeDistribution::binomial(),
        DegreeDistribution::geometric(),
        DegreeDistribution::power_law(),
    ];
    let schedules = scale.schedules();
    let mut cells = Vec::new();
    for (d_idx, distribution) in distributions.iter().enumerate() {
        // instances are shared by every dynamic in the row
        let specs: Vec<PlantedCliqueSpec> = (0..trials)
            .map(|t| scale.spec(*distribution, seed + (d_idx * 10_000 + t) as u64))
            .collect();
        let instances: Vec<_> = specs
            .par_iter()
            .map(|spec| gen_planted_clique(spec).map_err(anyhow::Error::from))
            .collect::<Result<Vec<_>, _>>()?;
        for (name, schedule) in &schedules {
            let outcomes: Vec<(bool, f64)> = instances
                .par_iter()
                .map(|(graph, planted)| {
                    let start = Instant::now();
                    let ok = run_pfrd(graph, schedule, cfg)
                        .ok()
                        .and_then(|path| {
                            let final_entry = path.final_entry();
                            extract_cluster(
                                &final_entry.state,
                                1.0 / graph.vertex_count() as f64,
                            )
                            .ok()
                            .map(|cluster| cluster.members == *planted)
                        })
                        .unwrap_or(false);
                    (ok, start.elapsed().as_secs_f64())
                })
                .collect();
            let successes = outcomes.iter().filter(|(ok, _)| *ok).count();
            let mean_seconds =
                outcomes.iter().map(|(_, s)| s).sum::<f64>() / outcomes.len().max(1) as f64;
            cells.push(RobustnessCell {
                distribution: distribution.label(),
                dynamic: name,
                successes,
                trials,
                mean_seconds,
            });
        }
    }
    Ok(cells)
}

pub fn format_robustness_table(cells: &[RobustnessCell]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<11} {:>14} {:>14} {:>14} {:>14}\n",
        "distribution", "DRD", "PFRD-1", "PFRD-2", "PFRD-3"
    ));
    for row in ["uniform", "binomial", "geometric", "power-law"] {
        let mut line = format!("{row:<11} ");
        for dynamic in ["DRD", "PFRD-1", "PFRD-2", "PFRD-3"] {
            if let Some(cell) = cells
                .iter()
                .find(|c| c.distribution == row && c.dynamic == dynamic)
            {
                let pct = 100.0 * cell.successes as f64 / cell.trials.max(1) as f64;
                line.push_str(&format!(
                    "{:>7.0}%/{:>5.2}s ",
                    pct, cell.mean_seconds
                ));
            }
        }
        line.push('\n');
        out.push_str(&line);
    }
    out
}

/// Default fitting configuration for a noise scale: the inlier threshold
/// tracks the noise at 2.5 sigma (with a small floor for near-noiseless
/// data), the minimum structure size is 40, and one thousand hypotheses
/// are drawn.
pub fn line_bench_config(sigma: f64, hypotheses: usize, seed: u64) -> FitConfig {
    let delta4 = (2.5 * sigma).max(1e-4);
    let mut cfg = FitConfig::new(delta4, 1.0 / 40.0, hypotheses, seed);
    cfg.iteration.delta2 = 1e-6;
    cfg
}

pub struct LineBenchSummary {
    pub sigma: f64,
    pub trials: usize,
    /// Trials that produced exactly three structures.
    pub exact_count: usize,
    /// Mean fitting error over trials where the error was defined.
    pub mean_error: f64,
    pub mean_seconds: f64,
}

/// Runs seeded line-fitting trials at one noise level and aggregates the
/// fitting error against the generating lines.
pub fn line_bench(
    sigma: f64,
    trials: usize,
    hypotheses: usize,
    seed: u64,
) -> anyhow::Result<LineBenchSummary> {
    let outcomes: Vec<(usize, Option<f64>, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let scene = gen_lines(100, 300, sigma, seed + t as u64);
            let cfg = line_bench_config(sigma, hypotheses, seed + 7000 + t as u64);
            let start = Instant::now();
            let outcome = fit_lines(&scene.points, &cfg);
            let seconds = start.elapsed().as_secs_f64();
            match outcome {
                Ok(result) => {
                    let err = fitting_error(&result.structures, &scene.lines, &scene.points, sigma)
                        .ok()
                        .map(|r| r.mean_error);
                    (result.structures.len(), err, seconds)
                }
                Err(_) => (0, None, seconds),
            }
        })
        .collect();
    let exact_count = outcomes.iter().filter(|(n, _, _)| *n == 3).count();
    let errors: Vec<f64> = outcomes.iter().filter_map(|(_, e, _)| *e).collect();
    let mean_error = if errors.is_empty() {
        f64::NAN
    } else {
        errors.iter().sum::<f64>() / errors.len() as f64
    };
    let mean_seconds = outcomes.iter().map(|(_, _, s)| s).sum::<f64>() / trials.max(1) as f64;
    Ok(LineBenchSummary {
        sigma,
        trials,
        exact_count,
        mean_error,
        mean_seconds,
    })
}

pub fn format_line_bench(summary: &LineBenchSummary) -> String {
    format!(
        "sigma {:>6.3}: mean fitting error {:.4e}, 3-structure rate {}/{}, mean time {:.3}s\n",
        summary.sigma,
        summary.mean_error,
        summary.exact_count,
        summary.trials,
        summary.mean_seconds
    )
}
