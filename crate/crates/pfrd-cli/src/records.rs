//! Line-delimited output records. One JSON object per line on stdout;
//! every run starts with a self-describing header carrying the schema
//! version and the full configuration, so a record stream can be replayed.

use std::io::Write;

use serde::Serialize;

use pfrd::PathEntry;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct RunHeader<'a> {
    pub record: &'static str,
    pub schema: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub config: serde_json::Value,
}

impl<'a> RunHeader<'a> {
    pub fn new(command: &'a str, seed: u64, config: serde_json::Value) -> Self {
        RunHeader {
            record: "run",
            schema: SCHEMA_VERSION,
            command,
            seed,
            config,
        }
    }
}

#[derive(Serialize)]
pub struct EntryRecord {
    pub record: &'static str,
    pub epsilon: f64,
    pub iterations: usize,
    pub converged: bool,
    pub f_value: f64,
    pub support_size: usize,
    /// (vertex, weight) pairs above the emit threshold.
    pub support: Vec<(usize, f64)>,
}

impl EntryRecord {
    pub fn from_entry(entry: &PathEntry, emit_threshold: f64) -> Self {
        let support: Vec<(usize, f64)> = entry
            .state
            .components()
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w > emit_threshold)
            .map(|(v, &w)| (v, w))
            .collect();
        EntryRecord {
            record: "entry",
            epsilon: entry.epsilon(),
            iterations: entry.iterations,
            converged: entry.converged,
            f_value: entry.objective,
            support_size: entry.support_size(),
            support,
        }
    }
}

#[derive(Serialize)]
pub struct CliqueRecord {
    pub record: &'static str,
    pub members: Vec<usize>,
    pub objective: f64,
    pub clique_objective: f64,
    pub converged: bool,
}

#[derive(Serialize)]
pub struct DksRecord {
    pub record: &'static str,
    pub k: usize,
    pub members: Vec<usize>,
    pub weight: f64,
    pub converged: bool,
}

#[derive(Serialize)]
pub struct ClusterRecord {
    pub record: &'static str,
    pub epsilon: f64,
    pub size: usize,
    pub members: Vec<usize>,
}

#[derive(Serialize)]
pub struct StructureRecord {
    pub record: &'static str,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub inlier_count: usize,
    pub mean_deviation: f64,
}

pub fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}
