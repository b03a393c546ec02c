//! Multi-line structure fitting on top of the path dynamic.
//!
//! Hypothesize-and-verify: sample many two-point line hypotheses, encode
//! each point by the set of hypotheses it agrees with, connect points by
//! the Jaccard similarity of those sets, evolve the path dynamic on that
//! graph, and walk the resulting cluster sequence backward to peel off one
//! structure at a time.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::applications::{extract_cluster, Cluster};
use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::projection::min_support;
use crate::replicator::{run_pfrd, IterationConfig, PathSchedule, SolutionPath};

/// A 2-D line a*x + b*y + c = 0 with unit normal (a, b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line {
    /// Normalizes the normal to unit length.
    pub fn new(a: f64, b: f64, c: f64) -> Line {
        let norm = (a * a + b * b).sqrt();
        assert!(norm > 0.0, "degenerate line normal");
        Line {
            a: a / norm,
            b: b / norm,
            c: c / norm,
        }
    }

    /// Orthogonal distance from a point.
    pub fn deviation(&self, p: [f64; 2]) -> f64 {
        (self.a * p[0] + self.b * p[1] + self.c).abs()
    }

    /// The line through two distinct points.
    pub fn through(p: [f64; 2], q: [f64; 2]) -> Option<Line> {
        let dx = q[0] - p[0];
        let dy = q[1] - p[1];
        let norm = (dx * dx + dy * dy).sqrt();
        if norm < 1e-12 {
            return None;
        }
        let a = -dy / norm;
        let b = dx / norm;
        let c = -(a * p[0] + b * p[1]);
        Some(Line { a, b, c })
    }

    /// Total-least-squares fit: the line through the centroid whose normal
    /// is the minor principal direction of the centered points.
    pub fn fit_tls(points: &[[f64; 2]]) -> Result<Line> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                required: 2,
                got: points.len(),
            });
        }
        let n = points.len() as f64;
        let cx = points.iter().map(|p| p[0]).sum::<f64>() / n;
        let cy = points.iter().map(|p| p[1]).sum::<f64>() / n;
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for p in points {
            let dx = p[0] - cx;
            let dy = p[1] - cy;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        if sxx + syy < 1e-24 {
            return Err(Error::DegenerateFit);
        }
        // smaller eigenvalue of [[sxx, sxy], [sxy, syy]]
        let trace = sxx + syy;
        let det = sxx * syy - sxy * sxy;
        let disc = (trace * trace / 4.0 - det).max(0.0).sqrt();
        let lambda_min = trace / 2.0 - disc;
        // eigenvector for lambda_min
        let (mut a, mut b) = if sxy.abs() > 1e-18 {
            (lambda_min - syy, sxy)
        } else if sxx <= syy {
            (1.0, 0.0)
        } else {
            (0.0, 1.0)
        };
        let norm = (a * a + b * b).sqrt();
        if norm < 1e-18 {
            return Err(Error::DegenerateFit);
        }
        a /= norm;
        b /= norm;
        let c = -(a * cx + b * cy);
        Ok(Line { a, b, c })
    }
}

/// One sampled line hypothesis with the points that agree with it.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub line: Line,
    /// Indices of points whose deviation is below the consensus threshold.
    pub consensus: Vec<u32>,
}

/// A fitted structure: its line, the points that generated it, and how
/// well they sit on it.
#[derive(Debug, Clone)]
pub struct StructureModel {
    pub line: Line,
    pub inliers: Vec<usize>,
    pub mean_deviation: f64,
}

/// Parameters of the fitting pipeline.
#[derive(Debug, Clone)]
pub struct FitConfig {
    /// Deviation below which a point counts as an inlier of a structure.
    pub delta4: f64,
    /// Final cap of the path schedule; ceil(1/epsilon_m) is the minimum
    /// structure size.
    pub epsilon_m: f64,
    /// Number of line hypotheses to sample.
    pub hypotheses: usize,
    /// Deviation below which a point joins a hypothesis' consensus set.
    pub consensus_threshold: f64,
    pub seed: u64,
    /// Cluster membership threshold; defaults to 1/n when None.
    pub delta1: Option<f64>,
    pub iteration: IterationConfig,
}

impl FitConfig {
    pub fn new(delta4: f64, epsilon_m: f64, hypotheses: usize, seed: u64) -> FitConfig {
        FitConfig {
            delta4,
            epsilon_m,
            hypotheses,
            consensus_threshold: delta4,
            seed,
            delta1: None,
            iteration: IterationConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta4 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "delta4 must be positive, got {}",
                self.delta4
            )));
        }
        if !(self.consensus_threshold > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "consensus threshold must be positive, got {}",
                self.consensus_threshold
            )));
        }
        if !(self.epsilon_m > 0.0 && self.epsilon_m <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon_m must be in (0, 1], got {}",
                self.epsilon_m
            )));
        }
        if self.hypotheses == 0 {
            return Err(Error::InvalidConfig("need at least one hypothesis".into()));
        }
        Ok(())
    }
}

/// Samples line hypotheses from uniformly random pairs of distinct points.
/// Pairs of coincident points are resampled. Each hypothesis draws from
/// its own seed-derived stream, so the result is independent of evaluation
/// order.
pub fn sample_hypotheses(
    points: &[[f64; 2]],
    count: usize,
    consensus_threshold: f64,
    seed: u64,
) -> Result<Vec<Hypothesis>> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            got: points.len(),
        });
    }
    if points
        .iter()
        .all(|p| (p[0] - points[0][0]).abs() < 1e-12 && (p[1] - points[0][1]).abs() < 1e-12)
    {
        return Err(Error::DegenerateFit);
    }
    let mut hypotheses = Vec::with_capacity(count);
    for h in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(h as u64 + 1);
        let line = loop {
            let i = rng.gen_range(0..points.len());
            let mut j = rng.gen_range(0..points.len() - 1);
            if j >= i {
                j += 1;
            }
            if let Some(line) = Line::through(points[i], points[j]) {
                break line;
            }
        };
        let consensus: Vec<u32> = points
            .iter()
            .enumerate()
            .filter(|(_, &p)| line.deviation(p) < consensus_threshold)
            .map(|(i, _)| i as u32)
            .collect();
        hypotheses.push(Hypothesis { line, consensus });
    }
    Ok(hypotheses)
}

/// Connects points by the Jaccard similarity of their preference sets (the
/// hypotheses each point agrees with). Pairs with no shared hypothesis get
/// no edge; the diagonal is empty.
pub fn build_consensus_graph(points: &[[f64; 2]], hypotheses: &[Hypothesis]) -> Result<SparseGraph> {
    if hypotheses.is_empty() {
        return Err(Error::InvalidConfig("no hypotheses".into()));
    }
    let n = points.len();
    let blocks = hypotheses.len().div_ceil(64);
    let mut preference = vec![0u64; n * blocks];
    for (h, hyp) in hypotheses.iter().enumerate() {
        let (block, bit) = (h / 64, h % 64);
        for &p in &hyp.consensus {
            preference[p as usize * blocks + block] |= 1u64 << bit;
        }
    }
    let sizes: Vec<u32> = (0..n)
        .map(|p| {
            preference[p * blocks..(p + 1) * blocks]
                .iter()
                .map(|b| b.count_ones())
                .sum()
        })
        .collect();

    let mut edges = Vec::new();
    for i in 0..n {
        if sizes[i] == 0 {
            continue;
        }
        let pi = &preference[i * blocks..(i + 1) * blocks];
        for j in (i + 1)..n {
            if sizes[j] == 0 {
                continue;
            }
            let pj = &preference[j * blocks..(j + 1) * blocks];
            let shared: u32 = pi.iter().zip(pj.iter()).map(|(a, b)| (a & b).count_ones()).sum();
            if shared == 0 {
                continue;
            }
            let union = sizes[i] + sizes[j] - shared;
            edges.push((i, j, shared as f64 / union.max(1) as f64));
        }
    }
    SparseGraph::from_edges(n, &edges)
}

/// Walks a cluster sequence backward (largest cap first) and peels off
/// structures: fit the tightest cluster, then repeatedly absorb points
/// already explained by an accepted structure, and fit a new structure
/// whenever enough unexplained points have accumulated. Fitting stops when
/// a candidate structure cannot muster more than ceil(1/epsilon_m)
/// inliers.
pub fn fit_structures(
    points: &[[f64; 2]],
    clusters: &[Cluster],
    cfg: &FitConfig,
) -> Result<Vec<StructureModel>> {
    cfg.validate()?;
    if clusters.is_empty() {
        return Err(Error::InvalidConfig("empty cluster sequence".into()));
    }
    let min_size = min_support(cfg.epsilon_m);

    let tightest = &clusters[clusters.len() - 1];
    let first = fit_model(points, &tightest.members, cfg.delta4)?;
    let mut structures = vec![first];
    let mut explained = vec![false; points.len()];
    for &v in &tightest.members {
        explained[v] = true;
    }

    for cluster in clusters.iter().rev().skip(1) {
        let mut pending: Vec<usize> = cluster
            .members
            .iter()
            .copied()
            .filter(|&v| !explained[v])
            .collect();
        pending.retain(|&v| {
            let absorbed = structures
                .iter()
                .any(|s| s.line.deviation(points[v]) < cfg.delta4);
            if absorbed {
                explained[v] = true;
            }
            !absorbed
        });
        if pending.len() >= 2 * min_size {
            let candidate = fit_model(points, &pending, cfg.delta4)?;
            if candidate.inliers.len() > min_size {
                for &v in &candidate.inliers {
                    explained[v] = true;
                }
                structures.push(candidate);
            } else {
                break;
            }
        }
    }
    Ok(structures)
}

fn fit_model(points: &[[f64; 2]], members: &[usize], delta4: f64) -> Result<StructureModel> {
    let sample: Vec<[f64; 2]> = members.iter().map(|&v| points[v]).collect();
    let line = Line::fit_tls(&sample)?;
    let inliers: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&v| line.deviation(points[v]) < delta4)
        .collect();
    let mean_deviation = if inliers.is_empty() {
        f64::NAN
    } else {
        inliers
            .iter()
            .map(|&v| line.deviation(points[v]))
            .sum::<f64>()
            / inliers.len() as f64
    };
    Ok(StructureModel {
        line,
        inliers,
        mean_deviation,
    })
}

/// Everything one fitting run produces: the consensus graph's solution
/// path, the clusters extracted from it, and the fitted structures.
#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub path: SolutionPath,
    pub clusters: Vec<Cluster>,
    pub structures: Vec<StructureModel>,
}

/// The full pipeline: hypotheses, consensus graph, path dynamic over a
/// reciprocal schedule from 1/n up to epsilon_m, cluster extraction, and
/// backward structure fitting.
pub fn fit_lines(points: &[[f64; 2]], cfg: &FitConfig) -> Result<FitOutcome> {
    cfg.validate()?;
    let n = points.len();
    let hypotheses = sample_hypotheses(points, cfg.hypotheses, cfg.consensus_threshold, cfg.seed)?;
    let graph = build_consensus_graph(points, &hypotheses)?;
    let schedule = ramp_schedule(n, min_support(cfg.epsilon_m))?;
    let path = run_pfrd(&graph, &schedule, &cfg.iteration)?;
    let delta1 = cfg.delta1.unwrap_or(1.0 / n as f64);
    let clusters: Vec<Cluster> = path
        .entries
        .iter()
        .map(|entry| extract_cluster(&entry.state, delta1))
        .collect::<Result<_>>()?;
    let structures = fit_structures(points, &clusters, cfg)?;
    Ok(FitOutcome {
        path,
        clusters,
        structures,
    })
}

/// Reciprocal ramp of about a hundred caps, from just above 1/n down to
/// the target size. Starting strictly above 1/n keeps the first converged
/// state away from the uniform vector, where a 1/n membership threshold
/// would select nothing.
pub fn ramp_schedule(n: usize, target: usize) -> Result<PathSchedule> {
    if target == 0 || target > n {
        return Err(Error::InvalidSchedule(format!(
            "target size {target} infeasible for {n} points"
        )));
    }
    let step = (n / 100).max(1);
    let mut ks: Vec<usize> = Vec::new();
    let mut k = n.saturating_sub(step).max(target);
    while k > target {
        ks.push(k);
        k = k.saturating_sub(step);
    }
    ks.push(target);
    let epsilons: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
    PathSchedule::explicit(epsilons)
}

/// Report of a comparison between fitted structures and known true lines.
#[derive(Debug, Clone)]
pub struct FittingErrorReport {
    /// Mean distance of every matched ground-truth inlier to the structure
    /// fitted for its line.
    pub mean_error: f64,
    /// (true line index, structure index) pairs used for the error.
    pub matches: Vec<(usize, usize)>,
    /// True when the structure count differs from the true line count;
    /// the error is then computed over the matched pairs only.
    pub count_mismatch: bool,
    /// Number of ground-truth inliers involved.
    pub inlier_count: usize,
}

/// Measures how well fitted structures recover known lines. Ground-truth
/// inliers are the points within `sigma` of any true line, each assigned
/// to its nearest true line; true lines are matched to structures by
/// minimizing the total mean deviation; the returned error is the mean
/// distance of ground-truth inliers to the structure matched to their
/// line.
pub fn fitting_error(
    structures: &[StructureModel],
    truth: &[Line],
    points: &[[f64; 2]],
    sigma: f64,
) -> Result<FittingErrorReport> {
    if structures.is_empty() {
        return Err(Error::NoStructures);
    }
    if truth.is_empty() {
        return Err(Error::InvalidConfig("no true lines given".into()));
    }
    // ground-truth inliers, each assigned to its nearest true line
    let mut per_line: Vec<Vec<usize>> = vec![Vec::new(); truth.len()];
    for (idx, &p) in points.iter().enumerate() {
        let (best, dist) = truth
            .iter()
            .enumerate()
            .map(|(t, line)| (t, line.deviation(p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if dist < sigma {
            per_line[best].push(idx);
        }
    }

    // cost of matching true line t to structure s: mean deviation of t's
    // ground-truth inliers from s's line
    let mut cost = vec![vec![f64::INFINITY; structures.len()]; truth.len()];
    for (t, inliers) in per_line.iter().enumerate() {
        for (s, model) in structures.iter().enumerate() {
            if inliers.is_empty() {
                cost[t][s] = 0.0;
                continue;
            }
            cost[t][s] = inliers
                .iter()
                .map(|&v| model.line.deviation(points[v]))
                .sum::<f64>()
                / inliers.len() as f64;
        }
    }

    let matches = best_assignment(&cost);
    let mut total = 0.0;
    let mut count = 0usize;
    for &(t, s) in &matches {
        for &v in &per_line[t] {
            total += structures[s].line.deviation(points[v]);
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::InvalidConfig(
            "no ground-truth inliers within sigma of any true line".into(),
        ));
    }
    Ok(FittingErrorReport {
        mean_error: total / count as f64,
        matches,
        count_mismatch: structures.len() != truth.len(),
        inlier_count: count,
    })
}

/// Minimum-total-cost injective assignment of rows to columns by
/// exhaustive permutation; the matrices here are 3x3-scale.
fn best_assignment(cost: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let rows = cost.len();
    let cols = cost[0].len();
    let k = rows.min(cols);
    let row_ids: Vec<usize> = (0..rows).collect();
    let col_ids: Vec<usize> = (0..cols).collect();
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    // choose k rows (in order) and permute k columns over them
    for row_subset in combinations(&row_ids, k) {
        for col_perm in permutations(&col_ids, k) {
            let total: f64 = row_subset
                .iter()
                .zip(col_perm.iter())
                .map(|(&r, &c)| cost[r][c])
                .sum();
            let pairs: Vec<(usize, usize)> = row_subset
                .iter()
                .zip(col_perm.iter())
                .map(|(&r, &c)| (r, c))
                .collect();
            if best.as_ref().map_or(true, |(b, _)| total < *b) {
                best = Some((total, pairs));
            }
        }
    }
    best.expect("nonempty assignment").1
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            let mut combo = vec![first];
            combo.append(&mut rest);
            out.push(combo);
        }
    }
    out
}

fn permutations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest_items = items.to_vec();
        rest_items.remove(i);
        for mut rest in permutations(&rest_items, k - 1) {
            let mut perm = vec![first];
            perm.append(&mut rest);
            out.push(perm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn line_through_two_points() {
        let line = Line::through([0.0, 0.0], [1.0, 1.0]).unwrap();
        assert!(line.deviation([0.5, 0.5]) < 1e-12);
        assert_relative_eq!(line.deviation([0.0, 1.0]), (0.5_f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn coincident_points_give_no_line() {
        assert!(Line::through([1.0, 2.0], [1.0, 2.0]).is_none());
    }

    #[test]
    fn tls_fit_recovers_an_exact_line() {
        let pts: Vec<[f64; 2]> = (0..20)
            .map(|i| {
                let t = i as f64 / 19.0;
                [t, 2.0 * t - 0.5]
            })
            .collect();
        let line = Line::fit_tls(&pts).unwrap();
        for p in &pts {
            assert!(line.deviation(*p) < 1e-12);
        }
    }

    #[test]
    fn tls_fit_handles_vertical_lines() {
        let pts: Vec<[f64; 2]> = (0..10).map(|i| [2.0, i as f64]).collect();
        let line = Line::fit_tls(&pts).unwrap();
        assert!(line.deviation([2.0, 100.0]) < 1e-9);
        assert!(line.deviation([3.0, 0.0]) > 0.9);
    }

    #[test]
    fn two_points_give_their_connecting_line() {
        let pts = [[0.0, 0.0], [2.0, 0.0]];
        let hyps = sample_hypotheses(&pts, 3, 0.1, 42).unwrap();
        for h in &hyps {
            assert_eq!(h.consensus, vec![0, 1]);
            assert!(h.line.deviation([1.0, 0.0]) < 1e-12);
        }
    }

    #[test]
    fn hypothesis_sampling_is_deterministic() {
        let scene = crate::synth::gen_lines(30, 20, 0.01, 5);
        let a = sample_hypotheses(&scene.points, 100, 0.02, 9).unwrap();
        let b = sample_hypotheses(&scene.points, 100, 0.02, 9).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.line, y.line);
            assert_eq!(x.consensus, y.consensus);
        }
    }

    #[test]
    fn all_identical_points_error() {
        let pts = [[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]];
        assert!(matches!(
            sample_hypotheses(&pts, 5, 0.1, 1),
            Err(Error::DegenerateFit)
        ));
    }

    #[test]
    fn identical_preference_sets_weigh_one() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 7.0], [1.0, 9.0]];
        let mut hyps = sample_hypotheses(&pts, 6, 0.05, 3).unwrap();
        // points 0 and 1 agree with exactly the same hypotheses
        for (i, h) in hyps.iter_mut().enumerate() {
            h.consensus = if i < 4 { vec![0, 1] } else { vec![0, 1, 2] };
        }
        let g = build_consensus_graph(&pts, &hyps).unwrap();
        let w01 = g.neighbors(0).find(|&(v, _)| v == 1).map(|(_, w)| w).unwrap();
        assert_relative_eq!(w01, 1.0);
        // a point sharing only part of its preference set gets less
        let w02 = g.neighbors(0).find(|&(v, _)| v == 2).map(|(_, w)| w).unwrap();
        assert_relative_eq!(w02, 2.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn disjoint_preference_sets_get_no_edge() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 7.0], [1.0, 9.0]];
        let mut hyps = sample_hypotheses(&pts, 8, 0.05, 3).unwrap();
        // force disjoint consensus sets
        for (i, h) in hyps.iter_mut().enumerate() {
            h.consensus = if i % 2 == 0 { vec![0, 1] } else { vec![2, 3] };
        }
        let g = build_consensus_graph(&pts, &hyps).unwrap();
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(2, 3));
        assert!(!g.has_edge(0, 2));
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn collinear_pairs_outweigh_mixed_pairs() {
        // a dense collinear strip vs one off-line point
        let mut pts: Vec<[f64; 2]> = (0..30)
            .map(|i| [i as f64 / 29.0 * 2.0 - 1.0, 0.0])
            .collect();
        pts.push([0.0, 1.0]);
        let hyps = sample_hypotheses(&pts, 500, 0.02, 7).unwrap();
        let g = build_consensus_graph(&pts, &hyps).unwrap();
        let collinear = g
            .neighbors(0)
            .find(|&(v, _)| v == 15)
            .map(|(_, w)| w)
            .unwrap_or(0.0);
        let mixed = g
            .neighbors(0)
            .find(|&(v, _)| v == 30)
            .map(|(_, w)| w)
            .unwrap_or(0.0);
        assert!(
            collinear > mixed,
            "collinear weight {collinear} not above mixed weight {mixed}"
        );
    }

    #[test]
    fn noiseless_two_line_scene_yields_two_structures() {
        // two noiseless 50-point lines, no outliers
        let mut points: Vec<[f64; 2]> = Vec::new();
        for i in 0..50 {
            let t = i as f64 / 49.0 * 2.0 - 1.0;
            points.push([t, 0.5 * t + 0.3]);
        }
        for i in 0..50 {
            let t = i as f64 / 49.0 * 2.0 - 1.0;
            points.push([t, -0.8 * t - 0.2]);
        }
        // the new-structure trigger needs 2 * ceil(1/epsilon_m) unexplained
        // points, so the minimum size must sit well below the line size
        let mut cfg = FitConfig::new(0.02, 1.0 / 20.0, 300, 11);
        cfg.iteration.delta2 = 1e-8;
        let outcome = fit_lines(&points, &cfg).unwrap();
        assert_eq!(
            outcome.structures.len(),
            2,
            "expected two structures, got {:?}",
            outcome.structures.len()
        );
        for s in &outcome.structures {
            assert!(s.mean_deviation < 1e-9);
        }
    }

    #[test]
    fn too_few_residual_points_stop_the_walk() {
        // one clean line plus a handful of stray points: only a single
        // structure may be produced
        let mut points: Vec<[f64; 2]> = (0..60)
            .map(|i| {
                let t = i as f64 / 59.0 * 2.0 - 1.0;
                [t, 0.25 * t - 0.1]
            })
            .collect();
        points.push([1.2, 1.3]);
        points.push([-1.2, 0.9]);
        points.push([0.3, -1.4]);
        let cfg = FitConfig::new(0.02, 1.0 / 30.0, 200, 13);
        let outcome = fit_lines(&points, &cfg).unwrap();
        assert_eq!(outcome.structures.len(), 1);
    }

    #[test]
    fn fitting_error_against_exact_truth_reports_noise_magnitude() {
        let scene = crate::synth::gen_lines(100, 0, 0.01, 21);
        // structures that are exactly the true lines
        let structures: Vec<StructureModel> = scene
            .lines
            .iter()
            .map(|&line| StructureModel {
                line,
                inliers: vec![],
                mean_deviation: 0.0,
            })
            .collect();
        let report = fitting_error(&structures, &scene.lines, &scene.points, 0.01).unwrap();
        // expected: mean |N(0, sigma)| truncated to [-sigma, sigma],
        // computed directly from the same points
        let mut total = 0.0;
        let mut count = 0;
        for &p in &scene.points {
            let d = scene
                .lines
                .iter()
                .map(|l| l.deviation(p))
                .fold(f64::INFINITY, f64::min);
            if d < 0.01 {
                total += d;
                count += 1;
            }
        }
        let direct = total / count as f64;
        assert_relative_eq!(report.mean_error, direct, epsilon = 1e-12);
        assert!(!report.count_mismatch);
    }

    #[test]
    fn fitting_error_flags_count_mismatch_and_empty_input() {
        let scene = crate::synth::gen_lines(50, 0, 0.01, 22);
        let one = vec![StructureModel {
            line: scene.lines[0],
            inliers: vec![],
            mean_deviation: 0.0,
        }];
        let report = fitting_error(&one, &scene.lines, &scene.points, 0.01).unwrap();
        assert!(report.count_mismatch);
        assert_eq!(report.matches.len(), 1);
        assert!(matches!(
            fitting_error(&[], &scene.lines, &scene.points, 0.01),
            Err(Error::NoStructures)
        ));
    }
}
