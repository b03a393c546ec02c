//! Synthetic instance generators for the benchmark experiments: planted
//! cliques inside degree-shaped noise graphs, Gaussian cluster clouds with
//! uniform outliers, and noisy multi-line scenes.
//!
//! All generators are pure functions of their seed.

use std::collections::HashSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::SparseGraph;
use crate::structfit::Line;

/// Degree-distribution family for the noise graph. Samples are rescaled
/// to the target edge count, so each variant only fixes the shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegreeDistribution {
    /// Degrees spread uniformly across `band` (multiples of the mean).
    Uniform { band: (f64, f64) },
    /// Binomial degrees, the Erdos-Renyi equivalent at matched density.
    Binomial,
    /// Geometric-law tail with the given ratio per degree increment.
    Geometric { ratio: f64 },
    /// Power-law tail with the given exponent.
    PowerLaw { exponent: f64 },
}

impl DegreeDistribution {
    pub fn uniform() -> Self {
        DegreeDistribution::Uniform { band: (0.5, 1.5) }
    }

    pub fn binomial() -> Self {
        DegreeDistribution::Binomial
    }

    pub fn geometric() -> Self {
        DegreeDistribution::Geometric { ratio: 0.97 }
    }

    pub fn power_law() -> Self {
        DegreeDistribution::PowerLaw { exponent: 2.5 }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DegreeDistribution::Uniform { .. } => "uniform",
            DegreeDistribution::Binomial => "binomial",
            DegreeDistribution::Geometric { .. } => "geometric",
            DegreeDistribution::PowerLaw { .. } => "power-law",
        }
    }
}

/// Parameters of a planted-clique instance: a complete graph on
/// `clique_size` vertices, a noise graph on `noise_size` vertices whose
/// density and degree shape are controlled, and uniformly random cross
/// edges between the two.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedCliqueSpec {
    pub clique_size: usize,
    pub noise_size: usize,
    /// Fraction of noise-graph vertex pairs that carry an edge.
    pub noise_density: f64,
    /// Fraction of clique-to-noise vertex pairs that carry an edge.
    pub cross_density: f64,
    pub distribution: DegreeDistribution,
    pub seed: u64,
}

impl PlantedCliqueSpec {
    /// The benchmark setting: 100-clique in 900 noise vertices with
    /// matched average degrees.
    pub fn benchmark(distribution: DegreeDistribution, seed: u64) -> Self {
        PlantedCliqueSpec {
            clique_size: 100,
            noise_size: 900,
            noise_density: 0.11,
            cross_density: 0.005,
            distribution,
            seed,
        }
    }

    /// A scaled-down instance that preserves the benchmark's two side
    /// conditions: the clique and noise average degrees stay approximately
    /// equal, and the cross-degree of a clique vertex keeps the same
    /// proportion to its internal degree.
    pub fn scaled(
        clique_size: usize,
        noise_size: usize,
        distribution: DegreeDistribution,
        seed: u64,
    ) -> Self {
        let m1 = clique_size as f64;
        let m2 = noise_size as f64;
        // benchmark proportion: beta * m2 / (m1 - 1) = 4.5 / 99
        let cross_density = (m1 - 1.0) / (22.0 * m2);
        let noise_density =
            ((m1 - 1.0) + cross_density * m2 - cross_density * m1) / (m2 - 1.0).max(1.0);
        PlantedCliqueSpec {
            clique_size,
            noise_size,
            noise_density,
            cross_density,
            distribution,
            seed,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.clique_size + self.noise_size
    }

    fn noise_edge_target(&self) -> usize {
        let pairs = (self.noise_size * self.noise_size.saturating_sub(1) / 2) as f64;
        (self.noise_density * pairs).round_ties_even() as usize
    }

    fn cross_edge_target(&self) -> usize {
        let pairs = (self.clique_size * self.noise_size) as f64;
        (self.cross_density * pairs).round_ties_even() as usize
    }

    fn validate(&self) -> Result<()> {
        if self.clique_size == 0 {
            return Err(Error::InvalidConfig("clique size must be positive".into()));
        }
        if self.noise_density < 0.0 || self.cross_density < 0.0 {
            return Err(Error::InvalidConfig("densities must be nonnegative".into()));
        }
        let max_noise = self.noise_size * self.noise_size.saturating_sub(1) / 2;
        if self.noise_edge_target() > max_noise {
            return Err(Error::InvalidConfig(format!(
                "noise density {} exceeds the available {} pairs",
                self.noise_density, max_noise
            )));
        }
        if self.cross_edge_target() > self.clique_size * self.noise_size {
            return Err(Error::InvalidConfig(format!(
                "cross density {} exceeds the available pairs",
                self.cross_density
            )));
        }
        Ok(())
    }
}

/// Generates a planted-clique instance. Returns the graph and the planted
/// vertex set (always 0..clique_size).
///
/// The noise graph realizes exactly the rounded edge count: target degrees
/// are sampled from the requested family, rescaled to sum to twice the
/// edge count, rounded sum-preservingly with a cap at noise_size - 1, and
/// realized by drawing endpoints proportionally to residual degrees with
/// capped retries; a stalled realization resamples the degrees.
pub fn gen_planted_clique(spec: &PlantedCliqueSpec) -> Result<(SparseGraph, Vec<usize>)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m1 = spec.clique_size;
    let m2 = spec.noise_size;
    let n = m1 + m2;

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..m1 {
        for j in (i + 1)..m1 {
            edges.push((i, j, 1.0));
        }
    }

    let noise_edges = spec.noise_edge_target();
    if noise_edges > 0 {
        let realized = realize_noise_graph(m2, noise_edges, spec.distribution, &mut rng)?;
        for (u, v) in realized {
            edges.push((m1 + u, m1 + v, 1.0));
        }
    }

    let cross_edges = spec.cross_edge_target();
    if cross_edges > 0 {
        let mut chosen: HashSet<(usize, usize)> = HashSet::with_capacity(cross_edges);
        while chosen.len() < cross_edges {
            let u = rng.gen_range(0..m1);
            let v = rng.gen_range(0..m2);
            chosen.insert((u, v));
        }
        let mut ordered: Vec<(usize, usize)> = chosen.into_iter().collect();
        ordered.sort_unstable();
        for (u, v) in ordered {
            edges.push((u, m1 + v, 1.0));
        }
    }

    let graph = SparseGraph::from_edges(n, &edges)?;
    Ok((graph, (0..m1).collect()))
}

fn realize_noise_graph(
    m2: usize,
    edge_count: usize,
    distribution: DegreeDistribution,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(usize, usize)>> {
    const RESAMPLE_LIMIT: usize = 50;
    for _ in 0..RESAMPLE_LIMIT {
        let raw = sample_degree_shape(m2, edge_count, distribution, rng);
        let degrees = match round_degrees(&raw, 2 * edge_count, m2 - 1) {
            Some(d) => d,
            None => continue,
        };
        if let Some(edges) = place_edges(&degrees, rng) {
            return Ok(edges);
        }
    }
    Err(Error::UnrealizableDegrees {
        attempts: RESAMPLE_LIMIT,
    })
}

fn sample_degree_shape(
    m2: usize,
    edge_count: usize,
    distribution: DegreeDistribution,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let mean_degree = 2.0 * edge_count as f64 / m2 as f64;
    match distribution {
        DegreeDistribution::Uniform { band } => {
            (0..m2).map(|_| rng.gen_range(band.0..band.1)).collect()
        }
        DegreeDistribution::Binomial => {
            let trials = (m2 - 1) as u64;
            let p = (mean_degree / trials as f64).min(1.0);
            let dist = Binomial::new(trials, p).expect("valid binomial");
            (0..m2).map(|_| dist.sample(rng) as f64).collect()
        }
        DegreeDistribution::Geometric { ratio } => (0..m2)
            .map(|_| {
                let u: f64 = rng.gen();
                1.0 + ((1.0 - u).ln() / ratio.ln()).floor()
            })
            .collect(),
        DegreeDistribution::PowerLaw { exponent } => (0..m2)
            .map(|_| {
                let u: f64 = rng.gen();
                (1.0 - u).powf(-1.0 / (exponent - 1.0)).min(m2 as f64)
            })
            .collect(),
    }
}

/// Rounds nonnegative targets to integers that sum to `total`, never
/// exceeding `cap`: floor everything, then hand out the remaining units by
/// largest fractional part among entries with spare capacity.
fn round_degrees(raw: &[f64], total: usize, cap: usize) -> Option<Vec<usize>> {
    if cap == 0 || raw.is_empty() {
        return None;
    }
    let raw_sum: f64 = raw.iter().sum();
    if raw_sum <= 0.0 {
        return None;
    }
    let scale = total as f64 / raw_sum;
    let scaled: Vec<f64> = raw.iter().map(|&d| (d * scale).min(cap as f64)).collect();
    let mut degrees: Vec<usize> = scaled.iter().map(|&d| d.floor() as usize).collect();
    let mut assigned: usize = degrees.iter().sum();
    if assigned > total {
        return None;
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = scaled[a] - scaled[a].floor();
        let fb = scaled[b] - scaled[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    let mut cursor = 0;
    while assigned < total {
        let mut progressed = false;
        for _ in 0..order.len() {
            let i = order[cursor % order.len()];
            cursor += 1;
            if degrees[i] < cap {
                degrees[i] += 1;
                assigned += 1;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return None; // every vertex is at the cap
        }
    }
    Some(degrees)
}

/// Realizes a degree sequence as a simple graph by repeatedly drawing two
/// stubs at random (which weights endpoints by residual degree) and
/// rejecting self-loops and duplicates. When the tail of the process gets
/// cornered (the remaining stubs sit on mutually saturated vertices), a
/// random degree-preserving rewire of an existing edge absorbs the stuck
/// pair. Returns None if even rewiring stalls.
fn place_edges(degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let key = |u: u32, v: u32| ((u.min(v) as u64) << 32) | u.max(v) as u64;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();

    // Saturated vertices (residual degree equal to the number of other
    // active vertices) have a forced edge set; peel them first, because
    // random placement can never finish around them.
    let mut residual = degrees.to_vec();
    loop {
        let active: Vec<usize> = (0..residual.len()).filter(|&v| residual[v] > 0).collect();
        if active.len() < 2 {
            break;
        }
        for &v in &active {
            if residual[v] > active.len() - 1 {
                return None; // not graphical
            }
        }
        let Some(&hub) = active.iter().find(|&&v| residual[v] == active.len() - 1) else {
            break;
        };
        for &u in &active {
            if u == hub {
                continue;
            }
            debug_assert!(!seen.contains(&key(hub as u32, u as u32)));
            seen.insert(key(hub as u32, u as u32));
            edges.push((hub as u32, u as u32));
            residual[u] -= 1;
        }
        residual[hub] = 0;
    }

    let mut stubs: Vec<u32> = Vec::with_capacity(residual.iter().sum());
    for (v, &d) in residual.iter().enumerate() {
        stubs.extend(std::iter::repeat(v as u32).take(d));
    }
    debug_assert!(stubs.len() % 2 == 0);
    const DRAW_ATTEMPTS: usize = 200;
    const REWIRE_ATTEMPTS: usize = 2000;
    while stubs.len() >= 2 {
        let mut placed = false;
        for _ in 0..DRAW_ATTEMPTS {
            let a = rng.gen_range(0..stubs.len());
            let mut b = rng.gen_range(0..stubs.len() - 1);
            if b >= a {
                b += 1;
            }
            let (u, v) = (stubs[a], stubs[b]);
            if u != v && !seen.contains(&key(u, v)) {
                seen.insert(key(u, v));
                edges.push((u, v));
                stubs.swap_remove(a.max(b));
                stubs.swap_remove(a.min(b));
                placed = true;
                break;
            }
        }
        if placed {
            continue;
        }
        // Rewire: consume stubs u, v by splitting an existing edge (x, y)
        // into (u, x) and (v, y); every degree is preserved.
        let a = rng.gen_range(0..stubs.len());
        let mut b = rng.gen_range(0..stubs.len() - 1);
        if b >= a {
            b += 1;
        }
        let (u, v) = (stubs[a], stubs[b]);
        let mut rewired = false;
        for _ in 0..REWIRE_ATTEMPTS {
            let e = rng.gen_range(0..edges.len());
            let (mut x, mut y) = edges[e];
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut x, &mut y);
            }
            if x == u || x == v || y == u || y == v {
                continue;
            }
            if seen.contains(&key(u, x)) || seen.contains(&key(v, y)) {
                continue;
            }
            seen.remove(&key(x, y));
            edges.swap_remove(e);
            seen.insert(key(u, x));
            edges.push((u, x));
            seen.insert(key(v, y));
            edges.push((v, y));
            stubs.swap_remove(a.max(b));
            stubs.swap_remove(a.min(b));
            rewired = true;
            break;
        }
        if !rewired {
            return None;
        }
    }
    Some(
        edges
            .into_iter()
            .map(|(u, v)| (u.min(v) as usize, u.max(v) as usize))
            .collect(),
    )
}

/// One Gaussian blob: point count, mean, and covariance (dim x dim).
#[derive(Debug, Clone)]
pub struct GaussianClusterSpec {
    pub count: usize,
    pub mean: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
}

/// Samples labeled points: cluster i gets label i + 1, uniform outliers in
/// the axis-aligned box get label 0. Cluster points come first, in spec
/// order.
pub fn gen_gaussian_clusters(
    clusters: &[GaussianClusterSpec],
    outliers: usize,
    bounds: &[(f64, f64)],
    seed: u64,
) -> Result<(Vec<Vec<f64>>, Vec<usize>)> {
    let dim = if let Some(first) = clusters.first() {
        first.mean.len()
    } else {
        bounds.len()
    };
    if dim == 0 {
        return Err(Error::InvalidConfig("zero-dimensional points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (idx, cluster) in clusters.iter().enumerate() {
        if cluster.mean.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: cluster.mean.len(),
            });
        }
        let chol = cholesky_psd(&cluster.covariance, dim)?;
        for _ in 0..cluster.count {
            let z: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let mut p = cluster.mean.clone();
            for r in 0..dim {
                for c in 0..=r {
                    p[r] += chol[r][c] * z[c];
                }
            }
            points.push(p);
            labels.push(idx + 1);
        }
    }
    if outliers > 0 {
        if bounds.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bounds.len(),
            });
        }
        for _ in 0..outliers {
            let p: Vec<f64> = bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
            points.push(p);
            labels.push(0);
        }
    }
    Ok((points, labels))
}

/// Cholesky factor of a positive semidefinite matrix; zero pivots are
/// tolerated so degenerate (including all-zero) covariances are allowed.
fn cholesky_psd(a: &[Vec<f64>], dim: usize) -> Result<Vec<Vec<f64>>> {
    if a.len() != dim || a.iter().any(|row| row.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: a.len(),
        });
    }
    let mut l = vec![vec![0.0; dim]; dim];
    for j in 0..dim {
        let mut d = a[j][j];
        for k in 0..j {
            d -= l[j][k] * l[j][k];
        }
        if d < -1e-10 {
            return Err(Error::NotPositiveSemidefinite);
        }
        l[j][j] = d.max(0.0).sqrt();
        for i in (j + 1)..dim {
            if l[j][j] <= 1e-12 {
                l[i][j] = 0.0;
                continue;
            }
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            l[i][j] = s / l[j][j];
        }
    }
    Ok(l)
}

/// A noisy multi-line scene: three random lines inside [-1.5, 1.5]^2, each
/// carrying `inliers_per_line` points perturbed by isotropic Gaussian
/// noise of scale sigma, plus uniform outliers. Labels: 1..=3 for the
/// lines, 0 for outliers.
#[derive(Debug, Clone)]
pub struct LineScene {
    pub points: Vec<[f64; 2]>,
    pub lines: Vec<Line>,
    pub labels: Vec<usize>,
}

pub const LINE_SCENE_HALF_EXTENT: f64 = 1.5;

pub fn gen_lines(inliers_per_line: usize, outliers: usize, sigma: f64, seed: u64) -> LineScene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = LINE_SCENE_HALF_EXTENT;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut lines = Vec::new();
    for line_idx in 0..3 {
        let (line, lo, hi, anchor, dir) = loop {
            let theta = rng.gen_range(0.0..std::f64::consts::PI);
            let anchor = [rng.gen_range(-half..half), rng.gen_range(-half..half)];
            let dir = [theta.cos(), theta.sin()];
            if let Some((lo, hi)) = clip_to_box(anchor, dir, half) {
                if hi - lo >= half {
                    let normal = [-dir[1], dir[0]];
                    let c = -(normal[0] * anchor[0] + normal[1] * anchor[1]);
                    break (Line::new(normal[0], normal[1], c), lo, hi, anchor, dir);
                }
            }
        };
        for _ in 0..inliers_per_line {
            let t = rng.gen_range(lo..hi);
            let nx: f64 = rng.sample(StandardNormal);
            let ny: f64 = rng.sample(StandardNormal);
            points.push([
                anchor[0] + t * dir[0] + sigma * nx,
                anchor[1] + t * dir[1] + sigma * ny,
            ]);
            labels.push(line_idx + 1);
        }
        lines.push(line);
    }
    for _ in 0..outliers {
        points.push([rng.gen_range(-half..half), rng.gen_range(-half..half)]);
        labels.push(0);
    }
    LineScene {
        points,
        lines,
        labels,
    }
}

/// Parameter range of the segment anchor + t * dir inside the centered box
/// of the given half extent, or None if the line misses it.
fn clip_to_box(anchor: [f64; 2], dir: [f64; 2], half: f64) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for axis in 0..2 {
        if dir[axis].abs() < 1e-12 {
            if anchor[axis].abs() > half {
                return None;
            }
            continue;
        }
        let t1 = (-half - anchor[axis]) / dir[axis];
        let t2 = (half - anchor[axis]) / dir[axis];
        lo = lo.max(t1.min(t2));
        hi = hi.min(t1.max(t2));
    }
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// A small fixed demonstration graph: a 4-clique of low-degree vertices, a
/// 3-clique whose two last members carry many extra edges into a noise
/// ring, so degree-following dynamics are pulled toward the 3-clique while
/// the 4-clique is the global optimum.
pub fn degree_bias_instance() -> (SparseGraph, Vec<usize>, Vec<usize>) {
    let large = vec![0usize, 1, 2, 3];
    let small = vec![4usize, 5, 6];
    let mut edges = Vec::new();
    for i in 0..4 {
        for j in (i + 1)..4 {
            edges.push((i, j, 1.0));
        }
    }
    edges.push((4, 5, 1.0));
    edges.push((4, 6, 1.0));
    edges.push((5, 6, 1.0));
    // leaves hanging off vertices 5 and 6 inflate their degrees without
    // forming any competitive structure of their own
    for v in 7..11 {
        edges.push((5, v, 1.0));
    }
    for v in 11..15 {
        edges.push((6, v, 1.0));
    }
    // a light bridge keeps the graph connected
    edges.push((0, 7, 1.0));
    let graph = SparseGraph::from_edges(15, &edges).unwrap();
    (graph, large, small)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::oracle_max_clique;

    #[test]
    fn benchmark_instance_has_exact_edge_counts() {
        let spec = PlantedCliqueSpec::benchmark(DegreeDistribution::binomial(), 42);
        assert_eq!(spec.noise_edge_target(), 44_500);
        assert_eq!(spec.cross_edge_target(), 450);
        let (graph, planted) = gen_planted_clique(&spec).unwrap();
        assert_eq!(graph.vertex_count(), 1000);
        assert_eq!(planted.len(), 100);
        assert_eq!(graph.edge_count(), 4950 + 44_500 + 450);
    }

    #[test]
    fn zero_cross_density_disconnects_the_parts() {
        let mut spec = PlantedCliqueSpec::scaled(5, 20, DegreeDistribution::binomial(), 7);
        spec.cross_density = 0.0;
        let (graph, _) = gen_planted_clique(&spec).unwrap();
        for v in 0..5 {
            assert!(graph.neighbors(v).all(|(u, _)| u < 5));
        }
    }

    #[test]
    fn empty_noise_part_yields_the_bare_clique() {
        let spec = PlantedCliqueSpec {
            clique_size: 4,
            noise_size: 0,
            noise_density: 0.0,
            cross_density: 0.0,
            distribution: DegreeDistribution::binomial(),
            seed: 1,
        };
        let (graph, planted) = gen_planted_clique(&spec).unwrap();
        assert_eq!(graph.vertex_count(), 4);
        assert_eq!(graph.edge_count(), 6);
        assert_eq!(planted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn generation_is_deterministic() {
        for dist in [
            DegreeDistribution::uniform(),
            DegreeDistribution::binomial(),
            DegreeDistribution::geometric(),
            DegreeDistribution::power_law(),
        ] {
            let spec = PlantedCliqueSpec::scaled(12, 60, dist, 99);
            let (g1, _) = gen_planted_clique(&spec).unwrap();
            let (g2, _) = gen_planted_clique(&spec).unwrap();
            assert_eq!(g1, g2, "distribution {dist:?} not deterministic");
        }
    }

    #[test]
    fn scaled_instances_keep_the_plant_maximum() {
        for (i, dist) in [
            DegreeDistribution::uniform(),
            DegreeDistribution::binomial(),
            DegreeDistribution::geometric(),
            DegreeDistribution::power_law(),
        ]
        .into_iter()
        .enumerate()
        {
            let spec = PlantedCliqueSpec::scaled(12, 60, dist, 1000 + i as u64);
            let (graph, planted) = gen_planted_clique(&spec).unwrap();
            let clique = oracle_max_clique(&graph).unwrap();
            assert_eq!(clique, planted, "plant not maximum under {dist:?}");
        }
    }

    #[test]
    fn degree_shapes_have_their_signatures() {
        let spec = PlantedCliqueSpec::benchmark(DegreeDistribution::power_law(), 5);
        let (graph, _) = gen_planted_clique(&spec).unwrap();
        let mut noise_degrees: Vec<usize> = (100..1000)
            .map(|v| graph.neighbors(v).filter(|&(u, _)| u >= 100).count())
            .collect();
        noise_degrees.sort_unstable();
        let median = noise_degrees[noise_degrees.len() / 2];
        let max = *noise_degrees.last().unwrap();
        assert!(
            max >= 5 * median.max(1),
            "power-law signature missing: max {max}, median {median}"
        );

        let spec = PlantedCliqueSpec::benchmark(DegreeDistribution::uniform(), 5);
        let (graph, _) = gen_planted_clique(&spec).unwrap();
        let noise_degrees: Vec<usize> = (100..1000)
            .map(|v| graph.neighbors(v).filter(|&(u, _)| u >= 100).count())
            .collect();
        let min = *noise_degrees.iter().min().unwrap() as f64;
        let max = *noise_degrees.iter().max().unwrap() as f64;
        assert!(
            max / min.max(1.0) < 4.0,
            "uniform band violated: {min}..{max}"
        );
    }

    #[test]
    fn gaussian_clusters_label_points() {
        let clusters = vec![
            GaussianClusterSpec {
                count: 10,
                mean: vec![0.0, 0.0],
                covariance: vec![vec![0.01, 0.0], vec![0.0, 0.01]],
            },
            GaussianClusterSpec {
                count: 5,
                mean: vec![5.0, 5.0],
                covariance: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            },
        ];
        let (points, labels) =
            gen_gaussian_clusters(&clusters, 3, &[(-1.0, 6.0), (-1.0, 6.0)], 11).unwrap();
        assert_eq!(points.len(), 18);
        assert_eq!(labels.iter().filter(|&&l| l == 1).count(), 10);
        assert_eq!(labels.iter().filter(|&&l| l == 2).count(), 5);
        assert_eq!(labels.iter().filter(|&&l| l == 0).count(), 3);
        // zero covariance repeats the mean exactly
        for (p, &l) in points.iter().zip(labels.iter()) {
            if l == 2 {
                assert_eq!(p, &vec![5.0, 5.0]);
            }
        }
    }

    #[test]
    fn indefinite_covariance_is_rejected() {
        let clusters = vec![GaussianClusterSpec {
            count: 1,
            mean: vec![0.0, 0.0],
            covariance: vec![vec![-1.0, 0.0], vec![0.0, 1.0]],
        }];
        assert!(matches!(
            gen_gaussian_clusters(&clusters, 0, &[], 1),
            Err(Error::NotPositiveSemidefinite)
        ));
    }

    #[test]
    fn line_scene_shapes() {
        let scene = gen_lines(50, 30, 0.0, 3);
        assert_eq!(scene.points.len(), 180);
        assert_eq!(scene.lines.len(), 3);
        // noiseless points lie exactly on their labeled line
        for (p, &l) in scene.points.iter().zip(scene.labels.iter()) {
            if l > 0 {
                assert!(scene.lines[l - 1].deviation(*p) < 1e-12);
            }
        }
        for line in &scene.lines {
            assert!((line.a * line.a + line.b * line.b - 1.0).abs() < 1e-12);
        }
        let outlier_free = gen_lines(10, 0, 0.01, 4);
        assert_eq!(outlier_free.points.len(), 30);
        assert!(outlier_free.labels.iter().all(|&l| l > 0));
    }

    #[test]
    fn line_scene_is_deterministic() {
        let a = gen_lines(20, 10, 0.02, 8);
        let b = gen_lines(20, 10, 0.02, 8);
        assert_eq!(a.points, b.points);
        assert_eq!(a.labels, b.labels);
    }
}
