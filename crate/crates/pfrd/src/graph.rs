//! Sparse payoff-matrix representation and objective/gradient evaluation.
//!
//! A [`SparseGraph`] stores a symmetric, nonnegatively weighted, loop-free
//! graph in compressed adjacency (CSR) form. The quadratic form
//! `f(x) = x' W x` and the direction `g(x) = W x` it induces are what every
//! replicator iteration consumes; hypergraphs generalize `f` to a
//! multilinear polynomial.

use std::collections::HashSet;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Immutable undirected graph with nonnegative edge weights, stored in
/// compressed adjacency form. Doubles as the payoff matrix of the dynamic.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGraph {
    n: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    weights: Vec<f64>,
    total_weight: f64,
}

impl SparseGraph {
    /// Builds a graph from unordered endpoint pairs. Each undirected edge
    /// appears once in `edges`; both directions are materialized internally.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// negative weights.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        for &(u, v, w) in edges {
            if u >= n {
                return Err(Error::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { v: u });
            }
            if w < 0.0 || !w.is_finite() {
                return Err(Error::NegativeWeight { u, v, w });
            }
        }

        let mut degree = vec![0usize; n];
        for &(u, v, _) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut neighbors = vec![0u32; offsets[n]];
        let mut weights = vec![0f64; offsets[n]];
        let mut cursor = offsets.clone();
        let mut total_weight = 0.0;
        for &(u, v, w) in edges {
            neighbors[cursor[u]] = v as u32;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            neighbors[cursor[v]] = u as u32;
            weights[cursor[v]] = w;
            cursor[v] += 1;
            total_weight += w;
        }

        // Sort each adjacency run by neighbor index and detect duplicates.
        let mut graph = SparseGraph {
            n,
            offsets,
            neighbors,
            weights,
            total_weight,
        };
        for u in 0..n {
            let lo = graph.offsets[u];
            let hi = graph.offsets[u + 1];
            let mut run: Vec<(u32, f64)> = graph.neighbors[lo..hi]
                .iter()
                .copied()
                .zip(graph.weights[lo..hi].iter().copied())
                .collect();
            run.sort_unstable_by_key(|&(v, _)| v);
            for pair in run.windows(2) {
                if pair[0].0 == pair[1].0 {
                    return Err(Error::DuplicateEdge {
                        u,
                        v: pair[0].0 as usize,
                    });
                }
            }
            for (k, (v, w)) in run.into_iter().enumerate() {
                graph.neighbors[lo + k] = v;
                graph.weights[lo + k] = w;
            }
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sum of w_ij over unordered edges.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        self.weights[lo..hi].iter().sum()
    }

    /// Neighbors of `v` with weights, ascending by neighbor index.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (lo, hi) = (self.offsets[v], self.offsets[v + 1]);
        self.neighbors[lo..hi]
            .iter()
            .zip(self.weights[lo..hi].iter())
            .map(|(&u, &w)| (u as usize, w))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (lo, hi) = (self.offsets[u], self.offsets[u + 1]);
        self.neighbors[lo..hi].binary_search(&(v as u32)).is_ok()
    }

    /// True when every edge carries weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.weights.iter().all(|&w| w == 1.0)
    }

    /// All undirected edges, each reported once with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }
}

/// Parses the plain-text edge list format: one `u v` or `u v w` per line,
/// 0-based vertex ids, optional positive weight (default 1.0), `#` comments
/// and blank lines ignored. The vertex count is the largest id plus one.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<SparseGraph> {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_vertex = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'u v' or 'u v w', got {:?}", content),
            });
        }
        let u: usize = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad vertex id {:?}", fields[0]),
        })?;
        let v: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad vertex id {:?}", fields[1]),
        })?;
        let w: f64 = if fields.len() == 3 {
            fields[2].parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad weight {:?}", fields[2]),
            })?
        } else {
            1.0
        };
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop on vertex {}", u),
            });
        }
        if w < 0.0 || !w.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("negative weight {} on edge ({}, {})", w, u, v),
            });
        }
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v, w));
    }
    let n = if edges.is_empty() { 0 } else { max_vertex + 1 };
    // from_edges re-detects duplicates; detect here to report both
    // orientations as the same duplicate.
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(edges.len());
    for &(u, v, _) in &edges {
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::DuplicateEdge { u: key.0, v: key.1 });
        }
    }
    SparseGraph::from_edges(n, &edges)
}

/// Builds the Gaussian-kernel similarity graph of a point cloud:
/// w_ij = exp(-d^2(p_i, p_j) / h^2) with Euclidean d, zero diagonal.
/// Weights below `truncation` are omitted when it is given.
pub fn build_kernel_graph(
    points: &[Vec<f64>],
    bandwidth: f64,
    truncation: Option<f64>,
) -> Result<SparseGraph> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            required: 2,
            got: points.len(),
        });
    }
    if bandwidth <= 0.0 || !bandwidth.is_finite() {
        return Err(Error::NonPositiveBandwidth(bandwidth));
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    let cut = truncation.unwrap_or(0.0).max(0.0);
    let h2 = bandwidth * bandwidth;
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d2: f64 = points[i]
                .iter()
                .zip(points[j].iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let w = (-d2 / h2).exp();
            if truncation.is_some() {
                if w >= cut && w > 0.0 {
                    edges.push((i, j, w));
                }
            } else if w > 0.0 {
                edges.push((i, j, w));
            }
        }
    }
    SparseGraph::from_edges(points.len(), &edges)
}

/// Uniform hypergraph of order `d >= 2` with positive hyperedge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    order: usize,
    edges: Vec<(Vec<usize>, f64)>,
}

impl Hypergraph {
    pub fn new(n: usize, order: usize, edges: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidConfig(format!(
                "hypergraph order must be >= 2, got {order}"
            )));
        }
        for (vertices, w) in &edges {
            if vertices.len() != order {
                return Err(Error::InvalidConfig(format!(
                    "hyperedge {:?} does not have order {}",
                    vertices, order
                )));
            }
            if *w <= 0.0 || !w.is_finite() {
                return Err(Error::NonPositiveHyperedgeWeight { w: *w });
            }
            for &v in vertices {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            let mut sorted = vertices.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|p| p[0] == p[1]) {
                return Err(Error::RepeatedVertex {
                    edge: vertices.clone(),
                });
            }
        }
        Ok(Hypergraph { n, order, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(Vec<usize>, f64)] {
        &self.edges
    }
}

/// An objective with a multiplicative-update direction: exposes `f(x)` and
/// the direction vector `g(x)` the replicator step multiplies into the
/// state. For graphs `g = Wx`; in general `g` is the gradient of `f`
/// divided by the polynomial degree, a uniform positive factor the
/// projection is invariant to.
pub trait GradientField {
    fn dims(&self) -> usize;

    /// Writes `g(x)` into `grad` and returns `f(x)`.
    ///
    /// Callers guarantee `x` is nonnegative and of length `dims()`; this is
    /// the unchecked hot path of the iteration. Cost is linear in the edges
    /// incident to the support of `x`.
    fn evaluate_into(&self, x: &[f64], grad: &mut [f64]) -> f64;
}

impl GradientField for SparseGraph {
    fn dims(&self) -> usize {
        self.n
    }

    fn evaluate_into(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        assert_eq!(grad.len(), self.n);
        grad.fill(0.0);
        // Scatter from the support only: zero components cost nothing,
        // which is what makes the late, small-support iterations cheap.
        for u in 0..self.n {
            let xu = x[u];
            if xu == 0.0 {
                continue;
            }
            let (lo, hi) = (self.offsets[u], self.offsets[u + 1]);
            for k in lo..hi {
                grad[self.neighbors[k] as usize] += self.weights[k] * xu;
            }
        }
        x.iter().zip(grad.iter()).map(|(a, b)| a * b).sum()
    }
}

impl GradientField for Hypergraph {
    fn dims(&self) -> usize {
        self.n
    }

    fn evaluate_into(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        assert_eq!(grad.len(), self.n);
        grad.fill(0.0);
        let scale = factorial(self.order - 1);
        for (vertices, w) in &self.edges {
            // grad_i += (d-1)! * w * prod_{j != i} x_j, computed without
            // division so zero components are handled exactly.
            for (slot, &i) in vertices.iter().enumerate() {
                let mut partial = scale * *w;
                for (other, &j) in vertices.iter().enumerate() {
                    if other != slot {
                        partial *= x[j];
                    }
                }
                grad[i] += partial;
            }
        }
        // f is degree-d homogeneous and g = grad(f)/d, so x . g = f.
        x.iter().zip(grad.iter()).map(|(a, b)| a * b).sum()
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn check_vector(n: usize, x: &[f64]) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    for (i, &v) in x.iter().enumerate() {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::NegativeEntry { index: i, value: v });
        }
    }
    Ok(())
}

/// Evaluates the quadratic form on a graph: `f = sum_ij w_ij x_i x_j`
/// (each unordered edge contributes twice) and `g = Wx`.
pub fn evaluate_quadratic(graph: &SparseGraph, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    check_vector(graph.vertex_count(), x)?;
    let mut grad = vec![0.0; graph.vertex_count()];
    let f = graph.evaluate_into(x, &mut grad);
    Ok((f, grad))
}

/// Evaluates the multilinear form on a hypergraph of order d:
/// `f = d! * sum_e w_e prod_{i in e} x_i` and
/// `g_i = (d-1)! * sum_{e : i in e} w_e prod_{j in e, j != i} x_j`,
/// so the order-2 case reproduces [`evaluate_quadratic`] exactly.
pub fn evaluate_poly(hypergraph: &Hypergraph, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    check_vector(hypergraph.vertex_count(), x)?;
    let mut grad = vec![0.0; hypergraph.vertex_count()];
    let f = hypergraph.evaluate_into(x, &mut grad);
    Ok((f, grad))
}

/// Total weight of edges with both endpoints in `members` (each unordered
/// edge counted once).
pub fn subgraph_weight(graph: &SparseGraph, members: &[usize]) -> Result<f64> {
    let n = graph.vertex_count();
    let mut inside = vec![false; n];
    for &v in members {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        inside[v] = true;
    }
    let mut sum = 0.0;
    for &u in members {
        if !inside[u] {
            continue; // duplicate member already visited
        }
        for (v, w) in graph.neighbors(u) {
            if u < v && inside[v] {
                sum += w;
            }
        }
    }
    Ok(sum)
}
