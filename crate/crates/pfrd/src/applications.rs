//! Graph-analysis applications of the path dynamic: thresholded cluster
//! extraction, maximum clique search, densest k-subgraph search, and
//! density-region shrink sequences over kernel graphs.

use crate::error::{Error, Result};
use crate::graph::{build_kernel_graph, subgraph_weight, SparseGraph};
use crate::replicator::{run_pfrd, IterationConfig, PathSchedule, SolutionPath, StateVector};

/// Vertices whose state component exceeds the membership threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Member vertices, ascending.
    pub members: Vec<usize>,
    /// Cap the source state was converged under.
    pub epsilon: f64,
    /// Membership threshold used.
    pub delta1: f64,
}

/// Thresholds a state into a cluster: members are the vertices with
/// component strictly above `delta1`. The conventional threshold is 1/n.
pub fn extract_cluster(state: &StateVector, delta1: f64) -> Result<Cluster> {
    if delta1 < 0.0 || !delta1.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "delta1 must be nonnegative, got {delta1}"
        )));
    }
    let members: Vec<usize> = state
        .components()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v > delta1)
        .map(|(i, _)| i)
        .collect();
    if members.is_empty() {
        return Err(Error::EmptyCluster { delta1 });
    }
    Ok(Cluster {
        members,
        epsilon: state.epsilon(),
        delta1,
    })
}

/// Result of a clique extraction run.
#[derive(Debug, Clone)]
pub struct CliqueResult {
    pub members: Vec<usize>,
    /// Objective value of the converged final state.
    pub objective: f64,
    /// 1 - 1/|members|: the objective a clique of this size attains at its
    /// uniform indicator.
    pub clique_objective: f64,
    pub converged: bool,
}

/// Runs the path dynamic to cap 1, thresholds the final state, and checks
/// the extracted vertices are pairwise adjacent. On unweighted graphs the
/// global optimum corresponds to the maximum clique, so a dense schedule
/// makes this a maximum-clique heuristic.
pub fn find_clique_pfrd(
    graph: &SparseGraph,
    schedule: &PathSchedule,
    cfg: &IterationConfig,
    delta1: Option<f64>,
) -> Result<CliqueResult> {
    if !graph.is_unweighted() {
        return Err(Error::WeightedGraph);
    }
    let last = *schedule
        .epsilons()
        .last()
        .ok_or_else(|| Error::InvalidSchedule("schedule is empty".into()))?;
    if last != 1.0 {
        return Err(Error::InvalidSchedule(format!(
            "clique extraction needs the schedule to end at 1, got {last}"
        )));
    }
    let path = run_pfrd(graph, schedule, cfg)?;
    let final_entry = path.final_entry();
    let delta1 = delta1.unwrap_or(1.0 / graph.vertex_count() as f64);
    let cluster = extract_cluster(&final_entry.state, delta1)?;
    let members = cluster.members;
    for (idx, &u) in members.iter().enumerate() {
        for &v in &members[idx + 1..] {
            if !graph.has_edge(u, v) {
                return Err(Error::NotAClique { members });
            }
        }
    }
    let clique_objective = 1.0 - 1.0 / members.len() as f64;
    Ok(CliqueResult {
        members,
        objective: final_entry.objective,
        clique_objective,
        converged: final_entry.converged,
    })
}

/// A densest-k-subgraph candidate.
#[derive(Debug, Clone)]
pub struct DksResult {
    pub k: usize,
    /// The k vertices with the largest state components, ascending.
    pub members: Vec<usize>,
    /// Total edge weight inside the members.
    pub weight: f64,
    pub converged: bool,
}

/// Shared cap ladder for subgraph-size targets: every integer size from n
/// down to the smallest target on a coarse grid, plus the targets
/// themselves. Runs for different targets then share prefixes, so their
/// states agree at equal caps.
fn size_ladder(n: usize, targets: &[usize]) -> Result<PathSchedule> {
    let smallest = *targets.iter().min().expect("nonempty targets");
    let step = (n / 100).max(1);
    let mut ks: Vec<usize> = Vec::new();
    let mut k = n;
    while k > smallest {
        ks.push(k);
        k = k.saturating_sub(step);
    }
    ks.push(smallest);
    ks.extend_from_slice(targets);
    ks.sort_unstable();
    ks.dedup();
    let epsilons: Vec<f64> = ks.iter().rev().map(|&k| 1.0 / k as f64).collect();
    PathSchedule::explicit(epsilons)
}

fn top_k_members(state: &StateVector, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..state.dims()).collect();
    let x = state.components();
    order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).unwrap().then(a.cmp(&b)));
    let mut members: Vec<usize> = order.into_iter().take(k).collect();
    members.sort_unstable();
    members
}

/// Follows the path down to cap 1/k and takes the k largest components of
/// the converged state (ties broken by ascending vertex index).
pub fn densest_k_subgraph(graph: &SparseGraph, k: usize, cfg: &IterationConfig) -> Result<DksResult> {
    let results = densest_k_path(graph, &[k], cfg)?;
    Ok(results.into_iter().next().expect("one result"))
}

/// Candidates for several subgraph sizes from a single evolution: one
/// result per requested size, taken at the schedule entry whose cap is the
/// reciprocal of that size. Results are returned in the given order.
pub fn densest_k_path(
    graph: &SparseGraph,
    ks: &[usize],
    cfg: &IterationConfig,
) -> Result<Vec<DksResult>> {
    let n = graph.vertex_count();
    if ks.is_empty() {
        return Err(Error::InvalidConfig("no subgraph sizes requested".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &k in ks {
        if k == 0 || k > n {
            return Err(Error::InvalidSubgraphSize { k, n });
        }
        if !seen.insert(k) {
            return Err(Error::DuplicateSubgraphSize { k });
        }
    }
    let schedule = size_ladder(n, ks)?;
    let path = run_pfrd(graph, &schedule, cfg)?;
    let mut results = Vec::with_capacity(ks.len());
    for &k in ks {
        let target = 1.0 / k as f64;
        let entry = path
            .entries
            .iter()
            .find(|e| e.epsilon() == target)
            .expect("ladder contains every requested size");
        let members = top_k_members(&entry.state, k);
        let weight = subgraph_weight(graph, &members)?;
        results.push(DksResult {
            k,
            members,
            weight,
            converged: entry.converged,
        });
    }
    Ok(results)
}

/// Builds the Gaussian-kernel graph of a point cloud and follows the path
/// dynamic, thresholding every converged state: the cluster sequence is a
/// shrink process of the cloud's high-density regions.
pub fn density_shrink(
    points: &[Vec<f64>],
    bandwidth: f64,
    schedule: &PathSchedule,
    cfg: &IterationConfig,
    delta1: Option<f64>,
) -> Result<Vec<Cluster>> {
    let graph = build_kernel_graph(points, bandwidth, None)?;
    let delta1 = delta1.unwrap_or(1.0 / points.len() as f64);
    let path: SolutionPath = run_pfrd(&graph, schedule, cfg)?;
    path.entries
        .iter()
        .map(|entry| extract_cluster(&entry.state, delta1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_densest_k, oracle_max_clique};
    use crate::synth::{degree_bias_instance, GaussianClusterSpec};
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> SparseGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j, 1.0));
            }
        }
        SparseGraph::from_edges(n, &edges).unwrap()
    }

    fn k4_with_pendant() -> SparseGraph {
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((i, j, 1.0));
            }
        }
        edges.push((3, 4, 1.0));
        SparseGraph::from_edges(5, &edges).unwrap()
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> SparseGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen_bool(p) {
                    edges.push((i, j, 1.0));
                }
            }
        }
        SparseGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn extract_cluster_thresholds_components() {
        let state = StateVector::new(vec![0.5, 0.5, 0.0], 0.5).unwrap();
        let c = extract_cluster(&state, 0.1).unwrap();
        assert_eq!(c.members, vec![0, 1]);
        assert!(matches!(
            extract_cluster(&state, 1.0),
            Err(Error::EmptyCluster { .. })
        ));
    }

    #[test]
    fn clique_on_complete_graph_takes_everything() {
        let g = complete(5);
        let schedule = PathSchedule::reciprocal(5, 2, 1, true).unwrap();
        // the whole graph is the clique, so the final state is uniform at
        // exactly 1/n; the membership threshold must sit below that
        let result =
            find_clique_pfrd(&g, &schedule, &IterationConfig::default(), Some(0.1)).unwrap();
        assert_eq!(result.members, vec![0, 1, 2, 3, 4]);
        assert_relative_eq!(result.clique_objective, 0.8);
        assert_relative_eq!(result.objective, 0.8, epsilon = 1e-4);
    }

    #[test]
    fn clique_requires_unit_weights_and_final_cap_one() {
        let g = SparseGraph::from_edges(3, &[(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        let schedule = PathSchedule::classical();
        assert!(matches!(
            find_clique_pfrd(&g, &schedule, &IterationConfig::default(), None),
            Err(Error::WeightedGraph)
        ));
        let unweighted = complete(4);
        let bad = PathSchedule::target_size(2).unwrap();
        assert!(matches!(
            find_clique_pfrd(&unweighted, &bad, &IterationConfig::default(), None),
            Err(Error::InvalidSchedule(_))
        ));
    }

    #[test]
    fn planted_clique_recovered_on_seeded_noise() {
        let (graph, planted) = crate::synth::gen_planted_clique(
            &crate::synth::PlantedCliqueSpec::scaled(
                10,
                40,
                crate::synth::DegreeDistribution::binomial(),
                77,
            ),
        )
        .unwrap();
        assert_eq!(oracle_max_clique(&graph).unwrap(), planted);
        let n = graph.vertex_count();
        let schedule = PathSchedule::reciprocal(n - 1, 2, 1, true).unwrap();
        let result =
            find_clique_pfrd(&graph, &schedule, &IterationConfig::default(), None).unwrap();
        assert_eq!(result.members, planted);
    }

    #[test]
    fn degree_bias_splits_classical_and_path_dynamics() {
        let (graph, large, small) = degree_bias_instance();
        let cfg = IterationConfig::default();
        // classical dynamic follows the inflated degrees into the 3-clique
        let classical =
            find_clique_pfrd(&graph, &PathSchedule::classical(), &cfg, None).unwrap();
        assert_eq!(classical.members, small);
        // the path dynamic finds the global optimum
        let n = graph.vertex_count();
        let dense = PathSchedule::reciprocal(n - 1, 2, 1, true).unwrap();
        let path_result = find_clique_pfrd(&graph, &dense, &cfg, None).unwrap();
        assert_eq!(path_result.members, large);
        assert_relative_eq!(path_result.objective, 0.75, epsilon = 1e-4);
    }

    #[test]
    fn dks_on_clique_with_pendant() {
        let g = k4_with_pendant();
        let result = densest_k_subgraph(&g, 4, &IterationConfig::default()).unwrap();
        assert_eq!(result.members, vec![0, 1, 2, 3]);
        assert_relative_eq!(result.weight, 6.0);
    }

    #[test]
    fn dks_with_k_equal_n_is_everything() {
        let g = k4_with_pendant();
        let result = densest_k_subgraph(&g, 5, &IterationConfig::default()).unwrap();
        assert_eq!(result.members, vec![0, 1, 2, 3, 4]);
        assert_relative_eq!(result.weight, g.total_weight());
    }

    #[test]
    fn dks_close_to_oracle_on_seeded_graph() {
        let g = random_graph(12, 0.4, 123);
        let result = densest_k_subgraph(&g, 5, &IterationConfig::default()).unwrap();
        let (_, best) = oracle_densest_k(&g, 5).unwrap();
        assert!(
            result.weight >= 0.9 * best,
            "got {} vs oracle {best}",
            result.weight
        );
    }

    #[test]
    fn multi_size_run_matches_per_size_runs() {
        let g = random_graph(16, 0.45, 9);
        let cfg = IterationConfig::default();
        let both = densest_k_path(&g, &[4, 8], &cfg).unwrap();
        for result in both {
            let single = densest_k_subgraph(&g, result.k, &cfg).unwrap();
            assert_eq!(result.members, single.members);
            assert!((result.weight - single.weight).abs() < 1e-9);
        }
    }

    #[test]
    fn duplicate_and_infeasible_sizes_are_rejected() {
        let g = complete(6);
        let cfg = IterationConfig::default();
        assert!(matches!(
            densest_k_path(&g, &[3, 3], &cfg),
            Err(Error::DuplicateSubgraphSize { k: 3 })
        ));
        assert!(matches!(
            densest_k_path(&g, &[7], &cfg),
            Err(Error::InvalidSubgraphSize { .. })
        ));
        assert!(matches!(
            densest_k_path(&g, &[0], &cfg),
            Err(Error::InvalidSubgraphSize { .. })
        ));
    }

    #[test]
    fn single_blob_keeps_every_point_at_generous_cap() {
        let clusters = vec![GaussianClusterSpec {
            count: 30,
            mean: vec![0.0, 0.0],
            covariance: vec![vec![0.0001, 0.0], vec![0.0, 0.0001]],
        }];
        let (points, _) = crate::synth::gen_gaussian_clusters(&clusters, 0, &[], 31).unwrap();
        let schedule = PathSchedule::explicit(vec![1.0 / 29.0, 1.0 / 28.0]).unwrap();
        // membership threshold below 1/n: on a structureless blob the
        // state stays near uniform and nothing should be shed
        let result = density_shrink(
            &points,
            1.0,
            &schedule,
            &IterationConfig::default(),
            Some(1.0 / 60.0),
        )
        .unwrap();
        assert_eq!(result.last().unwrap().members.len(), 30);
    }
}
