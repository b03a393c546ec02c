//! The path-following replicator dynamic.
//!
//! One step multiplies the state by its payoff direction and projects the
//! product back onto the capped simplex. Sweeping the cap upward from
//! near-uniform to loose traces the solution path of the capped quadratic
//! program; the cap-1 special case is the classical discrete replicator
//! dynamic.

use crate::error::{Error, Result};
use crate::graph::GradientField;
use crate::projection::{min_support, project_positive_into, CappedSimplexSpec};

/// A feasible point of the capped simplex together with the cap it was
/// produced under.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    x: Vec<f64>,
    epsilon: f64,
}

impl StateVector {
    /// Validates feasibility: entries in [0, epsilon], unit sum within
    /// 1e-9, and support of at least ceil(1/epsilon) vertices.
    pub fn new(x: Vec<f64>, epsilon: f64) -> Result<Self> {
        CappedSimplexSpec::new(x.len(), epsilon)?;
        let mut sum = 0.0;
        let mut support = 0usize;
        for (i, &v) in x.iter().enumerate() {
            if v < 0.0 || !v.is_finite() {
                return Err(Error::NegativeEntry { index: i, value: v });
            }
            if v > epsilon + 1e-12 {
                return Err(Error::InfeasibleState(format!(
                    "component {i} = {v} exceeds the cap {epsilon}"
                )));
            }
            if v > 0.0 {
                support += 1;
            }
            sum += v;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InfeasibleState(format!(
                "components sum to {sum}, expected 1"
            )));
        }
        if support < min_support(epsilon) {
            return Err(Error::InfeasibleState(format!(
                "support {} is below the minimum {} for cap {epsilon}",
                support,
                min_support(epsilon)
            )));
        }
        Ok(StateVector { x, epsilon })
    }

    /// The uniform state, feasible for any valid cap.
    pub fn uniform(n: usize, epsilon: f64) -> Result<Self> {
        CappedSimplexSpec::new(n, epsilon)?;
        Ok(StateVector {
            x: vec![1.0 / n as f64; n],
            epsilon,
        })
    }

    pub(crate) fn trusted(x: Vec<f64>, epsilon: f64) -> Self {
        debug_assert!(StateVector::new(x.clone(), epsilon).is_ok());
        StateVector { x, epsilon }
    }

    pub fn components(&self) -> &[f64] {
        &self.x
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dims(&self) -> usize {
        self.x.len()
    }

    pub fn support_size(&self) -> usize {
        self.x.iter().filter(|&&v| v > 0.0).count()
    }

    pub fn into_components(self) -> Vec<f64> {
        self.x
    }
}

/// Strictly increasing cap values in [1/n, 1]; the upper bound against n
/// is checked when a schedule meets a concrete field.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSchedule {
    epsilons: Vec<f64>,
}

impl PathSchedule {
    /// An explicit list of cap values; must be strictly increasing and in
    /// (0, 1].
    pub fn explicit(epsilons: Vec<f64>) -> Result<Self> {
        if epsilons.is_empty() {
            return Err(Error::InvalidSchedule("schedule is empty".into()));
        }
        for (i, &e) in epsilons.iter().enumerate() {
            if !e.is_finite() || e <= 0.0 || e > 1.0 {
                return Err(Error::InvalidSchedule(format!(
                    "entry {i} = {e} is outside (0, 1]"
                )));
            }
            if i > 0 && e <= epsilons[i - 1] {
                return Err(Error::InvalidSchedule(format!(
                    "entry {i} = {e} does not increase past {}",
                    epsilons[i - 1]
                )));
            }
        }
        Ok(PathSchedule { epsilons })
    }

    /// Reciprocal ramp: caps 1/k for k running from `k_start` down to
    /// `k_end` in decrements of `step`, optionally followed by 1.
    pub fn reciprocal(k_start: usize, k_end: usize, step: usize, append_one: bool) -> Result<Self> {
        if k_end == 0 || k_start < k_end {
            return Err(Error::InvalidSchedule(format!(
                "reciprocal range {k_start}..{k_end} is empty"
            )));
        }
        if step == 0 {
            return Err(Error::InvalidSchedule("step must be positive".into()));
        }
        let mut epsilons = Vec::new();
        let mut k = k_start;
        loop {
            epsilons.push(1.0 / k as f64);
            if k < k_end + step {
                break;
            }
            k -= step;
        }
        if append_one && *epsilons.last().unwrap() < 1.0 {
            epsilons.push(1.0);
        }
        PathSchedule::explicit(epsilons)
    }

    /// Single cap 1/k, the smallest-cluster-of-size-k schedule.
    pub fn target_size(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSchedule("target size must be positive".into()));
        }
        PathSchedule::explicit(vec![1.0 / k as f64])
    }

    /// The single-entry schedule {1}: the classical replicator dynamic.
    pub fn classical() -> Self {
        PathSchedule { epsilons: vec![1.0] }
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn len(&self) -> usize {
        self.epsilons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epsilons.is_empty()
    }

    /// Checks every cap is feasible for an n-vertex field.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        for &e in &self.epsilons {
            CappedSimplexSpec::new(n, e).map_err(|_| {
                Error::InvalidSchedule(format!("cap {e} is infeasible for {n} vertices"))
            })?;
        }
        Ok(())
    }
}

/// Knobs of the fixed-cap iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationConfig {
    /// Convergence threshold on the l1 change between iterates.
    pub delta2: f64,
    /// Components below this are zeroed between steps when `prune` is on.
    pub delta3: f64,
    pub prune: bool,
    /// Iteration cap per schedule entry.
    pub max_iters: usize,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            delta2: 1e-4,
            delta3: 1e-12,
            prune: false,
            max_iters: 10_000,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta2 > 0.0) || !self.delta2.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "delta2 must be positive, got {}",
                self.delta2
            )));
        }
        if self.delta3 < 0.0 || self.delta3 >= self.delta2 {
            return Err(Error::InvalidConfig(format!(
                "delta3 = {} must satisfy 0 <= delta3 < delta2 = {}",
                self.delta3, self.delta2
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

/// One converged (or iteration-capped) record of the solution path.
#[derive(Debug, Clone)]
pub struct PathEntry {
    pub state: StateVector,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl PathEntry {
    pub fn epsilon(&self) -> f64 {
        self.state.epsilon()
    }

    pub fn support_size(&self) -> usize {
        self.state.support_size()
    }
}

/// The per-cap records of one path-following run, in schedule order.
#[derive(Debug, Clone)]
pub struct SolutionPath {
    pub entries: Vec<PathEntry>,
}

impl SolutionPath {
    pub fn final_entry(&self) -> &PathEntry {
        self.entries.last().expect("a solution path is never empty")
    }
}

/// Stationarity diagnostics of a (state, gradient) pair: the common
/// interior derivative value and the deviations of each support class
/// from it. `lambda` is the mean over interior components, or the minimum
/// over capped components when no interior component exists.
#[derive(Debug, Clone)]
pub struct KktReport {
    pub lambda: f64,
    pub interior_count: usize,
    pub capped_count: usize,
    pub zero_count: usize,
    /// max |g_i - lambda| over 0 < x_i < epsilon
    pub max_interior_deviation: Option<f64>,
    /// min g_i - lambda over x_i = epsilon
    pub min_cap_slack: Option<f64>,
    /// max g_i - lambda over x_i = 0; informational, not constrained at a
    /// fixed point
    pub max_zero_excess: Option<f64>,
}

struct Evolver {
    grad: Vec<f64>,
    next: Vec<f64>,
    order: Vec<u32>,
}

impl Evolver {
    fn new(n: usize) -> Self {
        Evolver {
            grad: vec![0.0; n],
            next: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// One multiplicative step in place. Returns (f at input, l1 change).
    fn step_inplace<F: GradientField>(
        &mut self,
        field: &F,
        x: &mut Vec<f64>,
        epsilon: f64,
    ) -> Result<(f64, f64)> {
        let f = field.evaluate_into(x, &mut self.grad);
        // Reuse grad as the product x .* g.
        self.order.clear();
        for i in 0..x.len() {
            self.grad[i] *= x[i];
            if self.grad[i] > 0.0 {
                self.order.push(i as u32);
            }
        }
        if self.order.is_empty() {
            return Err(Error::DegenerateState);
        }
        if self.order.len() < min_support(epsilon) {
            return Err(Error::InfeasibleState(format!(
                "update support {} cannot fill the cap {epsilon}",
                self.order.len()
            )));
        }
        self.next.fill(0.0);
        project_positive_into(&self.grad, epsilon, &mut self.order, &mut self.next);
        let mut diff = 0.0;
        for (a, b) in x.iter().zip(self.next.iter()) {
            diff += (a - b).abs();
        }
        std::mem::swap(x, &mut self.next);
        Ok((f, diff))
    }

    /// Zeroes components below delta3 and restores the unit sum. Returns
    /// whether anything was pruned.
    fn prune_inplace(&mut self, x: &mut Vec<f64>, epsilon: f64, delta3: f64) -> Result<bool> {
        let mut pruned = false;
        self.order.clear();
        for i in 0..x.len() {
            if x[i] > 0.0 && x[i] < delta3 {
                x[i] = 0.0;
                pruned = true;
            } else if x[i] > 0.0 {
                self.order.push(i as u32);
            }
        }
        if !pruned {
            return Ok(false);
        }
        if self.order.is_empty() {
            return Err(Error::DegenerateState);
        }
        if self.order.len() < min_support(epsilon) {
            return Err(Error::InfeasibleState(format!(
                "pruned support {} cannot fill the cap {epsilon}",
                self.order.len()
            )));
        }
        self.next.fill(0.0);
        let products: Vec<f64> = x.clone();
        project_positive_into(&products, epsilon, &mut self.order, &mut self.next);
        std::mem::swap(x, &mut self.next);
        Ok(true)
    }
}

fn evolve_core<F: GradientField>(
    field: &F,
    x: &mut Vec<f64>,
    epsilon: f64,
    cfg: &IterationConfig,
    evolver: &mut Evolver,
    mut on_objective: impl FnMut(f64),
) -> Result<(usize, bool, f64)> {
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iters {
        if cfg.prune {
            evolver.prune_inplace(x, epsilon, cfg.delta3)?;
        }
        let (f_before, diff) = evolver.step_inplace(field, x, epsilon)?;
        on_objective(f_before);
        iterations += 1;
        if diff < cfg.delta2 {
            converged = true;
            break;
        }
    }
    let objective = field.evaluate_into(x, &mut evolver.grad);
    on_objective(objective);
    Ok((iterations, converged, objective))
}

/// Applies one projected multiplicative step to a state.
pub fn step<F: GradientField>(field: &F, state: &StateVector) -> Result<StateVector> {
    if field.dims() != state.dims() {
        return Err(Error::DimensionMismatch {
            expected: field.dims(),
            got: state.dims(),
        });
    }
    let mut evolver = Evolver::new(state.dims());
    let mut x = state.components().to_vec();
    evolver.step_inplace(field, &mut x, state.epsilon())?;
    Ok(StateVector::trusted(x, state.epsilon()))
}

/// Iterates the step at a fixed cap until the l1 change drops below
/// delta2 or the iteration cap is reached.
pub fn evolve_fixed_epsilon<F: GradientField>(
    field: &F,
    init: &StateVector,
    cfg: &IterationConfig,
) -> Result<PathEntry> {
    let (entry, _) = evolve_traced_impl(field, init, cfg, false)?;
    Ok(entry)
}

/// Like [`evolve_fixed_epsilon`] but also returns the objective value at
/// every iterate, f(x(0)) .. f(x(T)).
pub fn evolve_traced<F: GradientField>(
    field: &F,
    init: &StateVector,
    cfg: &IterationConfig,
) -> Result<(PathEntry, Vec<f64>)> {
    evolve_traced_impl(field, init, cfg, true)
}

fn evolve_traced_impl<F: GradientField>(
    field: &F,
    init: &StateVector,
    cfg: &IterationConfig,
    trace: bool,
) -> Result<(PathEntry, Vec<f64>)> {
    cfg.validate()?;
    if field.dims() != init.dims() {
        return Err(Error::DimensionMismatch {
            expected: field.dims(),
            got: init.dims(),
        });
    }
    let mut evolver = Evolver::new(init.dims());
    let mut x = init.components().to_vec();
    let mut objectives = Vec::new();
    let epsilon = init.epsilon();
    let (iterations, converged, objective) =
        evolve_core(field, &mut x, epsilon, cfg, &mut evolver, |f| {
            if trace {
                objectives.push(f);
            }
        })?;
    let entry = PathEntry {
        state: StateVector::trusted(x, epsilon),
        objective,
        iterations,
        converged,
    };
    Ok((entry, objectives))
}

/// Runs the full path-following dynamic, handing each converged record to
/// `sink` as it is produced. Memory stays O(n) regardless of schedule
/// length.
pub fn run_pfrd_streaming<F, S>(
    field: &F,
    schedule: &PathSchedule,
    cfg: &IterationConfig,
    mut sink: S,
) -> Result<()>
where
    F: GradientField,
    S: FnMut(PathEntry) -> Result<()>,
{
    cfg.validate()?;
    let n = field.dims();
    schedule.validate_for(n)?;
    let mut evolver = Evolver::new(n);
    let mut x = vec![1.0 / n as f64; n];
    let mut previous_epsilon = None;
    for &epsilon in schedule.epsilons() {
        // The cap only loosens along the schedule, so the previous
        // converged state stays feasible; assert rather than re-project.
        if let Some(prev) = previous_epsilon {
            assert!(epsilon > prev, "schedule must increase");
            let support = x.iter().filter(|&&v| v > 0.0).count();
            assert!(
                support >= min_support(epsilon),
                "support {} infeasible for cap {}",
                support,
                epsilon
            );
            assert!(x.iter().all(|&v| v <= epsilon + 1e-12));
        }
        let (iterations, converged, objective) =
            evolve_core(field, &mut x, epsilon, cfg, &mut evolver, |_| {})?;
        sink(PathEntry {
            state: StateVector::trusted(x.clone(), epsilon),
            objective,
            iterations,
            converged,
        })?;
        previous_epsilon = Some(epsilon);
    }
    Ok(())
}

/// Runs the full path-following dynamic from the uniform state and
/// collects the per-cap records.
pub fn run_pfrd<F: GradientField>(
    field: &F,
    schedule: &PathSchedule,
    cfg: &IterationConfig,
) -> Result<SolutionPath> {
    let mut entries = Vec::with_capacity(schedule.len());
    run_pfrd_streaming(field, schedule, cfg, |entry| {
        entries.push(entry);
        Ok(())
    })?;
    Ok(SolutionPath { entries })
}

/// The classical discrete replicator dynamic: the path dynamic with the
/// single-entry schedule {1}.
pub fn run_drd<F: GradientField>(field: &F, cfg: &IterationConfig) -> Result<PathEntry> {
    let path = run_pfrd(field, &PathSchedule::classical(), cfg)?;
    Ok(path.entries.into_iter().next().expect("one entry"))
}

/// Refines a converged state to exact support: components carrying less
/// than `dust` mass are zeroed, the state is re-projected, and evolution
/// resumes, until no negligible mass remains. The stopping rule of the
/// plain iteration leaves decaying components stranded at the order of
/// delta2; this removes them so support classes are exact.
///
/// `dust` must sit well below the smallest meaningful component
/// (roughly epsilon) and well above delta2.
pub fn polish_fixed_point<F: GradientField>(
    field: &F,
    state: &StateVector,
    dust: f64,
    cfg: &IterationConfig,
) -> Result<PathEntry> {
    cfg.validate()?;
    let epsilon = state.epsilon();
    let mut entry = evolve_fixed_epsilon(field, state, cfg)?;
    for _ in 0..50 {
        let x = entry.state.components();
        let keep: Vec<u32> = (0..x.len() as u32)
            .filter(|&i| x[i as usize] >= dust)
            .collect();
        let dusty = entry.state.support_size() > keep.len();
        if !dusty {
            return Ok(entry);
        }
        if keep.len() < min_support(epsilon) {
            return Ok(entry); // dropping the dust would break feasibility
        }
        let mut cleaned = vec![0.0; x.len()];
        let mut order = keep;
        project_positive_into(x, epsilon, &mut order, &mut cleaned);
        entry = evolve_fixed_epsilon(field, &StateVector::trusted(cleaned, epsilon), cfg)?;
    }
    Ok(entry)
}

/// True when one step moves the state by at most `tol` in l1.
pub fn verify_fixed_point<F: GradientField>(
    field: &F,
    x: &[f64],
    epsilon: f64,
    tol: f64,
) -> Result<bool> {
    let state = StateVector::new(x.to_vec(), epsilon)?;
    let next = step(field, &state)?;
    let diff: f64 = state
        .components()
        .iter()
        .zip(next.components().iter())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(diff <= tol)
}

/// Computes the stationarity diagnostics of a state under a field.
///
/// Components are classed by exact comparison with 0 and the cap, which
/// the projection writes exactly.
pub fn kkt_report<F: GradientField>(field: &F, state: &StateVector) -> Result<KktReport> {
    if field.dims() != state.dims() {
        return Err(Error::DimensionMismatch {
            expected: field.dims(),
            got: state.dims(),
        });
    }
    let mut grad = vec![0.0; state.dims()];
    field.evaluate_into(state.components(), &mut grad);
    let epsilon = state.epsilon();

    let mut interior = Vec::new();
    let mut capped = Vec::new();
    let mut zeros = Vec::new();
    for (i, &v) in state.components().iter().enumerate() {
        if v == 0.0 {
            zeros.push(i);
        } else if v >= epsilon {
            capped.push(i);
        } else {
            interior.push(i);
        }
    }

    let lambda = if !interior.is_empty() {
        interior.iter().map(|&i| grad[i]).sum::<f64>() / interior.len() as f64
    } else {
        capped
            .iter()
            .map(|&i| grad[i])
            .fold(f64::INFINITY, f64::min)
    };

    let max_interior_deviation = interior
        .iter()
        .map(|&i| (grad[i] - lambda).abs())
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));
    let min_cap_slack = capped
        .iter()
        .map(|&i| grad[i] - lambda)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.min(d))));
    let max_zero_excess = zeros
        .iter()
        .map(|&i| grad[i] - lambda)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |m| m.max(d))));

    Ok(KktReport {
        lambda,
        interior_count: interior.len(),
        capped_count: capped.len(),
        zero_count: zeros.len(),
        max_interior_deviation,
        min_cap_slack,
        max_zero_excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SparseGraph;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn path3() -> SparseGraph {
        SparseGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

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

    fn tight() -> IterationConfig {
        IterationConfig {
            delta2: 1e-13,
            delta3: 1e-14,
            prune: false,
            max_iters: 200_000,
        }
    }

    #[test]
    fn step_fixes_the_symmetric_triangle() {
        let g = complete(3);
        let state = StateVector::uniform(3, 1.0).unwrap();
        let next = step(&g, &state).unwrap();
        for &v in next.components() {
            assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn step_on_path_graph_from_uniform() {
        let state = StateVector::uniform(3, 1.0).unwrap();
        let next = step(&path3(), &state).unwrap();
        assert_relative_eq!(next.components()[0], 0.25, epsilon = 1e-12);
        assert_relative_eq!(next.components()[1], 0.5, epsilon = 1e-12);
        assert_relative_eq!(next.components()[2], 0.25, epsilon = 1e-12);
    }

    #[test]
    fn step_fixes_the_path_graph_stationary_point() {
        let state = StateVector::new(vec![0.25, 0.5, 0.25], 1.0).unwrap();
        let next = step(&path3(), &state).unwrap();
        for (a, b) in state.components().iter().zip(next.components()) {
            assert_relative_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn evolve_converges_on_path_graph() {
        let init = StateVector::uniform(3, 1.0).unwrap();
        let entry = evolve_fixed_epsilon(&path3(), &init, &IterationConfig::default()).unwrap();
        assert!(entry.converged);
        assert_relative_eq!(entry.state.components()[1], 0.5, epsilon = 1e-3);
    }

    #[test]
    fn evolve_shrinks_to_the_clique_with_pendant() {
        let g = k4_with_pendant();
        let init = StateVector::uniform(5, 1.0).unwrap();
        let entry = evolve_fixed_epsilon(&g, &init, &tight()).unwrap();
        assert!(entry.converged);
        assert_relative_eq!(entry.objective, 0.75, epsilon = 1e-6);
        // the stopping rule strands the pendant at the delta2 scale;
        // polishing removes it exactly
        assert!(entry.state.components()[4] < 1e-9);
        let polished = polish_fixed_point(&g, &entry.state, 1e-6, &tight()).unwrap();
        assert!(polished.converged);
        assert_eq!(polished.state.support_size(), 4);
        assert_eq!(polished.state.components()[4], 0.0);
        assert_relative_eq!(polished.objective, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn tightest_cap_returns_uniform_immediately() {
        let g = path3();
        let eps = 1.0 / 3.0;
        let init = StateVector::uniform(3, eps).unwrap();
        let entry = evolve_fixed_epsilon(&g, &init, &IterationConfig::default()).unwrap();
        assert!(entry.converged);
        assert_eq!(entry.iterations, 1);
        for &v in entry.state.components() {
            assert_relative_eq!(v, eps, epsilon = 1e-15);
        }
    }

    #[test]
    fn degenerate_update_is_an_error() {
        let g = SparseGraph::from_edges(2, &[]).unwrap();
        let init = StateVector::uniform(2, 1.0).unwrap();
        assert!(matches!(
            evolve_fixed_epsilon(&g, &init, &IterationConfig::default()),
            Err(Error::DegenerateState)
        ));
    }

    #[test]
    fn classical_dynamic_on_triangle() {
        let entry = run_drd(&complete(3), &IterationConfig::default()).unwrap();
        assert!(entry.converged);
        assert_relative_eq!(entry.objective, 2.0 / 3.0, epsilon = 1e-9);
        for &v in entry.state.components() {
            assert_relative_eq!(v, 1.0 / 3.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn classical_dynamic_on_disjoint_edges_stays_uniform() {
        // Two disjoint unit edges are vertex-transitive, so the uniform
        // state is a fixed point: f = 4 * (1/4) * (1/4) = 1/4.
        let g = SparseGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        let entry = run_drd(&g, &IterationConfig::default()).unwrap();
        assert!(entry.converged);
        assert_eq!(entry.iterations, 1);
        for &v in entry.state.components() {
            assert_relative_eq!(v, 0.25, epsilon = 1e-15);
        }
        assert_relative_eq!(entry.objective, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn singleton_schedule_reduces_to_classical_dynamic() {
        let g = k4_with_pendant();
        let cfg = IterationConfig::default();
        let from_pfrd = run_pfrd(&g, &PathSchedule::classical(), &cfg).unwrap();
        let from_drd = run_drd(&g, &cfg).unwrap();
        assert_eq!(
            from_pfrd.final_entry().state.components(),
            from_drd.state.components()
        );
        assert_eq!(from_pfrd.final_entry().iterations, from_drd.iterations);
    }

    #[test]
    fn verify_fixed_point_cases() {
        let g = path3();
        assert!(verify_fixed_point(&g, &[0.25, 0.5, 0.25], 1.0, 1e-9).unwrap());
        let third = 1.0 / 3.0;
        assert!(!verify_fixed_point(&g, &[third, third, third], 1.0, 1e-9).unwrap());
        let k3 = complete(3);
        for eps in [0.4, 0.6, 1.0] {
            assert!(verify_fixed_point(&k3, &[third, third, third], eps, 1e-9).unwrap());
        }
    }

    #[test]
    fn kkt_report_on_interior_only_state() {
        let state = StateVector::new(vec![0.25, 0.5, 0.25], 1.0).unwrap();
        let report = kkt_report(&path3(), &state).unwrap();
        assert_relative_eq!(report.lambda, 0.5, epsilon = 1e-15);
        assert_eq!(report.interior_count, 3);
        assert_eq!(report.capped_count, 0);
        assert_eq!(report.zero_count, 0);
        assert!(report.max_interior_deviation.unwrap() < 1e-15);
        assert!(report.min_cap_slack.is_none());
        assert!(report.max_zero_excess.is_none());
    }

    #[test]
    fn kkt_report_on_uniform_triangle() {
        let state = StateVector::uniform(3, 1.0).unwrap();
        let report = kkt_report(&complete(3), &state).unwrap();
        assert_relative_eq!(report.lambda, 2.0 / 3.0, epsilon = 1e-15);
        assert!(report.max_interior_deviation.unwrap() < 1e-15);
    }

    #[test]
    fn kkt_report_on_converged_clique_state() {
        let g = k4_with_pendant();
        let init = StateVector::uniform(5, 1.0).unwrap();
        let entry = evolve_fixed_epsilon(&g, &init, &tight()).unwrap();
        let polished = polish_fixed_point(&g, &entry.state, 1e-6, &tight()).unwrap();
        let report = kkt_report(&g, &polished.state).unwrap();
        assert!(report.max_interior_deviation.unwrap() <= 1e-3 * report.lambda);
        // the dropped pendant's derivative is reported but unconstrained
        assert_eq!(report.zero_count, 1);
        assert!(report.max_zero_excess.is_some());
    }

    #[test]
    fn schedule_builders_match_published_samplings() {
        let phi3 = PathSchedule::reciprocal(990, 10, 10, true).unwrap();
        assert_eq!(phi3.len(), 100);
        assert_relative_eq!(phi3.epsilons()[0], 1.0 / 990.0);
        assert_relative_eq!(phi3.epsilons()[98], 1.0 / 10.0);
        assert_relative_eq!(phi3.epsilons()[99], 1.0);

        let phi1 = PathSchedule::reciprocal(900, 100, 100, true).unwrap();
        assert_eq!(phi1.len(), 10);
        assert_relative_eq!(phi1.epsilons()[0], 1.0 / 900.0);

        let phi2 = PathSchedule::reciprocal(950, 50, 50, true).unwrap();
        assert_eq!(phi2.len(), 20);

        let drd = PathSchedule::explicit(vec![1.0]).unwrap();
        assert_eq!(drd.epsilons(), &[1.0]);
    }

    #[test]
    fn schedule_validation() {
        assert!(PathSchedule::explicit(vec![]).is_err());
        assert!(PathSchedule::explicit(vec![0.5, 0.5]).is_err());
        assert!(PathSchedule::explicit(vec![0.5, 0.4]).is_err());
        assert!(PathSchedule::explicit(vec![0.0, 0.5]).is_err());
        assert!(PathSchedule::explicit(vec![0.5, 1.5]).is_err());
        assert!(PathSchedule::reciprocal(10, 20, 10, false).is_err());
        assert!(PathSchedule::reciprocal(10, 2, 0, false).is_err());
        // infeasible for a small field
        let s = PathSchedule::target_size(10).unwrap();
        assert!(s.validate_for(5).is_err());
        assert!(s.validate_for(20).is_ok());
    }

    #[test]
    fn zero_components_stay_zero() {
        let g = k4_with_pendant();
        let mut x = vec![0.3, 0.3, 0.4, 0.0, 0.0];
        let mut state = StateVector::new(x.clone(), 0.5).unwrap();
        for _ in 0..50 {
            state = step(&g, &state).unwrap();
            x = state.components().to_vec();
            assert_eq!(x[3], 0.0);
            assert_eq!(x[4], 0.0);
        }
    }

    #[test]
    fn iterates_stay_feasible_with_minimum_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = rng.gen_range(4..10);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.6) {
                        edges.push((i, j, rng.gen_range(0.2..2.0)));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = SparseGraph::from_edges(n, &edges).unwrap();
            let k = rng.gen_range(2..=n);
            let eps = 1.0 / k as f64;
            let mut state = StateVector::uniform(n, eps).unwrap();
            for _ in 0..30 {
                state = match step(&g, &state) {
                    Ok(s) => s,
                    Err(Error::DegenerateState) | Err(Error::InfeasibleState(_)) => break,
                    Err(e) => panic!("unexpected error {e}"),
                };
                let sum: f64 = state.components().iter().sum();
                assert!((sum - 1.0).abs() < 1e-9);
                assert!(state.components().iter().all(|&v| v <= eps + 1e-12));
                assert!(state.support_size() >= min_support(eps));
            }
        }
    }

    #[test]
    fn classical_trajectory_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let n = rng.gen_range(3..9);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.6) {
                        edges.push((i, j, rng.gen_range(0.2..2.0)));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let g = SparseGraph::from_edges(n, &edges).unwrap();
            let init = StateVector::uniform(n, 1.0).unwrap();
            let (_, trace) = evolve_traced(&g, &init, &IterationConfig::default()).unwrap();
            for pair in trace.windows(2) {
                assert!(
                    pair[1] >= pair[0] - 1e-12,
                    "objective decreased: {} -> {}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(IterationConfig::default().validate().is_ok());
        let bad = IterationConfig {
            delta2: 1e-4,
            delta3: 1e-3,
            ..IterationConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = IterationConfig {
            max_iters: 0,
            ..IterationConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn state_validation() {
        assert!(StateVector::new(vec![0.5, 0.5, 0.0], 0.5).is_ok());
        // cap exceeded
        assert!(StateVector::new(vec![0.7, 0.3, 0.0], 0.5).is_err());
        // sum off
        assert!(StateVector::new(vec![0.5, 0.4, 0.0], 0.5).is_err());
        // support below ceil(1/eps)
        assert!(StateVector::new(vec![1.0, 0.0], 0.6).is_err());
    }
}
