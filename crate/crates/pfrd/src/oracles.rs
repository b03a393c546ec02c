//! Brute-force reference implementations used to validate the fast paths.
//!
//! Everything here trades time for directness: subset enumeration for the
//! capped projection, branch-and-bound clique search, exhaustive k-subset
//! search, and stationary-point enumeration by support classes. None of it
//! shares code with the algorithms it checks.

use crate::error::{Error, Result};
use crate::graph::{subgraph_weight, SparseGraph};
use crate::projection::CappedSimplexSpec;

/// Capped-simplex projection by exhaustive search over cap sets.
///
/// A candidate cap set must leave the scaled remainder feasible, its
/// members must dominate the remainder, and none of its members may be
/// movable to the remainder without overshooting the cap. All surviving
/// candidates must produce the same image, which is returned.
pub fn oracle_project_truncated(y: &[f64], spec: &CappedSimplexSpec) -> Result<Vec<f64>> {
    let n = y.len();
    if n != spec.dims() {
        return Err(Error::DimensionMismatch {
            expected: spec.dims(),
            got: n,
        });
    }
    if n > 16 {
        return Err(Error::OracleLimit(format!(
            "subset enumeration supports at most 16 dimensions, got {n}"
        )));
    }
    for (i, &v) in y.iter().enumerate() {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::NegativeEntry { index: i, value: v });
        }
    }
    if y.iter().all(|&v| v == 0.0) {
        return Err(Error::AllZeroInput);
    }

    let eps = spec.epsilon();
    let total: f64 = y.iter().sum();
    let mut image: Option<Vec<f64>> = None;

    'mask: for mask in 0u32..(1u32 << n) {
        let mut cap_min = f64::INFINITY;
        let mut rest_max: f64 = 0.0;
        let mut rest_sum = 0.0;
        let mut cap_count = 0usize;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                cap_min = cap_min.min(y[i]);
                cap_count += 1;
            } else {
                rest_max = rest_max.max(y[i]);
                rest_sum += y[i];
            }
        }
        let budget = 1.0 - cap_count as f64 * eps;
        if budget < -1e-12 {
            continue;
        }
        // Criterion 1: members of the cap set dominate the remainder.
        if cap_count > 0 && cap_count < n && cap_min < rest_max {
            continue;
        }
        // Remainder must scale into the cap without overshoot.
        if rest_sum > 0.0 {
            if rest_max * budget / rest_sum > eps {
                continue;
            }
        } else if budget.abs() > 1e-9 {
            continue; // nothing left to carry the residual mass
        }
        // Criterion 2: no cap member could be scaled with the remainder
        // and stay below the cap.
        for i in 0..n {
            if mask >> i & 1 == 1 {
                let moved_budget = 1.0 - (cap_count - 1) as f64 * eps;
                let moved_sum = rest_sum + y[i];
                if y[i] * moved_budget / moved_sum < eps {
                    continue 'mask;
                }
            }
        }

        let mut candidate = vec![0.0; n];
        let scale = if rest_sum > 0.0 { budget / rest_sum } else { 0.0 };
        for i in 0..n {
            candidate[i] = if mask >> i & 1 == 1 {
                eps
            } else {
                y[i] * scale
            };
        }
        match &image {
            None => image = Some(candidate),
            Some(existing) => {
                for (a, b) in existing.iter().zip(candidate.iter()) {
                    assert!(
                        (a - b).abs() <= 1e-9 * total.max(1.0),
                        "cap-set candidates disagree"
                    );
                }
            }
        }
    }

    image.ok_or(Error::AllZeroInput)
}

/// Exact maximum clique by branch and bound with greedy coloring bounds.
/// Any positive weight counts as an edge. Intended for small graphs.
pub fn oracle_max_clique(graph: &SparseGraph) -> Result<Vec<usize>> {
    let n = graph.vertex_count();
    if n > 128 {
        return Err(Error::OracleLimit(format!(
            "clique search supports at most 128 vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut adj = vec![0u128; n];
    for u in 0..n {
        for (v, w) in graph.neighbors(u) {
            if w > 0.0 {
                adj[u] |= 1u128 << v;
            }
        }
    }

    let mut best: u128 = 1; // any single vertex is a clique
    let mut best_size = 1usize;
    let all: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };

    fn expand(
        adj: &[u128],
        mut candidates: u128,
        current: u128,
        size: usize,
        best: &mut u128,
        best_size: &mut usize,
    ) {
        if candidates == 0 {
            if size > *best_size {
                *best_size = size;
                *best = current;
            }
            return;
        }
        // Greedy coloring of the candidate set gives an upper bound and a
        // branching order (vertices of the last color class first).
        let mut colors: Vec<(u32, usize)> = Vec::new(); // (vertex, color)
        let mut uncolored = candidates;
        let mut color = 0usize;
        while uncolored != 0 {
            color += 1;
            let mut available = uncolored;
            while available != 0 {
                let v = available.trailing_zeros();
                colors.push((v, color));
                uncolored &= !(1u128 << v);
                available &= !(1u128 << v);
                available &= !adj[v as usize];
            }
        }
        for &(v, c) in colors.iter().rev() {
            if size + c <= *best_size {
                return;
            }
            let bit = 1u128 << v;
            expand(
                adj,
                candidates & adj[v as usize],
                current | bit,
                size + 1,
                best,
                best_size,
            );
            candidates &= !bit;
        }
    }

    expand(&adj, all, 0, 0, &mut best, &mut best_size);
    Ok((0..n).filter(|&v| best >> v & 1 == 1).collect())
}

/// Exact densest k-subgraph by exhaustive enumeration of k-subsets.
/// Ties are resolved toward the lexicographically smallest subset.
pub fn oracle_densest_k(graph: &SparseGraph, k: usize) -> Result<(Vec<usize>, f64)> {
    let n = graph.vertex_count();
    if k == 0 || k > n {
        return Err(Error::InvalidSubgraphSize { k, n });
    }
    let combos = binomial(n, k);
    if combos > 1_000_000 {
        return Err(Error::OracleLimit(format!(
            "C({n}, {k}) = {combos} exceeds the enumeration budget"
        )));
    }

    let mut subset: Vec<usize> = (0..k).collect();
    let mut best = subset.clone();
    let mut best_weight = subgraph_weight(graph, &subset)?;
    while next_combination(&mut subset, n) {
        let w = subgraph_weight(graph, &subset)?;
        if w > best_weight {
            best_weight = w;
            best = subset.clone();
        }
    }
    Ok((best, best_weight))
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::MAX / (n as u128) {
            return u128::MAX;
        }
    }
    acc
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A stationary point of the capped quadratic program, found by support
/// enumeration: the state, its multiplier, and the support classes used.
#[derive(Debug, Clone)]
pub struct StationaryPoint {
    pub x: Vec<f64>,
    pub lambda: f64,
}

/// Enumerates first-order stationary points of max x'Wx over the capped
/// simplex by classifying every vertex as zero, interior, or at the cap,
/// solving the induced linear system for the interior block, and keeping
/// solutions that satisfy all class constraints. Exponential in n.
pub fn enumerate_stationary_points(
    graph: &SparseGraph,
    epsilon: f64,
    tol: f64,
) -> Result<Vec<StationaryPoint>> {
    let n = graph.vertex_count();
    if n > 12 {
        return Err(Error::OracleLimit(format!(
            "support enumeration supports at most 12 vertices, got {n}"
        )));
    }
    CappedSimplexSpec::new(n, epsilon)?;

    let mut w = vec![vec![0.0; n]; n];
    for u in 0..n {
        for (v, weight) in graph.neighbors(u) {
            w[u][v] = weight;
        }
    }

    let mut found = Vec::new();
    let assignments = 3usize.pow(n as u32);
    'assign: for code in 0..assignments {
        let mut c = code;
        let mut class = [0u8; 12]; // 0 zero, 1 interior, 2 capped
        let mut interior = Vec::new();
        let mut capped = Vec::new();
        for i in 0..n {
            class[i] = (c % 3) as u8;
            c /= 3;
            match class[i] {
                1 => interior.push(i),
                2 => capped.push(i),
                _ => {}
            }
        }
        let cap_mass = capped.len() as f64 * epsilon;
        if cap_mass > 1.0 + 1e-12 {
            continue;
        }
        let interior_mass = 1.0 - cap_mass;

        let mut x = vec![0.0; n];
        for &i in &capped {
            x[i] = epsilon;
        }
        let lambda;
        if interior.is_empty() {
            if interior_mass.abs() > 1e-9 {
                continue;
            }
            if capped.is_empty() {
                continue;
            }
            // Any multiplier between the zero-class max and the cap-class
            // min witnesses stationarity; use the cap-class min.
            let g = matvec(&w, &x);
            lambda = capped.iter().map(|&i| g[i]).fold(f64::INFINITY, f64::min);
        } else {
            if interior_mass <= 1e-12 {
                continue;
            }
            if interior_mass >= interior.len() as f64 * epsilon - 1e-12 {
                continue; // interior block cannot hold this much mass
            }
            // Solve W_II x_I - lambda = -eps * W_IC 1, sum x_I = mass.
            let m = interior.len();
            let mut a = vec![vec![0.0; m + 2]; m + 1];
            for (r, &i) in interior.iter().enumerate() {
                for (cidx, &j) in interior.iter().enumerate() {
                    a[r][cidx] = w[i][j];
                }
                a[r][m] = -1.0; // -lambda
                let boundary: f64 = capped.iter().map(|&j| w[i][j]).sum();
                a[r][m + 1] = -epsilon * boundary;
            }
            for cidx in 0..m {
                a[m][cidx] = 1.0;
            }
            a[m][m + 1] = interior_mass;
            let solution = match solve_dense(&mut a) {
                Some(s) => s,
                None => continue,
            };
            for (r, &i) in interior.iter().enumerate() {
                let v = solution[r];
                if !(v > tol && v < epsilon - tol) {
                    continue 'assign;
                }
                x[i] = v;
            }
            lambda = solution[m];
        }

        let g = matvec(&w, &x);
        for i in 0..n {
            match class[i] {
                0 => {
                    if g[i] > lambda + tol {
                        continue 'assign;
                    }
                }
                2 => {
                    if g[i] < lambda - tol {
                        continue 'assign;
                    }
                }
                _ => {}
            }
        }
        found.push(StationaryPoint { x, lambda });
    }
    Ok(found)
}

fn matvec(w: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    w.iter()
        .map(|row| row.iter().zip(x.iter()).map(|(a, b)| a * b).sum())
        .collect()
}

/// Gaussian elimination with partial pivoting on an augmented matrix
/// (rows x rows+1). Returns None when the system is singular.
fn solve_dense(a: &mut [Vec<f64>]) -> Option<Vec<f64>> {
    let rows = a.len();
    for col in 0..rows {
        let pivot = (col..rows).max_by(|&r1, &r2| {
            a[r1][col]
                .abs()
                .partial_cmp(&a[r2][col].abs())
                .unwrap()
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        for r in (col + 1)..rows {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for cc in col..=rows {
                let above = a[col][cc];
                a[r][cc] -= factor * above;
            }
        }
    }
    let mut x = vec![0.0; rows];
    for r in (0..rows).rev() {
        let mut acc = a[r][rows];
        for cc in (r + 1)..rows {
            acc -= a[r][cc] * x[cc];
        }
        x[r] = acc / a[r][r];
    }
    Some(x)
}
