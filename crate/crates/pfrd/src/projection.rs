//! Projections onto the simplex and the capped simplex.
//!
//! The capped-simplex map is multiplicative: the largest rescaled
//! components are pinned at the cap and the rest are scaled by a common
//! positive factor. It is not the Euclidean projection. Key consequences,
//! all tested: the output is feasible, order is preserved, the map is
//! invariant to uniform positive scaling of its input, and points already
//! inside the region are fixed.

use crate::error::{Error, Result};

/// The feasible region {x : sum x_i = 1, 0 <= x_i <= epsilon} over n
/// coordinates. Nonempty iff n * epsilon >= 1 and epsilon <= 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CappedSimplexSpec {
    n: usize,
    epsilon: f64,
}

impl CappedSimplexSpec {
    pub fn new(n: usize, epsilon: f64) -> Result<Self> {
        if n == 0
            || !epsilon.is_finite()
            || epsilon <= 0.0
            || epsilon > 1.0
            || (n as f64) * epsilon < 1.0 - 1e-12
        {
            return Err(Error::InvalidCap { n, epsilon });
        }
        Ok(CappedSimplexSpec { n, epsilon })
    }

    pub fn dims(&self) -> usize {
        self.n
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Smallest possible support size of a feasible point: ceil(1/epsilon),
/// computed tolerantly so that epsilon = 1/k from floating division maps
/// to exactly k.
pub fn min_support(epsilon: f64) -> usize {
    (1.0 / epsilon - 1e-9).ceil().max(1.0) as usize
}

/// Scales a nonnegative vector onto the simplex by l1 normalization.
pub fn project_simplex(y: &[f64]) -> Result<Vec<f64>> {
    check_nonnegative(y)?;
    let total: f64 = y.iter().sum();
    if total <= 0.0 {
        return Err(Error::AllZeroInput);
    }
    Ok(y.iter().map(|&v| v / total).collect())
}

/// Projects a nonnegative vector onto the capped simplex.
///
/// Components are visited in descending value order (ties by ascending
/// index); a component whose rescaled value would reach the cap is pinned
/// at the cap and removed from the remaining mass, and the rest are scaled
/// uniformly to restore the unit sum. Cost is one sort of the positive
/// components.
pub fn project_truncated(y: &[f64], spec: &CappedSimplexSpec) -> Result<Vec<f64>> {
    if y.len() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: y.len(),
        });
    }
    check_nonnegative(y)?;

    let mut out = vec![0.0; y.len()];
    let mut order: Vec<u32> = (0..y.len() as u32).filter(|&i| y[i as usize] > 0.0).collect();
    if order.is_empty() {
        return Err(Error::AllZeroInput);
    }
    project_positive_into(y, spec.epsilon, &mut order, &mut out);
    Ok(out)
}

/// Core of the capped projection over the positive support. `order` holds
/// the indices of the strictly positive components of `y` (any order on
/// entry); `out` must be zeroed at every index not in `order`.
pub(crate) fn project_positive_into(y: &[f64], epsilon: f64, order: &mut [u32], out: &mut [f64]) {
    order.sort_unstable_by(|&a, &b| {
        let (ya, yb) = (y[a as usize], y[b as usize]);
        yb.partial_cmp(&ya).unwrap().then(a.cmp(&b))
    });

    // Suffix sums of the sorted values; suffix[k] is the mass from rank k on.
    let s = order.len();
    let mut suffix = vec![0.0; s + 1];
    for k in (0..s).rev() {
        suffix[k] = suffix[k + 1] + y[order[k] as usize];
    }

    let mut capped = 0usize;
    while capped < s {
        let remaining_budget = 1.0 - capped as f64 * epsilon;
        let scaled = remaining_budget * y[order[capped] as usize] / suffix[capped];
        if scaled >= epsilon {
            capped += 1;
        } else {
            break;
        }
    }

    for &i in order.iter().take(capped) {
        out[i as usize] = epsilon;
    }
    if capped < s {
        let scale = (1.0 - capped as f64 * epsilon) / suffix[capped];
        for &i in order.iter().skip(capped) {
            out[i as usize] = y[i as usize] * scale;
        }
    }
}

fn check_nonnegative(y: &[f64]) -> Result<()> {
    for (i, &v) in y.iter().enumerate() {
        if v < 0.0 || !v.is_finite() {
            return Err(Error::NegativeEntry { index: i, value: v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn spec(n: usize, eps: f64) -> CappedSimplexSpec {
        CappedSimplexSpec::new(n, eps).unwrap()
    }

    #[test]
    fn caps_the_largest_component() {
        let x = project_truncated(&[0.5, 0.3, 0.2], &spec(3, 0.4)).unwrap();
        assert_relative_eq!(x[0], 0.4, epsilon = 1e-15);
        assert_relative_eq!(x[1], 0.36, epsilon = 1e-15);
        assert_relative_eq!(x[2], 0.24, epsilon = 1e-15);
    }

    #[test]
    fn cap_one_is_plain_normalization() {
        let x = project_truncated(&[2.0, 1.0, 1.0], &spec(3, 1.0)).unwrap();
        assert_eq!(x, vec![0.5, 0.25, 0.25]);
        // same map up to summation order of the normalizer
        let y = [0.3, 1.4, 0.0, 0.2];
        for (a, b) in project_truncated(&y, &spec(4, 1.0))
            .unwrap()
            .iter()
            .zip(project_simplex(&y).unwrap().iter())
        {
            assert_relative_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn symmetric_input_is_forced_uniform() {
        let x = project_truncated(&[0.6; 4], &spec(4, 0.25)).unwrap();
        for v in x {
            assert_relative_eq!(v, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn all_positive_components_may_cap() {
        let x = project_truncated(&[1.0, 0.0, 1.0], &spec(3, 0.5)).unwrap();
        assert_eq!(x, vec![0.5, 0.0, 0.5]);
    }

    #[test]
    fn simplex_projection_examples() {
        assert_eq!(project_simplex(&[3.0, 1.0]).unwrap(), vec![0.75, 0.25]);
        assert_eq!(
            project_simplex(&[0.0, 5.0, 0.0]).unwrap(),
            vec![0.0, 1.0, 0.0]
        );
    }

    #[test]
    fn zero_input_is_an_error() {
        assert!(matches!(
            project_simplex(&[0.0, 0.0]),
            Err(Error::AllZeroInput)
        ));
        assert!(matches!(
            project_truncated(&[0.0, 0.0], &spec(2, 0.9)),
            Err(Error::AllZeroInput)
        ));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(CappedSimplexSpec::new(3, 0.2).is_err()); // 3 * 0.2 < 1
        assert!(CappedSimplexSpec::new(3, 1.5).is_err());
        assert!(CappedSimplexSpec::new(0, 1.0).is_err());
        assert!(CappedSimplexSpec::new(3, 1.0 / 3.0).is_ok());
    }

    #[test]
    fn min_support_handles_reciprocal_rounding() {
        assert_eq!(min_support(1.0), 1);
        assert_eq!(min_support(0.5), 2);
        assert_eq!(min_support(1.0 / 3.0), 3);
        assert_eq!(min_support(1.0 / 990.0), 990);
        assert_eq!(min_support(0.4), 3);
    }

    proptest! {
        #[test]
        fn output_is_feasible_order_preserving_and_scale_invariant(
            raw in prop::collection::vec(0.0f64..1.0, 2..12),
            eps_frac in 0.0f64..1.0,
            scale in 0.01f64..100.0,
        ) {
            let n = raw.len();
            prop_assume!(raw.iter().any(|&v| v > 0.0));
            let lo = 1.0 / n as f64;
            let eps = lo + eps_frac * (1.0 - lo);
            let spec = CappedSimplexSpec::new(n, eps).unwrap();
            let x = project_truncated(&raw, &spec).unwrap();

            let sum: f64 = x.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            for &v in &x {
                prop_assert!(v >= 0.0 && v <= eps);
            }
            for i in 0..n {
                for j in 0..n {
                    if raw[i] >= raw[j] {
                        prop_assert!(x[i] >= x[j] - 1e-12);
                    }
                }
            }

            let scaled: Vec<f64> = raw.iter().map(|&v| v * scale).collect();
            let xs = project_truncated(&scaled, &spec).unwrap();
            for (a, b) in x.iter().zip(xs.iter()) {
                prop_assert!((a - b).abs() < 1e-9);
            }

            // Feasible points are fixed points of the map.
            let again = project_truncated(&x, &spec).unwrap();
            for (a, b) in x.iter().zip(again.iter()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
