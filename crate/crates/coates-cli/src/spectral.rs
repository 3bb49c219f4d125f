//! Floating-point cross-check of spanning-tree counts: the count equals the
//! product of the nonzero Laplacian eigenvalues divided by the vertex count.
//! The exact reduced-Laplacian determinant in `coates-core` stays
//! authoritative; this path exists to confirm it independently.

use coates_core::GraphPattern;
use nalgebra::DMatrix;

/// Eigenvalues at or below this are treated as the Laplacian's zero
/// eigenvalue. Nonzero eigenvalues of connected unweighted graphs at this
/// crate's scale are far above it.
const ZERO_EIGENVALUE_CUTOFF: f64 = 1e-6;

/// Estimates the spanning-tree count of a connected pattern as
/// `(1/n) * product(nonzero eigenvalues of L)`.
pub fn eigenvalue_tree_count(pattern: &GraphPattern) -> f64 {
    let n = pattern.vertex_count();
    if n <= 1 {
        return 1.0;
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in pattern.edges() {
        let (i, j) = (u - 1, v - 1);
        lap[(i, j)] = -1.0;
        lap[(j, i)] = -1.0;
        lap[(i, i)] += 1.0;
        lap[(j, j)] += 1.0;
    }
    let eigenvalues = lap.symmetric_eigen().eigenvalues;
    let product: f64 = eigenvalues
        .iter()
        .filter(|&&ev| ev > ZERO_EIGENVALUE_CUTOFF)
        .product();
    product / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use coates_core::count_spanning_trees;

    fn relative_error(estimate: f64, exact: f64) -> f64 {
        (estimate - exact).abs() / exact.max(1.0)
    }

    #[test]
    fn four_vertex_example_gives_eight() {
        let p = GraphPattern::new(4, [(1, 2), (2, 3), (2, 4), (3, 4), (1, 4)]).unwrap();
        assert!(relative_error(eigenvalue_tree_count(&p), 8.0) < 1e-6);
    }

    #[test]
    fn known_counts() {
        assert!(relative_error(eigenvalue_tree_count(&GraphPattern::complete(4)), 16.0) < 1e-6);
        assert!(relative_error(eigenvalue_tree_count(&GraphPattern::cycle(5)), 5.0) < 1e-6);
        assert!(relative_error(eigenvalue_tree_count(&GraphPattern::path(4)), 1.0) < 1e-6);
        assert!(relative_error(eigenvalue_tree_count(&GraphPattern::complete(2)), 1.0) < 1e-6);
    }

    #[test]
    fn agrees_with_exact_count_on_random_connected_graphs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;

        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let mut checked = 0;
        while checked < 100 {
            let n = rng.random_range(2..=8);
            let edges: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(0.6))
                .collect();
            let p = GraphPattern::new(n, edges).unwrap();
            let exact = count_spanning_trees(&p);
            if exact == 0u32.into() {
                continue;
            }
            let exact_f64: f64 = exact.to_string().parse().unwrap();
            let estimate = eigenvalue_tree_count(&p);
            assert!(
                (estimate - exact_f64).abs() / exact_f64 < 1e-6,
                "n={n} exact={exact_f64} estimate={estimate}"
            );
            checked += 1;
        }
    }
}
