use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::elimination::det_oracle;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::Result;

/// Undirected weighted edge with 1-based endpoints, stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

/// Weighted arc with 1-based endpoints, `from != to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

/// Undirected Coates-graph view of a symmetric matrix: one vertex per index,
/// one weighted edge per nonzero off-diagonal pair, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedWeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl UndirectedWeightedGraph {
    /// Edges are normalized to `u < v` and sorted; self-loops, repeated
    /// pairs, out-of-range endpoints, and zero weights are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (a, b, weight) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n || weight.is_zero() {
                return Err(Error::InvalidEndpoint { u: a, v: b, n });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            normalized.push(Edge { u, v, weight });
        }
        normalized.sort_by_key(|e| (e.u, e.v));
        for pair in normalized.windows(2) {
            if (pair[0].u, pair[0].v) == (pair[1].u, pair[1].v) {
                return Err(Error::InvalidEndpoint { u: pair[0].u, v: pair[0].v, n });
            }
        }
        Ok(Self { n, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Forgets weights, keeping the simple undirected pattern.
    pub fn support(&self) -> GraphPattern {
        GraphPattern {
            n: self.n,
            edges: self.edges.iter().map(|e| (e.u, e.v)).collect(),
        }
    }
}

/// Directed Coates-graph view of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl WeightedDigraph {
    /// Arcs are sorted by `(from, to)`; self-loops, repeated ordered pairs,
    /// out-of-range endpoints, and zero weights are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut sorted = Vec::new();
        for (from, to, weight) in arcs {
            if from == to || from == 0 || to == 0 || from > n || to > n || weight.is_zero() {
                return Err(Error::InvalidEndpoint { u: from, v: to, n });
            }
            sorted.push(Arc { from, to, weight });
        }
        sorted.sort_by_key(|a| (a.from, a.to));
        for pair in sorted.windows(2) {
            if (pair[0].from, pair[0].to) == (pair[1].from, pair[1].to) {
                return Err(Error::InvalidEndpoint { u: pair[0].from, v: pair[0].to, n });
            }
        }
        Ok(Self { n, arcs: sorted })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_weight(&self, from: usize, to: usize) -> Option<&Rational> {
        self.arcs
            .binary_search_by_key(&(from, to), |a| (a.from, a.to))
            .ok()
            .map(|i| &self.arcs[i].weight)
    }

    /// Out-arcs of `from`, in ascending target order.
    pub fn out_arcs(&self, from: usize) -> &[Arc] {
        let start = self.arcs.partition_point(|a| a.from < from);
        let end = self.arcs.partition_point(|a| a.from <= from);
        &self.arcs[start..end]
    }

    /// True when every arc is paired with its reverse.
    pub fn has_symmetric_pattern(&self) -> bool {
        self.arcs.iter().all(|a| self.arc_weight(a.to, a.from).is_some())
    }

    /// The simple undirected pattern obtained by forgetting directions
    /// and weights.
    pub fn undirected_support(&self) -> GraphPattern {
        let mut edges: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .map(|a| if a.from < a.to { (a.from, a.to) } else { (a.to, a.from) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        GraphPattern { n: self.n, edges }
    }
}

/// Simple unweighted undirected graph, the input to Laplacian construction
/// and spanning-tree counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPattern {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphPattern {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidEndpoint { u: a, v: b, n });
            }
            normalized.push(if a < b { (a, b) } else { (b, a) });
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self { n, edges: normalized })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Self { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|u| (u, u + 1)).collect();
        if n > 2 {
            edges.push((1, n));
        }
        edges.sort_unstable();
        Self { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Self { n, edges: (1..n).map(|u| (u, u + 1)).collect() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Builds the undirected Coates graph of a symmetric matrix: an edge
/// `{i, j}` of weight `M[i][j]` for every nonzero off-diagonal pair. The
/// diagonal plays no role in acyclic subgraphs and is ignored.
pub fn build_undirected_coates(m: &Matrix) -> Result<UndirectedWeightedGraph> {
    if !m.is_symmetric()? {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = m.entry(i, j);
            if !w.is_zero() {
                edges.push((i + 1, j + 1, w.clone()));
            }
        }
    }
    UndirectedWeightedGraph::new(n, edges)
}

/// Builds the directed Coates graph used for spanning-tree expansion: an arc
/// `u -> v` of weight `-M[u][v]` for every nonzero off-diagonal entry. With
/// this sign convention the diagonal of an equicofactor matrix equals each
/// vertex's outgoing weight sum, and tree products sum to the cofactor.
pub fn build_tree_digraph(m: &Matrix) -> Result<WeightedDigraph> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let w = m.entry(u, v);
            if !w.is_zero() {
                arcs.push((u + 1, v + 1, -w.clone()));
            }
        }
    }
    WeightedDigraph::new(n, arcs)
}

/// Laplacian `D - A` of a simple undirected pattern; integer entries, zero
/// row sums, symmetric.
pub fn laplacian(pattern: &GraphPattern) -> Matrix {
    let n = pattern.vertex_count();
    let mut l = Matrix::zeros(n, n);
    let one = Rational::one();
    for &(u, v) in pattern.edges() {
        let (i, j) = (u - 1, v - 1);
        l.set(i, j, -one.clone());
        l.set(j, i, -one.clone());
        l.set(i, i, l.entry(i, i) + &one);
        l.set(j, j, l.entry(j, j) + &one);
    }
    l
}

/// Number of spanning trees of a pattern, by the determinant of the
/// Laplacian with row and column 1 deleted. Disconnected patterns give 0;
/// patterns with at most one vertex have exactly the empty tree.
pub fn count_spanning_trees(pattern: &GraphPattern) -> BigUint {
    let n = pattern.vertex_count();
    if n <= 1 {
        return BigUint::one();
    }
    let l = laplacian(pattern);
    let mut reduced = Matrix::zeros(n - 1, n - 1);
    for i in 1..n {
        for j in 1..n {
            reduced.set(i - 1, j - 1, l.entry(i, j).clone());
        }
    }
    let det = det_oracle(&reduced).expect("reduced Laplacian is square");
    debug_assert!(det.is_integer());
    det.to_integer()
        .to_biguint()
        .expect("spanning-tree count is nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{example1, mat, q};

    #[test]
    fn coates_graph_of_example() {
        let g = build_undirected_coates(&example1()).unwrap();
        let got: Vec<(usize, usize, i64)> = g
            .edges()
            .iter()
            .map(|e| (e.u, e.v, e.weight.to_integer().try_into().unwrap()))
            .collect();
        assert_eq!(
            got,
            alloc::vec![
                (1, 2, 2),
                (1, 5, -3),
                (2, 3, -1),
                (2, 5, -4),
                (3, 4, 5),
                (3, 5, -8),
                (4, 5, -11),
            ]
        );
    }

    #[test]
    fn coates_graph_edge_cases() {
        let diag = mat(&[&[7, 0], &[0, -2]]);
        assert!(build_undirected_coates(&diag).unwrap().edges().is_empty());

        let swap = mat(&[&[0, 1], &[1, 0]]);
        let g = build_undirected_coates(&swap).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!((g.edges()[0].u, g.edges()[0].v), (1, 2));

        let asym = mat(&[&[0, 1], &[2, 0]]);
        assert!(matches!(build_undirected_coates(&asym), Err(Error::NotSymmetric)));
    }

    #[test]
    fn tree_digraph_of_extended_minor() {
        let d_tilde = mat(&[
            &[1, 2, 0, -3],
            &[2, 3, -1, -4],
            &[0, -1, 4, -3],
            &[-3, -4, -3, 10],
        ]);
        let d = build_tree_digraph(&d_tilde).unwrap();
        // Ten nonzero off-diagonal entries, hence ten arcs.
        assert_eq!(d.arcs().len(), 10);
        assert_eq!(d.arc_weight(2, 1), Some(&q(-2, 1)));
        assert_eq!(d.arc_weight(3, 2), Some(&q(1, 1)));
        assert_eq!(d.arc_weight(4, 2), Some(&q(4, 1)));
        assert_eq!(d.arc_weight(1, 3), None);
        assert!(d.has_symmetric_pattern());
    }

    #[test]
    fn tree_digraph_of_single_tree_example() {
        let a_tilde = mat(&[
            &[1, 2, 0, -3],
            &[-1, 0, 1, 0],
            &[0, 0, 2, -2],
            &[0, -2, -3, 5],
        ]);
        let d = build_tree_digraph(&a_tilde).unwrap();
        let got: Vec<(usize, usize, i64)> = d
            .arcs()
            .iter()
            .map(|a| (a.from, a.to, a.weight.to_integer().try_into().unwrap()))
            .collect();
        assert_eq!(
            got,
            alloc::vec![
                (1, 2, -2),
                (1, 4, 3),
                (2, 1, 1),
                (2, 3, -1),
                (3, 4, 2),
                (4, 2, 2),
                (4, 3, 3),
            ]
        );
        assert!(!d.has_symmetric_pattern());

        let diag = mat(&[&[5, 0], &[0, 5]]);
        assert!(build_tree_digraph(&diag).unwrap().arcs().is_empty());
    }

    #[test]
    fn laplacian_of_four_vertex_example() {
        let p = GraphPattern::new(4, [(1, 2), (2, 3), (2, 4), (3, 4), (1, 4)]).unwrap();
        let expected = mat(&[
            &[2, -1, 0, -1],
            &[-1, 3, -1, -1],
            &[0, -1, 2, -1],
            &[-1, -1, -1, 3],
        ]);
        assert_eq!(laplacian(&p), expected);
    }

    #[test]
    fn laplacian_edge_cases() {
        let edgeless = GraphPattern::new(3, []).unwrap();
        assert_eq!(laplacian(&edgeless), Matrix::zeros(3, 3));

        let k2 = GraphPattern::complete(2);
        assert_eq!(laplacian(&k2), mat(&[&[1, -1], &[-1, 1]]));

        let l = laplacian(&GraphPattern::complete(5));
        assert!(l.is_zero_row_sum().unwrap());
        assert!(l.is_symmetric().unwrap());
    }

    #[test]
    fn spanning_tree_counts() {
        let example = GraphPattern::new(4, [(1, 2), (2, 3), (2, 4), (3, 4), (1, 4)]).unwrap();
        assert_eq!(count_spanning_trees(&example), 8u32.into());
        assert_eq!(count_spanning_trees(&GraphPattern::complete(2)), 1u32.into());
        assert_eq!(count_spanning_trees(&GraphPattern::complete(4)), 16u32.into());
        assert_eq!(count_spanning_trees(&GraphPattern::cycle(5)), 5u32.into());
        assert_eq!(count_spanning_trees(&GraphPattern::path(4)), 1u32.into());

        let disconnected = GraphPattern::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(count_spanning_trees(&disconnected), 0u32.into());

        let single = GraphPattern::new(1, []).unwrap();
        assert_eq!(count_spanning_trees(&single), 1u32.into());
    }
}
