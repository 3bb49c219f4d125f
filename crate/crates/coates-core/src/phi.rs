//! Minor evaluation for symmetric zero-row-sum matrices by enumerating
//! acyclic edge selections on the undirected Coates graph.
//!
//! A selection of exactly `|S|` edges contributes to `phi` when it is
//! acyclic, touches every vertex of `S`, and admits an assignment of each
//! edge to a distinct endpoint in `S`. The principal minor is then
//! `(-1)^{|S|} * phi`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::binomial;

use crate::dsu::Dsu;
use crate::error::Error;
use crate::graph::{build_undirected_coates, UndirectedWeightedGraph};
use crate::limits::Limits;
use crate::matrix::{IndexSet, Matrix};
use crate::rational::Rational;
use crate::Result;

/// A candidate subgraph: indices into the Coates graph's edge list,
/// ascending. Cardinality always equals `|S|` in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSelection {
    indices: Vec<usize>,
}

impl EdgeSelection {
    pub fn new(indices: impl Into<Vec<usize>>) -> Self {
        let mut indices = indices.into();
        indices.sort_unstable();
        Self { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Endpoint pairs of the selected edges.
    pub fn endpoints(&self, graph: &UndirectedWeightedGraph) -> Vec<(usize, usize)> {
        self.indices
            .iter()
            .map(|&i| {
                let e = &graph.edges()[i];
                (e.u, e.v)
            })
            .collect()
    }

    /// Product of the selected edge weights.
    pub fn product(&self, graph: &UndirectedWeightedGraph) -> Rational {
        self.indices
            .iter()
            .map(|&i| &graph.edges()[i].weight)
            .product()
    }
}

/// Result of one enumeration run over a vertex set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiReport {
    pub set: IndexSet,
    /// Selections passing all criteria, in lexicographic edge-index order,
    /// each with its weight product.
    pub valid_selections: Vec<(EdgeSelection, Rational)>,
    /// Selections that are acyclic, covering, and edge-correct but fail the
    /// distinct-start condition, with their products.
    pub excluded_by_iv: Vec<(EdgeSelection, Rational)>,
    /// Sum of the valid products.
    pub phi: Rational,
    /// `(-1)^{|S|} * phi`.
    pub minor: Rational,
}

/// Edges with at least one endpoint in `S`, as indices into the graph edge
/// list. Drawing selections from this list enforces criterion (III) by
/// construction.
pub fn candidate_edges(graph: &UndirectedWeightedGraph, s: &IndexSet) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    Ok(graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| s.contains(e.u) || s.contains(e.v))
        .map(|(i, _)| i)
        .collect())
}

/// True iff the edge set contains no cycle (i.e. it is a forest).
pub fn is_acyclic(edges: &[(usize, usize)]) -> bool {
    let slots = edges.iter().map(|&(u, v)| u.max(v)).max().map_or(0, |m| m + 1);
    let mut dsu = Dsu::new(slots);
    edges.iter().all(|&(u, v)| dsu.union(u, v))
}

/// True iff every vertex of `S` is an endpoint of at least one edge.
pub fn covers_set(edges: &[(usize, usize)], s: &IndexSet) -> bool {
    s.iter().all(|x| edges.iter().any(|&(u, v)| u == x || v == x))
}

/// The distinct-start condition: each edge can be assigned a distinct
/// endpoint lying in `S`. For selections that already pass criteria (I),
/// (II) and acyclicity this is equivalent to the test implemented here:
/// every connected component of the selection contains exactly one vertex
/// outside `S`. The equivalence with the matching formulation is enforced
/// by property tests.
pub fn satisfies_condition_iv(edges: &[(usize, usize)], s: &IndexSet) -> bool {
    let slots = edges.iter().map(|&(u, v)| u.max(v)).max().map_or(0, |m| m + 1);
    let mut dsu = Dsu::new(slots);
    let mut touched = Vec::new();
    for &(u, v) in edges {
        dsu.union(u, v);
        touched.push(u);
        touched.push(v);
    }
    touched.sort_unstable();
    touched.dedup();

    let mut outside = alloc::vec![0usize; slots];
    for &v in &touched {
        if !s.contains(v) {
            let root = dsu.find(v);
            outside[root] += 1;
        }
    }
    touched.iter().all(|&v| {
        let root = dsu.find(v);
        root != v || outside[root] == 1
    })
}

/// Enumerates all `|S|`-subsets of the candidate edges in lexicographic
/// order and sums the products of the selections that pass every criterion.
///
/// Requires a symmetric zero-row-sum matrix and a nonempty `S`. Refuses to
/// start when the predicted combination count `C(candidates, |S|)` exceeds
/// `limits.max_combinations`.
pub fn phi(m: &Matrix, s: &IndexSet, limits: &Limits) -> Result<PhiReport> {
    if !m.is_symmetric()? {
        return Err(Error::NotSymmetric);
    }
    if !m.is_zero_row_sum()? {
        return Err(Error::NotZeroRowSum);
    }
    if s.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let n = m.rows();
    if let Some(&max) = s.indices().last() {
        if max > n {
            return Err(Error::IndexOutOfRange { index: max, n });
        }
    }

    let graph = build_undirected_coates(m)?;
    let candidates = candidate_edges(&graph, s)?;
    let k = s.len();

    let predicted = binomial(BigUint::from(candidates.len()), BigUint::from(k));
    if predicted > BigUint::from(limits.max_combinations) {
        return Err(Error::CombinationLimitExceeded {
            predicted,
            limit: limits.max_combinations,
        });
    }

    let mut enumerator = SelectionScan::new(&graph, &candidates, s, k);
    enumerator.run();

    let phi: Rational = enumerator.valid.iter().map(|(_, p)| p).sum();
    let minor = if k % 2 == 1 { -phi.clone() } else { phi.clone() };
    Ok(PhiReport {
        set: s.clone(),
        valid_selections: enumerator.valid,
        excluded_by_iv: enumerator.excluded,
        phi,
        minor,
    })
}

/// Convenience wrapper returning only the minor `(-1)^{|S|} * phi`.
pub fn minor_via_phi(m: &Matrix, s: &IndexSet, limits: &Limits) -> Result<Rational> {
    Ok(phi(m, s, limits)?.minor)
}

/// Lexicographic combination scan over the candidate list, with one sound
/// prune: a branch is abandoned when the S-vertices still uncovered cannot
/// all be covered by the remaining candidate edges. The prune only skips
/// subsets that would fail criterion (II), so the reported selections are
/// exactly those of the unpruned scan.
struct SelectionScan<'a> {
    graph: &'a UndirectedWeightedGraph,
    candidates: &'a [usize],
    s: &'a IndexSet,
    k: usize,
    /// Bit per position in `S` covered by each candidate edge; `None` when
    /// `|S|` exceeds the mask width (the prune is skipped, not the scan).
    edge_masks: Option<Vec<u128>>,
    suffix_cover: Vec<u128>,
    chosen: Vec<usize>,
    valid: Vec<(EdgeSelection, Rational)>,
    excluded: Vec<(EdgeSelection, Rational)>,
}

impl<'a> SelectionScan<'a> {
    fn new(
        graph: &'a UndirectedWeightedGraph,
        candidates: &'a [usize],
        s: &'a IndexSet,
        k: usize,
    ) -> Self {
        let edge_masks = (s.len() <= 128).then(|| {
            candidates
                .iter()
                .map(|&ci| {
                    let e = &graph.edges()[ci];
                    let mut mask = 0u128;
                    for (bit, v) in s.iter().enumerate() {
                        if e.u == v || e.v == v {
                            mask |= 1 << bit;
                        }
                    }
                    mask
                })
                .collect::<Vec<_>>()
        });
        let suffix_cover = match &edge_masks {
            Some(masks) => {
                let mut suffix = alloc::vec![0u128; masks.len() + 1];
                for i in (0..masks.len()).rev() {
                    suffix[i] = suffix[i + 1] | masks[i];
                }
                suffix
            }
            None => alloc::vec![0; candidates.len() + 1],
        };
        Self {
            graph,
            candidates,
            s,
            k,
            edge_masks,
            suffix_cover,
            chosen: Vec::new(),
            valid: Vec::new(),
            excluded: Vec::new(),
        }
    }

    fn run(&mut self) {
        let full = match self.s.len() {
            len if self.edge_masks.is_none() => {
                debug_assert!(len > 128);
                0
            }
            128 => u128::MAX,
            len => (1u128 << len) - 1,
        };
        self.recurse(0, full);
    }

    fn recurse(&mut self, from: usize, uncovered: u128) {
        if self.chosen.len() == self.k {
            self.emit();
            return;
        }
        let remaining = self.k - self.chosen.len();
        if self.candidates.len() - from < remaining {
            return;
        }
        for pos in from..=self.candidates.len() - remaining {
            if let Some(masks) = &self.edge_masks {
                if uncovered & !self.suffix_cover[pos] != 0
                    || 2 * (remaining as u32) < uncovered.count_ones()
                {
                    // Later suffixes cover even less, so the whole range
                    // from here on is infeasible.
                    return;
                }
                self.chosen.push(pos);
                let next_uncovered = uncovered & !masks[pos];
                self.recurse(pos + 1, next_uncovered);
                self.chosen.pop();
            } else {
                self.chosen.push(pos);
                self.recurse(pos + 1, uncovered);
                self.chosen.pop();
            }
        }
    }

    fn emit(&mut self) {
        let selection =
            EdgeSelection::new(self.chosen.iter().map(|&p| self.candidates[p]).collect::<Vec<_>>());
        let endpoints = selection.endpoints(self.graph);
        if !is_acyclic(&endpoints) || !covers_set(&endpoints, self.s) {
            return;
        }
        let product = selection.product(self.graph);
        if satisfies_condition_iv(&endpoints, self.s) {
            self.valid.push((selection, product));
        } else {
            self.excluded.push((selection, product));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det_oracle;
    use crate::matrix::principal_submatrix;
    use crate::testkit::{example1, mat, q};

    fn s123() -> IndexSet {
        IndexSet::new([1, 2, 3], 5).unwrap()
    }

    #[test]
    fn candidate_edges_drop_far_edges() {
        let g = build_undirected_coates(&example1()).unwrap();
        let cand = candidate_edges(&g, &s123()).unwrap();
        // Everything except {4,5}, which is the last of the seven edges.
        assert_eq!(cand, alloc::vec![0, 1, 2, 3, 4, 5]);

        let all = candidate_edges(&g, &IndexSet::full(5)).unwrap();
        assert_eq!(all.len(), g.edges().len());

        assert!(matches!(
            candidate_edges(&g, &IndexSet::new(Vec::new(), 5).unwrap()),
            Err(Error::EmptyIndexSet)
        ));
    }

    #[test]
    fn acyclicity_cases() {
        assert!(!is_acyclic(&[(1, 2), (1, 5), (2, 5)]));
        assert!(is_acyclic(&[(1, 2), (2, 3), (3, 4)]));
        assert!(is_acyclic(&[(1, 5), (2, 5), (3, 5)]));
        assert!(is_acyclic(&[]));
    }

    #[test]
    fn cover_cases() {
        let s = s123();
        assert!(!covers_set(&[(1, 5), (3, 4), (3, 5)], &s));
        assert!(covers_set(&[(1, 2), (2, 3), (3, 4)], &s));
        assert!(!covers_set(&[], &s));
    }

    #[test]
    fn condition_iv_cases() {
        let s = s123();
        // Two components, one with no outside vertex: excluded.
        assert!(!satisfies_condition_iv(&[(1, 2), (3, 4), (3, 5)], &s));
        assert!(satisfies_condition_iv(&[(1, 2), (1, 5), (2, 3)], &s));
        // Components {1,2,5} and {3,4}, each with exactly one outside vertex.
        assert!(satisfies_condition_iv(&[(1, 2), (2, 5), (3, 4)], &s));
    }

    #[test]
    fn phi_of_worked_example() {
        let report = phi(&example1(), &s123(), &Limits::default()).unwrap();
        assert_eq!(report.phi, q(5, 1));
        assert_eq!(report.minor, q(-5, 1));
        assert_eq!(report.valid_selections.len(), 13);
        assert_eq!(report.excluded_by_iv.len(), 1);

        let products: Vec<i64> = report
            .valid_selections
            .iter()
            .map(|(_, p)| p.to_integer().try_into().unwrap())
            .collect();
        // Lexicographic edge-index order.
        assert_eq!(
            products,
            alloc::vec![6, -30, 48, 8, -10, 16, -40, 64, -12, 15, -24, 60, -96]
        );

        let mut sorted = products;
        sorted.sort_unstable();
        let mut expected = alloc::vec![6, 8, 16, 64, -24, -12, 48, -96, -10, -30, -40, 15, 60];
        expected.sort_unstable();
        assert_eq!(sorted, expected);

        assert_eq!(report.excluded_by_iv[0].1, q(-80, 1));
        // The one excluded subgraph is {1,2}, {3,4}, {3,5}.
        let g = build_undirected_coates(&example1()).unwrap();
        assert_eq!(
            report.excluded_by_iv[0].0.endpoints(&g),
            alloc::vec![(1, 2), (3, 4), (3, 5)]
        );
    }

    #[test]
    fn phi_over_full_vertex_set_is_zero() {
        let report = phi(&example1(), &IndexSet::full(5), &Limits::default()).unwrap();
        assert_eq!(report.phi, q(0, 1));
        assert_eq!(report.minor, q(0, 1));
        assert!(report.valid_selections.is_empty());
    }

    #[test]
    fn phi_of_singleton() {
        let s = IndexSet::new([1], 5).unwrap();
        let report = phi(&example1(), &s, &Limits::default()).unwrap();
        assert_eq!(report.phi, q(-1, 1));
        assert_eq!(report.minor, q(1, 1));
        assert_eq!(report.valid_selections.len(), 2);

        let sub = principal_submatrix(&example1(), &s).unwrap();
        assert_eq!(report.minor, det_oracle(&sub).unwrap());
    }

    #[test]
    fn phi_preconditions() {
        let asym = mat(&[&[0, 1], &[2, 0]]);
        assert!(matches!(
            phi(&asym, &IndexSet::new([1], 2).unwrap(), &Limits::default()),
            Err(Error::NotSymmetric)
        ));

        let not_zrs = Matrix::identity(2);
        assert!(matches!(
            phi(&not_zrs, &IndexSet::new([1], 2).unwrap(), &Limits::default()),
            Err(Error::NotZeroRowSum)
        ));

        let out_of_range = IndexSet::new([1, 2, 3], 9).unwrap();
        let small = mat(&[&[1, -1], &[-1, 1]]);
        assert!(matches!(
            phi(&small, &out_of_range, &Limits::default()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn phi_respects_combination_limit() {
        let tight = Limits { max_combinations: 19, ..Limits::default() };
        let err = phi(&example1(), &s123(), &tight).unwrap_err();
        match err {
            Error::CombinationLimitExceeded { predicted, limit } => {
                assert_eq!(predicted, 20u32.into());
                assert_eq!(limit, 19);
            }
            other => panic!("unexpected error {other:?}"),
        }

        let exact = Limits { max_combinations: 20, ..Limits::default() };
        assert!(phi(&example1(), &s123(), &exact).is_ok());
    }

    #[test]
    fn phi_runs_are_deterministic() {
        let a = phi(&example1(), &s123(), &Limits::default()).unwrap();
        let b = phi(&example1(), &s123(), &Limits::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn minor_via_phi_matches_oracle_on_worked_example() {
        let m = minor_via_phi(&example1(), &s123(), &Limits::default()).unwrap();
        assert_eq!(m, q(-5, 1));

        let full = minor_via_phi(&example1(), &IndexSet::full(5), &Limits::default()).unwrap();
        assert_eq!(full, q(0, 1));
    }
}
