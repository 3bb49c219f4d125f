//! Determinants of arbitrary square matrices by directed-spanning-tree
//! enumeration on the Coates graph of the equicofactor extension.
//!
//! A directed tree with reference node `r` is a spanning subgraph in which
//! every vertex except `r` has out-degree exactly one, `r` has out-degree
//! zero, and the arc set is acyclic; all parent chains converge on `r`. For
//! an equicofactor matrix every first-order cofactor equals the sum of tree
//! weight products at any fixed root, so `det(A)` is recovered from the
//! trees of the extension of `A` at any reference node.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;
use crate::graph::{build_tree_digraph, count_spanning_trees, WeightedDigraph};
use crate::limits::Limits;
use crate::matrix::{equicofactor_extend, Matrix};
use crate::rational::Rational;
use crate::Result;

/// A directed spanning tree converging on its reference node: one parent
/// arc per non-root vertex, stored ascending by source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedTree {
    root: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedTree {
    /// Validates that `arcs` gives exactly one parent to every non-root
    /// vertex of `{root} ∪ sources` and that every parent chain reaches
    /// `root` without cycling.
    pub fn new(root: usize, arcs: impl Into<Vec<(usize, usize)>>) -> Result<Self> {
        let mut arcs = arcs.into();
        arcs.sort_unstable();
        let tree = Self { root, arcs };
        for pair in tree.arcs.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::MalformedTree("a vertex has two outgoing arcs"));
            }
        }
        if tree.parent_of(root).is_some() {
            return Err(Error::MalformedTree("the root must have out-degree zero"));
        }
        for &(v, _) in &tree.arcs {
            let mut cur = v;
            let mut steps = 0;
            while cur != root {
                match tree.parent_of(cur) {
                    Some(p) => cur = p,
                    None => return Err(Error::MalformedTree("a parent chain leaves the tree")),
                }
                steps += 1;
                if steps > tree.arcs.len() {
                    return Err(Error::MalformedTree("a parent chain cycles"));
                }
            }
        }
        Ok(tree)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Parent arcs `(vertex, parent)`, ascending by vertex.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn parent_of(&self, vertex: usize) -> Option<usize> {
        self.arcs
            .binary_search_by_key(&vertex, |&(v, _)| v)
            .ok()
            .map(|i| self.arcs[i].1)
    }
}

/// Product of a tree's arc weights in a digraph; the empty tree has
/// weight one.
pub fn tree_weight(tree: &DirectedTree, digraph: &WeightedDigraph) -> Result<Rational> {
    let mut product = Rational::one();
    for &(from, to) in tree.arcs() {
        match digraph.arc_weight(from, to) {
            Some(w) => product *= w,
            None => return Err(Error::DanglingArc { from, to }),
        }
    }
    Ok(product)
}

/// Every directed tree at one root, with per-tree products and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub root: usize,
    pub trees: Vec<(DirectedTree, Rational)>,
    pub total: Rational,
}

/// Streams every directed tree of `digraph` with reference node `root`,
/// each exactly once, in lexicographic order on the sorted arc sequence.
///
/// When the arc pattern is symmetric the total count is predicted by the
/// matrix-tree count of the undirected support and checked against
/// `limits.max_trees` before any work; otherwise the limit is enforced
/// during enumeration and the stream ends with an error at the bound.
pub fn enumerate_rooted_trees<'a>(
    digraph: &'a WeightedDigraph,
    root: usize,
    limits: &Limits,
) -> Result<TreeEnumeration<'a>> {
    TreeEnumeration::new(digraph, root, limits.max_trees)
}

/// Backtracking enumerator: non-root vertices are assigned parent arcs in
/// ascending vertex order, targets tried in ascending order. A partial
/// assignment is extended only when it stays acyclic and every vertex can
/// still reach the root in the residual graph (assigned vertices keep only
/// their chosen arc), so every surviving branch yields at least one tree.
pub struct TreeEnumeration<'a> {
    digraph: &'a WeightedDigraph,
    root: usize,
    verts: Vec<usize>,
    parent: Vec<usize>,
    pos: Vec<usize>,
    rev_adj: Vec<Vec<usize>>,
    seen: Vec<bool>,
    queue: Vec<usize>,
    depth: usize,
    emitted: u64,
    max_trees: u64,
    done: bool,
}

impl<'a> TreeEnumeration<'a> {
    fn new(digraph: &'a WeightedDigraph, root: usize, max_trees: u64) -> Result<Self> {
        let n = digraph.vertex_count();
        if root == 0 || root > n {
            return Err(Error::InvalidRoot { root, n });
        }
        if digraph.has_symmetric_pattern() {
            let predicted = count_spanning_trees(&digraph.undirected_support());
            if predicted > BigUint::from(max_trees) {
                return Err(Error::TreeCountExceedsLimit { predicted, limit: max_trees });
            }
        }

        let mut rev_adj = alloc::vec![Vec::new(); n + 1];
        for arc in digraph.arcs() {
            rev_adj[arc.to].push(arc.from);
        }

        let verts: Vec<usize> = (1..=n).filter(|&v| v != root).collect();
        let mut state = Self {
            digraph,
            root,
            pos: alloc::vec![0; verts.len()],
            verts,
            parent: alloc::vec![0; n + 1],
            rev_adj,
            seen: alloc::vec![false; n + 1],
            queue: Vec::with_capacity(n),
            depth: 0,
            emitted: 0,
            max_trees,
            done: false,
        };
        // No spanning tree exists at all when some vertex cannot reach the
        // root; the stream is empty rather than an error.
        if !state.residual_spans() {
            state.done = true;
        }
        Ok(state)
    }

    /// Does assigning `v -> target` close a cycle through already-assigned
    /// parent arcs? Fast path; subsumed by the residual check but cheap.
    fn creates_cycle(&self, v: usize, target: usize) -> bool {
        let mut cur = target;
        while cur != 0 {
            if cur == v {
                return true;
            }
            cur = self.parent[cur];
        }
        false
    }

    /// Reverse search from the root through arcs still usable under the
    /// current partial assignment; true when every vertex is reached.
    fn residual_spans(&mut self) -> bool {
        self.seen.fill(false);
        self.queue.clear();
        self.seen[self.root] = true;
        self.queue.push(self.root);
        let mut reached = 1;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for i in 0..self.rev_adj[u].len() {
                let w = self.rev_adj[u][i];
                if !self.seen[w] && (self.parent[w] == 0 || self.parent[w] == u) {
                    self.seen[w] = true;
                    reached += 1;
                    self.queue.push(w);
                }
            }
        }
        reached == self.digraph.vertex_count()
    }
}

impl Iterator for TreeEnumeration<'_> {
    type Item = Result<DirectedTree>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            if self.depth == self.verts.len() {
                self.emitted += 1;
                if self.emitted > self.max_trees {
                    self.done = true;
                    return Some(Err(Error::TreeLimitExceeded { limit: self.max_trees }));
                }
                let arcs: Vec<(usize, usize)> =
                    self.verts.iter().map(|&v| (v, self.parent[v])).collect();
                let tree = DirectedTree { root: self.root, arcs };
                if self.depth == 0 {
                    self.done = true;
                } else {
                    self.depth -= 1;
                    self.parent[self.verts[self.depth]] = 0;
                }
                return Some(Ok(tree));
            }

            let v = self.verts[self.depth];
            let mut advanced = false;
            while self.pos[self.depth] < self.digraph.out_arcs(v).len() {
                let target = self.digraph.out_arcs(v)[self.pos[self.depth]].to;
                self.pos[self.depth] += 1;
                if self.creates_cycle(v, target) {
                    continue;
                }
                self.parent[v] = target;
                if !self.residual_spans() {
                    self.parent[v] = 0;
                    continue;
                }
                self.depth += 1;
                if self.depth < self.verts.len() {
                    self.pos[self.depth] = 0;
                }
                advanced = true;
                break;
            }
            if advanced {
                continue;
            }
            if self.depth == 0 {
                self.done = true;
                return None;
            }
            self.depth -= 1;
            self.parent[self.verts[self.depth]] = 0;
        }
    }
}

/// Collects the full enumeration at one root into a report with products.
pub fn collect_tree_report(
    digraph: &WeightedDigraph,
    root: usize,
    limits: &Limits,
) -> Result<TreeReport> {
    let mut trees = Vec::new();
    let mut total = Rational::from_integer(0.into());
    for tree in enumerate_rooted_trees(digraph, root, limits)? {
        let tree = tree?;
        let weight = tree_weight(&tree, digraph)?;
        total += &weight;
        trees.push((tree, weight));
    }
    Ok(TreeReport { root, trees, total })
}

/// Determinant of a square matrix by the topological route: extend to an
/// equicofactor matrix, build the directed Coates graph with arc weights
/// `-a[u][v]`, and sum the weight products of all directed trees at the
/// reference node (defaults to 1). An extension digraph without spanning
/// trees at the root yields 0, matching singular inputs.
pub fn det_via_trees(
    m: &Matrix,
    root: Option<usize>,
    limits: &Limits,
) -> Result<(Rational, TreeReport)> {
    let extension = equicofactor_extend(m)?;
    let digraph = build_tree_digraph(&extension)?;
    let report = collect_tree_report(&digraph, root.unwrap_or(1), limits)?;
    Ok((report.total.clone(), report))
}

/// Number of directed trees per root for a digraph whose arc pattern is
/// symmetric: the matrix-tree count of the undirected support, which is the
/// same for every reference node. Refuses asymmetric patterns, where counts
/// genuinely differ by root.
pub fn count_trees_per_root(digraph: &WeightedDigraph, root: usize) -> Result<BigUint> {
    let n = digraph.vertex_count();
    if root == 0 || root > n {
        return Err(Error::InvalidRoot { root, n });
    }
    if !digraph.has_symmetric_pattern() {
        return Err(Error::AsymmetricPattern);
    }
    Ok(count_spanning_trees(&digraph.undirected_support()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{mat, q};

    fn extended_minor_digraph() -> WeightedDigraph {
        build_tree_digraph(&mat(&[
            &[1, 2, 0, -3],
            &[2, 3, -1, -4],
            &[0, -1, 4, -3],
            &[-3, -4, -3, 10],
        ]))
        .unwrap()
    }

    fn single_tree_digraph() -> WeightedDigraph {
        build_tree_digraph(&mat(&[
            &[1, 2, 0, -3],
            &[-1, 0, 1, 0],
            &[0, 0, 2, -2],
            &[0, -2, -3, 5],
        ]))
        .unwrap()
    }

    fn collect(d: &WeightedDigraph, root: usize) -> Vec<DirectedTree> {
        enumerate_rooted_trees(d, root, &Limits::default())
            .unwrap()
            .map(|t| t.unwrap())
            .collect()
    }

    #[test]
    fn eight_trees_of_the_worked_example() {
        let d = extended_minor_digraph();
        let trees = collect(&d, 1);
        assert_eq!(trees.len(), 8);

        let products: Vec<i64> = trees
            .iter()
            .map(|t| tree_weight(t, &d).unwrap().to_integer().try_into().unwrap())
            .collect();
        // Lexicographic order on the (parent(2), parent(3), parent(4)) arcs.
        assert_eq!(products, alloc::vec![-6, -8, -6, -18, -24, 9, 12, 36]);

        let mut sorted = products;
        sorted.sort_unstable();
        let mut expected = alloc::vec![-8, -24, -6, 9, 36, 12, -18, -6];
        expected.sort_unstable();
        assert_eq!(sorted, expected);

        assert_eq!(trees[0].arcs(), &[(2, 1), (3, 2), (4, 1)]);
        assert_eq!(trees[0].parent_of(3), Some(2));
        assert_eq!(trees[0].parent_of(1), None);
    }

    #[test]
    fn unique_tree_of_the_asymmetric_example() {
        let d = single_tree_digraph();
        let trees = collect(&d, 1);
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].arcs(), &[(2, 1), (3, 4), (4, 2)]);
        assert_eq!(tree_weight(&trees[0], &d).unwrap(), q(4, 1));
    }

    #[test]
    fn single_vertex_graph_has_one_empty_tree() {
        let d = WeightedDigraph::new(1, []).unwrap();
        let trees = collect(&d, 1);
        assert_eq!(trees.len(), 1);
        assert!(trees[0].arcs().is_empty());
        assert_eq!(tree_weight(&trees[0], &d).unwrap(), q(1, 1));
    }

    #[test]
    fn unreachable_root_yields_no_trees() {
        let d = WeightedDigraph::new(2, [(1, 2, q(1, 1))]).unwrap();
        assert!(collect(&d, 1).is_empty());
    }

    #[test]
    fn tree_weights_match_worked_products() {
        let d = extended_minor_digraph();
        let t = DirectedTree::new(1, alloc::vec![(2, 1), (3, 2), (4, 2)]).unwrap();
        assert_eq!(tree_weight(&t, &d).unwrap(), q(-8, 1));

        let t = DirectedTree::new(1, alloc::vec![(2, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(tree_weight(&t, &d).unwrap(), q(9, 1));

        let empty = DirectedTree::new(1, Vec::new()).unwrap();
        assert_eq!(tree_weight(&empty, &d).unwrap(), q(1, 1));

        let dangling = DirectedTree::new(1, alloc::vec![(2, 1), (3, 1), (4, 1)]).unwrap();
        assert!(matches!(
            tree_weight(&dangling, &d),
            Err(Error::DanglingArc { from: 3, to: 1 })
        ));
    }

    #[test]
    fn malformed_trees_are_rejected() {
        assert!(matches!(
            DirectedTree::new(1, alloc::vec![(2, 1), (2, 3)]),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            DirectedTree::new(1, alloc::vec![(1, 2), (2, 1)]),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            DirectedTree::new(1, alloc::vec![(2, 3), (3, 2)]),
            Err(Error::MalformedTree(_))
        ));
        assert!(matches!(
            DirectedTree::new(1, alloc::vec![(2, 5)]),
            Err(Error::MalformedTree(_))
        ));
    }

    #[test]
    fn determinant_via_trees_of_worked_example() {
        let m = mat(&[&[1, 2, 0], &[2, 3, -1], &[0, -1, 4]]);
        let (det, report) = det_via_trees(&m, None, &Limits::default()).unwrap();
        assert_eq!(det, q(-5, 1));
        assert_eq!(report.trees.len(), 8);
        assert_eq!(report.root, 1);
    }

    #[test]
    fn determinant_via_trees_small_cases() {
        let block = mat(&[&[1, 2, 0], &[-1, 0, 1], &[0, 0, 2]]);
        let (det, report) = det_via_trees(&block, None, &Limits::default()).unwrap();
        assert_eq!(det, q(4, 1));
        assert_eq!(report.trees.len(), 1);

        let (det, report) = det_via_trees(&mat(&[&[7]]), None, &Limits::default()).unwrap();
        assert_eq!(det, q(7, 1));
        assert_eq!(report.trees.len(), 1);

        let (det, report) = det_via_trees(&mat(&[&[0]]), None, &Limits::default()).unwrap();
        assert_eq!(det, q(0, 1));
        assert!(report.trees.is_empty());

        let (det, _) = det_via_trees(&Matrix::zeros(0, 0), None, &Limits::default()).unwrap();
        assert_eq!(det, q(1, 1));
    }

    #[test]
    fn root_choice_does_not_change_the_sum() {
        let m = mat(&[&[1, 2, 0], &[2, 3, -1], &[0, -1, 4]]);
        for root in 1..=4 {
            let (det, _) = det_via_trees(&m, Some(root), &Limits::default()).unwrap();
            assert_eq!(det, q(-5, 1), "root {root}");
        }
    }

    #[test]
    fn per_root_counts() {
        let d = extended_minor_digraph();
        for root in 1..=4 {
            assert_eq!(count_trees_per_root(&d, root).unwrap(), 8u32.into());
            assert_eq!(collect(&d, root).len(), 8, "enumeration at root {root}");
        }

        let k2 = WeightedDigraph::new(2, [(1, 2, q(1, 1)), (2, 1, q(1, 1))]).unwrap();
        assert_eq!(count_trees_per_root(&k2, 1).unwrap(), 1u32.into());

        let c4 = WeightedDigraph::new(
            4,
            [
                (1, 2, q(1, 1)),
                (2, 1, q(1, 1)),
                (2, 3, q(1, 1)),
                (3, 2, q(1, 1)),
                (3, 4, q(1, 1)),
                (4, 3, q(1, 1)),
                (4, 1, q(1, 1)),
                (1, 4, q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(count_trees_per_root(&c4, 2).unwrap(), 4u32.into());

        assert!(matches!(
            count_trees_per_root(&single_tree_digraph(), 1),
            Err(Error::AsymmetricPattern)
        ));
        assert!(matches!(
            count_trees_per_root(&k2, 3),
            Err(Error::InvalidRoot { root: 3, n: 2 })
        ));
    }

    #[test]
    fn limits_are_enforced() {
        let d = extended_minor_digraph();
        let tight = Limits { max_trees: 7, ..Limits::default() };
        match enumerate_rooted_trees(&d, 1, &tight).map(|_| ()) {
            Err(Error::TreeCountExceedsLimit { predicted, limit: 7 }) => {
                assert_eq!(predicted, 8u32.into());
            }
            other => panic!("expected pre-check refusal, got {other:?}"),
        }
        let exact = Limits { max_trees: 8, ..Limits::default() };
        assert_eq!(
            enumerate_rooted_trees(&d, 1, &exact).unwrap().count(),
            8
        );

        // Asymmetric pattern: no pre-check, abort mid-stream at the bound.
        let asym = WeightedDigraph::new(
            3,
            [(2, 1, q(1, 1)), (3, 1, q(1, 1)), (3, 2, q(1, 1))],
        )
        .unwrap();
        let tight = Limits { max_trees: 1, ..Limits::default() };
        let outcomes: Vec<_> = enumerate_rooted_trees(&asym, 1, &tight).unwrap().collect();
        assert_eq!(outcomes.len(), 2);
        assert!(outcomes[0].is_ok());
        assert!(matches!(outcomes[1], Err(Error::TreeLimitExceeded { limit: 1 })));

        assert!(matches!(
            enumerate_rooted_trees(&d, 9, &Limits::default()),
            Err(Error::InvalidRoot { root: 9, n: 4 })
        ));
    }
}
