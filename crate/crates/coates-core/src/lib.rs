//! Exact topological evaluation of determinants and principal minors.
//!
//! Everything here runs in exact rational arithmetic over arbitrary-precision
//! integers; sign decisions are never subject to rounding. Three routes to the
//! same values are provided and cross-checkable against each other:
//!
//! * [`det_oracle`] / [`rank_exact`] — fraction-free elimination with full
//!   pivoting, the independent reference path;
//! * [`phi`] — principal minors of symmetric zero-row-sum matrices by
//!   enumerating acyclic edge selections on the undirected Coates graph;
//! * [`det_via_trees`] — determinants of arbitrary square matrices by
//!   enumerating directed spanning trees on the Coates graph of the
//!   equicofactor extension.
//!
//! [`jsc_check`] applies the Jacobi signature criterion on top of either
//! minor route to decide negative definiteness on the rank.
//!
//! The crate is `no_std` (it allocates, but performs no IO); file formats,
//! the command-line front end, and the floating-point spanning-tree-count
//! cross-check live in the companion `coates-cli` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod dsu;
mod elimination;
mod error;
mod graph;
mod limits;
mod matrix;
mod phi;
mod rational;
mod stability;
mod trees;

pub use elimination::{det_oracle, rank_exact};
pub use error::Error;
pub use graph::{
    build_tree_digraph, build_undirected_coates, count_spanning_trees, laplacian, Arc, Edge,
    GraphPattern, UndirectedWeightedGraph, WeightedDigraph,
};
pub use limits::Limits;
pub use matrix::{equicofactor_extend, principal_submatrix, IndexSet, Matrix};
pub use phi::{
    candidate_edges, covers_set, is_acyclic, minor_via_phi, phi, satisfies_condition_iv,
    EdgeSelection, PhiReport,
};
pub use rational::{parse_rational, rational_str, sign_of, Rational};
pub use stability::{jsc_check, MinorMethod, StabilityVerdict};
pub use trees::{
    collect_tree_report, count_trees_per_root, det_via_trees, enumerate_rooted_trees, tree_weight,
    DirectedTree, TreeEnumeration, TreeReport,
};

pub type Result<T> = core::result::Result<T, Error>;
