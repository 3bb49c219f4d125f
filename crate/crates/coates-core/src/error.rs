use alloc::string::String;
use core::fmt;

use num_bigint::BigUint;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A token did not match the rational-number grammar.
    MalformedRational(String),
    /// A `p/q` token with `q = 0`.
    ZeroDenominator(String),
    /// An operation that requires a square matrix got `rows x cols`.
    NonSquare { rows: usize, cols: usize },
    /// Matrix dimensions and entry count disagree.
    DimensionMismatch { rows: usize, cols: usize, entries: usize },
    /// An index set entry is outside `1..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// An index set entry occurs twice.
    DuplicateIndex(usize),
    /// The operation needs a nonempty index set.
    EmptyIndexSet,
    /// The matrix is not symmetric.
    NotSymmetric,
    /// The matrix does not have zero row sums.
    NotZeroRowSum,
    /// A graph edge or arc endpoint is invalid (self-loop or out of range).
    InvalidEndpoint { u: usize, v: usize, n: usize },
    /// The chosen root is not a vertex of the graph.
    InvalidRoot { root: usize, n: usize },
    /// An arc referenced by a tree does not exist in the digraph.
    DanglingArc { from: usize, to: usize },
    /// The arc set does not form a directed tree converging to the root.
    MalformedTree(&'static str),
    /// The digraph's arc pattern is not symmetric, so the tree-count
    /// formula does not apply.
    AsymmetricPattern,
    /// The predicted number of edge combinations exceeds the work limit.
    CombinationLimitExceeded { predicted: BigUint, limit: u64 },
    /// The predicted number of directed trees exceeds the work limit.
    TreeCountExceedsLimit { predicted: BigUint, limit: u64 },
    /// Enumeration was aborted after emitting `limit` trees.
    TreeLimitExceeded { limit: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedRational(tok) => write!(f, "malformed rational token {tok:?}"),
            Error::ZeroDenominator(tok) => write!(f, "zero denominator in token {tok:?}"),
            Error::NonSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows} x {cols}")
            }
            Error::DimensionMismatch { rows, cols, entries } => write!(
                f,
                "entry count {entries} does not match dimensions {rows} x {cols}"
            ),
            Error::IndexOutOfRange { index, n } => {
                write!(f, "index {index} out of range 1..={n}")
            }
            Error::DuplicateIndex(i) => write!(f, "duplicate index {i}"),
            Error::EmptyIndexSet => write!(f, "index set must be nonempty"),
            Error::NotSymmetric => write!(f, "matrix is not symmetric"),
            Error::NotZeroRowSum => write!(f, "matrix does not have zero row sums"),
            Error::InvalidEndpoint { u, v, n } => {
                write!(f, "invalid endpoint pair ({u}, {v}) for {n} vertices")
            }
            Error::InvalidRoot { root, n } => {
                write!(f, "root {root} is not a vertex of a {n}-vertex graph")
            }
            Error::DanglingArc { from, to } => {
                write!(f, "arc {from} -> {to} does not exist in the digraph")
            }
            Error::MalformedTree(reason) => write!(f, "malformed directed tree: {reason}"),
            Error::AsymmetricPattern => {
                write!(f, "arc pattern is not symmetric; tree-count formula refused")
            }
            Error::CombinationLimitExceeded { predicted, limit } => write!(
                f,
                "predicted {predicted} edge combinations exceed the limit of {limit}"
            ),
            Error::TreeCountExceedsLimit { predicted, limit } => write!(
                f,
                "predicted {predicted} directed trees exceed the limit of {limit}"
            ),
            Error::TreeLimitExceeded { limit } => {
                write!(f, "enumeration aborted after reaching the limit of {limit} trees")
            }
        }
    }
}

impl core::error::Error for Error {}
