/// Work limits for the intrinsically exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Refuse a minor-by-subgraph run whose predicted combination count
    /// `C(candidates, |S|)` exceeds this bound.
    pub max_combinations: u64,
    /// Refuse (or abort) a tree enumeration past this many directed trees.
    pub max_trees: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_combinations: 10_000_000, max_trees: 1_000_000 }
    }
}

impl Limits {
    /// Effectively unbounded; used by forced runs.
    pub fn unlimited() -> Self {
        Self { max_combinations: u64::MAX, max_trees: u64::MAX }
    }
}
