//! IO companion to `coates-core`: the plain-text matrix file format, the
//! floating-point spanning-tree-count cross-check, and the `coates`
//! command-line tool.

pub mod commands;
pub mod error;
pub mod format;
pub mod spectral;

pub use commands::{run, Cli, Command, DetMethod, JscMethod};
pub use error::CliError;
pub use format::{parse_matrix, write_matrix, FormatError};
pub use spectral::eigenvalue_tree_count;
