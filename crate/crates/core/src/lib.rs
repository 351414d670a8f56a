//! Singular virtual braids: words and relations, Gauss diagrams,
//! desingularization, the pure/permutation decomposition, and ribbon-graph
//! surfaces.

pub mod braid;
pub mod cli;
pub mod desing;
pub mod error;
pub mod gauss;
pub mod perm;
pub mod pure;
pub mod search;
pub mod suites;
pub mod surface;

#[cfg(test)]
mod testing;

pub use braid::{equivalent, BraidWord, Generator};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use search::{Budget, Verdict};
