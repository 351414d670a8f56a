//! Words in the singular virtual braid monoid, its defining relations, and
//! bounded equivalence checking.

pub mod equiv;
pub mod relations;
pub mod word;

pub use equiv::equivalent;
pub use relations::{is_catalog_step, relation_catalog, rewrite_neighbors, Family, RelationInstance};
pub use word::{format_letters, parse_word, BraidStep, BraidWord, Generator, Kind};
