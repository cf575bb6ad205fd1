//! Nowhere-zero group labelings of graphs.
//!
//! Constructions for irregular and sum-coloring edge labelings over arbitrary
//! finite Abelian groups, plus exhaustive search that computes the
//! corresponding group invariants exactly on small graphs.

pub mod coloring;
pub mod error;
pub mod forest;
pub mod generators;
pub mod graph;
pub mod group;
pub mod irregular;
pub mod labeling;
pub mod local;
pub mod oracle;
pub mod product;
pub mod tree;

pub use error::{Error, Result};
pub use graph::Graph;
pub use group::{enumerate_abelian_groups, AbelianGroup, GroupElement};
pub use labeling::{validate, weights, Distinguish, Labeling, LabelingMode, NonzeroSums, ValidationReport};
