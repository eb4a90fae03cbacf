//! Finite trees and quasi-trees described from their leaves.
//!
//! A leafy rooted tree is determined by the ternary relation `Rxyz` ("x lies
//! below the join of y and z") on its leaves; an unrooted quasi-tree by the
//! 4-ary separation relation `Sxyzu` ("the paths [x,y] and [z,u] are
//! disjoint") on its leaves. This crate computes those relations, checks
//! their first-order axiom suites (A1-A10, B1-B8, S1-S5), reconstructs the
//! trees by several independent algorithms, searches for countermodels
//! separating the axioms, and computes the exact rank-width of small graphs
//! through cubic layouts and their separation relations.
//!
//! Everything operates on immutable values; all functions are pure and safe
//! to call concurrently.

pub mod axioms;
mod bits;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod leaf_structure;
pub mod model_search;
pub mod oforest;
pub mod quasitree;
pub mod rankwidth;
pub mod separation;
pub mod tree;
pub mod weights;

pub use axioms::{Axiom, AxiomCheck};
pub use error::{Error, Result};
pub use leaf_structure::LeafStructure;
pub use oforest::OForest;
pub use quasitree::{BMode, Median, QuasiTree, UnrootedTree};
pub use rankwidth::{Layout, SimpleGraph};
pub use separation::SeparationStructure;
pub use tree::{LaminarFamily, NodeId, RootedTree};
pub use weights::WeightAssignment;
