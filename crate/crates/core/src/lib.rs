//! Finite soft bitopological spaces.
//!
//! A soft set `F: A → P(X)` over finite `A` and `X` is stored as one bitmask
//! per parameter. Its soft elements are the selections `a` with
//! `a(t) ∈ F(t)`, enumerated in lexicographic order. The crate decides
//! pairwise soft separation, builds the bitopology induced on soft elements,
//! computes minimal pairwise soft subcovers, and handles cofinite soft sets
//! over an infinite parameter set symbolically.

pub mod cli;
pub mod error;
pub mod finite_sets;
pub mod pairwise;
pub mod sampling;
pub mod soft_core;
pub mod soft_topology;
pub mod symbolic;
pub mod verdict;

pub use error::{Error, Result};
pub use finite_sets::{Axiom, BitopPair, ClassicalTopology, FinSet, PairReading, Separation};
pub use pairwise::{SoftBitopSpace, SoftCover};
pub use soft_core::{SeSubset, SoftElement, SoftElements, SoftSet};
pub use soft_topology::SoftTopology;
pub use verdict::{Side, Verdict, Witness};
