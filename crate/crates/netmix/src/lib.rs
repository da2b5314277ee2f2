//! Mixing-pattern analysis for weighted directed networks.
//!
//! The crate computes edge-weighted assortativity coefficients between
//! arbitrary vertex features (strength-strength correlation being the main
//! case), generates seeded random-network ensembles (directed weighted ER,
//! strength-based preferential attachment, two-community SBM), rewires
//! weighted undirected networks to a target assortativity via an
//! acceptance-ratio chain, and extracts disparity-filter backbones.

pub mod assort;
pub mod backbone;
pub mod error;
pub mod experiment;
pub mod gen;
pub mod graph;
pub mod rewire;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Degeneracy, Error, Result};
pub use graph::{Direction, FeatureTable, StrengthKind, WeightedDigraph};
