//! Constructors for the weighted families and the product, factor, scale and
//! truncation operators on them.

mod graphs;
mod ops;
mod points;
mod spec;

pub use graphs::{make_graded_graph, twos_graph, yf1_graph, yf1_words, zchain_graph, WeightedGraph};
pub use ops::{
    factor, is_convex_sublattice, product, scale, sim_components, truncate_lattice_check, truncate_points, Factor,
};
pub use points::{grid_window, make_point_poset, make_window, CustomFamilyFile, WeightedPoset};
pub use spec::{FamilyKind, FamilySpec, TwosBlock};

use crate::graph::GraphError;
use crate::lattice::LatticeError;
use crate::poset::PosetError;
use crate::solve::SolveError;
use crate::verify::VerifyError;
use crate::weights::WeightError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("cannot parse family {0}")]
    Parse(String),
    #[error("{0} is not presented by a point poset")]
    NotDistributive(String),
    #[error("{0} has no canonical weighting")]
    NoCanonicalWeights(String),
    #[error("{0} has no graded-graph presentation here")]
    UnsupportedSpec(String),
    #[error("weights are not differential: {0}")]
    NotDifferential(String),
    #[error("deriving weights: {0}")]
    Derivation(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
