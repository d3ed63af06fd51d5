//! Robinson–Schensted correspondences on weighted differential graphs via
//! growth diagrams, and the counting identity they realize.

mod identity;
mod mclarnan;
mod rsk;

pub use identity::{colored_path_counts, path_counts, verify_identity, IdentityReport};
pub use mclarnan::{canonical_mclarnan, rsk_eligibility, young_row_insertion, DomainItem, McLarnanMap, UpEdge};
pub use rsk::{
    all_colored_permutations, enumerate_colored_paths, enumerate_paths, rsk_forward, rsk_inverse, ColoredPermutation,
    PathTableau, RskOutput,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("at {element}: {domain} incoming items but {codomain} outgoing edges")]
    CardinalityMismatch { element: String, domain: usize, codomain: usize },
    #[error("between {lower} and {upper}: {down_up} down-up paths but {up_down} up-down paths")]
    PairingMismatch { lower: String, upper: String, down_up: usize, up_down: usize },
    #[error("not eligible for colored growth: {0}")]
    Ineligible(String),
    #[error("invalid colored permutation: {0}")]
    InvalidPermutation(String),
    #[error("tableaux end at different elements: {0} and {1}")]
    ShapeMismatch(String, String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("not a path from the bottom: {0}")]
    NotAPath(String),
    #[error("rank {requested} is beyond the graph's top rank {available}")]
    WindowTooShallow { requested: usize, available: i64 },
    #[error("the map is not a bijection at {0}")]
    NotBijective(String),
}
