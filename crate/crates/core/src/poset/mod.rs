//! Windowed posets of points: construction, structural predicates,
//! neighbourhoods, components and the quarter-plane grid assignment.

mod grid;
mod neighborhood;
mod predicates;
mod window;

pub use grid::{assign_grid, ChainLength, Extent, GridAssignment};
pub use neighborhood::{neighborhood, Neighborhood, NeighborhoodShape, NEIGHBORHOOD_TABLE};
pub use predicates::{
    check_cover_modular, check_unique_cover_modular, component_ids, connected_components, PairWitness,
    StructureReport,
};
pub use window::{PointEntry, PointId, PointPosetWindow, PosetFile, WindowBuilder};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),
    #[error("point {point:?} has rank {rank} above the window bound {max_rank}")]
    RankAboveWindow { point: String, rank: u32, max_rank: u32 },
    #[error("cover {lower:?} < {upper:?} does not raise the rank by one")]
    RankGap { lower: String, upper: String },
    #[error("complete_below {complete_below} exceeds max_rank {max_rank}")]
    CompleteBelowTooLarge { complete_below: u32, max_rank: u32 },
    #[error("neighbourhood of {point:?} is clipped by the window")]
    NeighborhoodNotVisible { point: String },
    #[error("sibling {sibling:?} of {point:?} has no unique partner")]
    NonUniquePartner { point: String, sibling: String },
    #[error("point {point:?} has three or more covers or cocovers")]
    TripleCover { point: String },
    #[error("poset has {components} connected components")]
    NotConnected { components: usize },
    #[error("expected a unique minimal point, found {found}")]
    NoMinimum { found: usize },
    #[error("grid assignment failed at rank {rank}: {detail}")]
    AssignmentContradiction { rank: u32, detail: String },
    #[error("malformed poset JSON: {0}")]
    Json(String),
}

/// Graphviz rendering of the Hasse diagram, one `rank=same` group per rank.
pub fn to_dot(p: &PointPosetWindow) -> String {
    let mut out = String::from("digraph points {\n  rankdir=BT;\n  node [shape=box];\n");
    for rank in 0..=p.max_rank() {
        let layer = p.at_rank(rank);
        if layer.is_empty() {
            continue;
        }
        out.push_str("  { rank=same;");
        for &q in layer {
            out.push_str(&format!(" \"{}\";", p.name(q)));
        }
        out.push_str(" }\n");
    }
    for q in p.points() {
        for &u in p.up(q) {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.name(q), p.name(u)));
        }
    }
    out.push_str("}\n");
    out
}
