//! Weighted-differential distributive lattices, represented through their posets
//! of points: exact verification, constraint solving, the classification case
//! analysis, family constructors and growth-diagram Robinson–Schensted maps.

pub mod families;
pub mod graph;
pub mod growth;
pub mod lattice;
pub mod poset;
pub mod rational;
pub mod solve;
pub mod verify;
pub mod weights;

pub use rational::Q;
