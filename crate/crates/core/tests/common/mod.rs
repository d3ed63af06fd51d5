#![allow(dead_code)]

use fomin_core::families::{make_graded_graph, make_point_poset, FamilySpec, WeightedGraph, WeightedPoset};
use fomin_core::poset::{PointId, PointPosetWindow};
use fomin_core::rational::{self, Q};
use std::collections::BTreeSet;

pub fn family(name: &str, max_rank: u32) -> WeightedPoset {
    make_point_poset(&FamilySpec::parse(name, max_rank).unwrap()).unwrap()
}

pub fn graph(name: &str, max_rank: u32) -> WeightedGraph {
    make_graded_graph(&FamilySpec::parse(name, max_rank).unwrap()).unwrap()
}

pub fn q(n: i64) -> Q {
    rational::int(n)
}

pub fn point(p: &PointPosetWindow, name: &str) -> PointId {
    p.require(name).unwrap()
}

pub fn grid_coords(name: &str) -> Vec<i64> {
    name.split(',').map(|s| s.parse().unwrap()).collect()
}

/// Cells of a lattice element named like `{0,0 0,1}`.
pub fn element_cells(name: &str) -> BTreeSet<(u32, u32)> {
    name.trim_matches(|c| c == '{' || c == '}')
        .split_whitespace()
        .map(|cell| {
            let (a, b) = cell.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}
