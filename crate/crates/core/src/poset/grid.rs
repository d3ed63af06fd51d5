//! Placement of the points above the bottom chain onto quarter-plane cells `T(x, y)`.
//!
//! Levels are `v = x + y`; within a level cells are ordered by `h = y - x`.

use super::{component_ids, PointId, PointPosetWindow, PosetError};
use serde::Serialize;
use std::collections::BTreeMap;

/// Length of the initial chain of single-cover points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ChainLength {
    Finite(u32),
    /// The whole window is a chain.
    Unbounded,
}

/// How the level-by-level assignment stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Extent {
    /// A level inside the window had no points: the poset looks finite.
    EmptyLevel { level: u32 },
    /// The window's top rank was reached.
    WindowEdge,
}

#[derive(Clone, Debug)]
pub struct GridAssignment {
    pub bottom_chain: Vec<PointId>,
    pub chain_length: ChainLength,
    pub coords: BTreeMap<PointId, (u32, u32)>,
    pub cells: BTreeMap<(u32, u32), PointId>,
    /// Indexed by level.
    pub h_min: Vec<i64>,
    pub h_max: Vec<i64>,
    pub extent: Extent,
}

impl GridAssignment {
    pub fn cell(&self, x: u32, y: u32) -> Option<PointId> {
        self.cells.get(&(x, y)).copied()
    }

    /// Number of fully placed levels.
    pub fn levels(&self) -> usize {
        self.h_min.len()
    }

    /// The last point of the bottom chain, placed at `T(0, 0)`.
    pub fn base(&self) -> PointId {
        *self.bottom_chain.last().expect("bottom chain is never empty")
    }

    fn place(&mut self, q: PointId, x: u32, y: u32, p: &PointPosetWindow) -> Result<(), PosetError> {
        if let Some(&other) = self.cells.get(&(x, y)) {
            if other != q {
                return Err(contradiction(p.rank(q), format!("cell ({x},{y}) claimed by {} and {}", p.name(other), p.name(q))));
            }
        }
        if let Some(&at) = self.coords.get(&q) {
            if at != (x, y) {
                return Err(contradiction(p.rank(q), format!("{} placed at {at:?} and ({x},{y})", p.name(q))));
            }
        }
        self.coords.insert(q, (x, y));
        self.cells.insert((x, y), q);
        Ok(())
    }
}

fn contradiction(rank: u32, detail: String) -> PosetError {
    PosetError::AssignmentContradiction { rank, detail }
}

fn h_of(x: u32, y: u32) -> i64 {
    y as i64 - x as i64
}

/// Runs the level-by-level assignment on a connected window with a minimum.
pub fn assign_grid(p: &PointPosetWindow) -> Result<GridAssignment, PosetError> {
    let minimal = p.minimal_points();
    if minimal.len() != 1 {
        return Err(PosetError::NoMinimum { found: minimal.len() });
    }
    let components = component_ids(p).len();
    if components != 1 {
        return Err(PosetError::NotConnected { components });
    }
    for q in p.points() {
        if p.up(q).len() >= 3 || p.down(q).len() >= 3 {
            return Err(PosetError::TripleCover { point: p.name(q).to_string() });
        }
    }

    let mut chain = vec![minimal[0]];
    loop {
        let b = *chain.last().unwrap();
        if p.rank(b) >= p.max_rank() {
            return Ok(GridAssignment {
                bottom_chain: chain,
                chain_length: ChainLength::Unbounded,
                coords: BTreeMap::new(),
                cells: BTreeMap::new(),
                h_min: Vec::new(),
                h_max: Vec::new(),
                extent: Extent::WindowEdge,
            });
        }
        match p.up(b) {
            [next] => chain.push(*next),
            _ => break,
        }
    }

    let base = *chain.last().unwrap();
    let base_rank = p.rank(base);
    let mut g = GridAssignment {
        chain_length: ChainLength::Finite(chain.len() as u32),
        bottom_chain: chain,
        coords: BTreeMap::new(),
        cells: BTreeMap::new(),
        h_min: vec![0],
        h_max: vec![0],
        extent: Extent::WindowEdge,
    };
    g.place(base, 0, 0, p)?;

    let first = p.up(base);
    if first.is_empty() {
        g.extent = Extent::EmptyLevel { level: 1 };
        return Ok(g);
    }
    let mut pair = first.to_vec();
    pair.sort_by(|a, b| p.name(*a).cmp(p.name(*b)));
    g.place(pair[0], 0, 1, p)?;
    g.place(pair[1], 1, 0, p)?;
    check_level(p, &mut g, 1, base_rank)?;

    let mut level = 2u32;
    while base_rank + level <= p.max_rank() {
        let rank = base_rank + level;
        let fresh = p.at_rank(rank);
        if fresh.is_empty() {
            g.extent = Extent::EmptyLevel { level };
            return Ok(g);
        }
        let prev = level_cells(&g, level - 1);

        // Joins of adjacent cells.
        for w in prev.windows(2) {
            let ((x, y), a) = w[0];
            let (_, b) = w[1];
            let joins: Vec<PointId> = p.up(a).iter().copied().filter(|q| p.up(b).contains(q)).collect();
            if joins.len() != 1 {
                return Err(contradiction(rank,
                    format!("adjacent {} and {} have {} common covers", p.name(a), p.name(b), joins.len()),
                ));
            }
            g.place(joins[0], x, y + 1, p)?;
        }

        let ((ax, ay), left) = prev[0];
        let ((cx, cy), right) = *prev.last().unwrap();
        let mut unplaced: Vec<PointId> = fresh.iter().copied().filter(|q| !g.coords.contains_key(q)).collect();
        unplaced.sort_by(|a, b| p.name(*a).cmp(p.name(*b)));
        let mut on_left = Vec::new();
        let mut on_right = Vec::new();
        for &q in &unplaced {
            let below = p.down(q);
            let hits_left = below.contains(&left);
            let hits_right = below.contains(&right);
            if below.iter().any(|&d| d != left && d != right) {
                return Err(contradiction(rank, format!("{} covers an interior cell", p.name(q))));
            }
            match (hits_left, hits_right) {
                (true, true) if left != right => {
                    return Err(contradiction(rank, format!("{} covers both end cells", p.name(q))));
                }
                (true, _) => on_left.push(q),
                (_, true) => on_right.push(q),
                _ => return Err(contradiction(rank, format!("{} covers no placed cell", p.name(q)))),
            }
        }
        if left == right {
            match on_left.as_slice() {
                [] => {}
                [only] => g.place(*only, ax, ay + 1, p)?,
                [small, large] => {
                    g.place(*small, ax, ay + 1, p)?;
                    g.place(*large, ax + 1, ay, p)?;
                }
                _ => return Err(PosetError::TripleCover { point: p.name(left).to_string() }),
            }
        } else {
            for (list, end, x, y) in [(&on_left, left, ax + 1, ay), (&on_right, right, cx, cy + 1)] {
                match list.as_slice() {
                    [] => {}
                    [only] => g.place(*only, x, y, p)?,
                    _ => return Err(PosetError::TripleCover { point: p.name(end).to_string() }),
                }
            }
        }
        check_level(p, &mut g, level, base_rank)?;
        level += 1;
    }
    Ok(g)
}

fn level_cells(g: &GridAssignment, level: u32) -> Vec<((u32, u32), PointId)> {
    let mut cells: Vec<((u32, u32), PointId)> =
        g.cells.iter().filter(|(&(x, y), _)| x + y == level).map(|(&c, &q)| (c, q)).collect();
    cells.sort_by_key(|&((x, y), _)| h_of(x, y));
    cells
}

/// Checks contiguity, unit drift of the end cells, and that covers are exactly adjacency.
fn check_level(p: &PointPosetWindow, g: &mut GridAssignment, level: u32, base_rank: u32) -> Result<(), PosetError> {
    let rank = base_rank + level;
    let cells = level_cells(g, level);
    let placed = p.at_rank(rank).iter().filter(|q| g.coords.contains_key(q)).count();
    if placed != p.at_rank(rank).len() {
        return Err(contradiction(rank, "unplaced point".into()));
    }
    if cells.is_empty() {
        return Ok(());
    }
    let hs: Vec<i64> = cells.iter().map(|&((x, y), _)| h_of(x, y)).collect();
    if hs.windows(2).any(|w| w[1] - w[0] != 2) {
        return Err(contradiction(rank, "cells of the level are not contiguous".into()));
    }
    let (lo, hi) = (hs[0], *hs.last().unwrap());
    let (plo, phi) = (g.h_min[level as usize - 1], g.h_max[level as usize - 1]);
    if (lo - plo).abs() != 1 || (hi - phi).abs() != 1 {
        return Err(contradiction(rank, "end cells drifted by more than one".into()));
    }
    for &((x, y), q) in &cells {
        let mut expected: Vec<PointId> = Vec::new();
        if x > 0 {
            expected.extend(g.cell(x - 1, y));
        }
        if y > 0 {
            expected.extend(g.cell(x, y - 1));
        }
        expected.sort();
        let mut actual = p.down(q).to_vec();
        actual.sort();
        if actual != expected {
            return Err(contradiction(rank, format!("covers of {} disagree with grid adjacency", p.name(q))));
        }
    }
    g.h_min.push(lo);
    g.h_max.push(hi);
    Ok(())
}
