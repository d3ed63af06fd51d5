//! Forward propagation of the local constraints over the grid above the bottom
//! chain, in units of the base weight `m`.
//!
//! Level `v` holds the cells `T(x, y)` with `x + y = v`, ordered by `h = y − x`.
//! Checking every cell of level `v` determines level `v + 1`: cells between two
//! neighbours are forced joins with the weight of the cell diagonally below, and
//! the outer cover of each end cell carries whatever the end cell's equation
//! leaves over.

use super::{EliminationLemma, SolveError};
use crate::rational::{self, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

pub type Cell = (u32, u32);

/// Weights around the base, relative to `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationStart {
    /// Weight of the point just below the base, zero when the chain has length 1.
    pub below_base: Q,
    pub row_step: Q,
    pub column_step: Q,
}

impl PropagationStart {
    /// Start values for a chain of length `1/inverse_chain_length` and the two reaches,
    /// given as reciprocals (`1/∞ = 0`).
    pub fn from_reciprocals(inverse_row_reach: Q, inverse_column_reach: Q, inverse_chain_length: Q) -> Self {
        PropagationStart {
            below_base: Q::one() - inverse_chain_length,
            row_step: -inverse_row_reach,
            column_step: -inverse_column_reach,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum StepEvent {
    /// Forced by two neighbours below.
    Join {
        #[serde(with = "rational::as_string")]
        weight: Q,
    },
    /// Allocated as an upward orphan of an end cell.
    Orphan {
        #[serde(with = "rational::as_string")]
        weight: Q,
    },
    /// The end cell's equation leaves nothing over.
    Unallocated,
    /// The equation at a cell with both covers forced.
    Check {
        #[serde(with = "rational::as_string")]
        lhs: Q,
        #[serde(with = "rational::as_string")]
        rhs: Q,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub cell: Cell,
    #[serde(flatten)]
    pub event: StepEvent,
}

/// An equation that cannot hold: `lhs` is the weight arriving from below plus
/// any forced orphans, `rhs` is twice the cell's weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contradiction {
    pub cell: Cell,
    #[serde(with = "rational::as_string")]
    pub lhs: Q,
    #[serde(with = "rational::as_string")]
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationTrace {
    pub steps: Vec<TraceStep>,
    #[serde(serialize_with = "cells_as_list")]
    pub cells: BTreeMap<Cell, Q>,
    /// Number of levels, from 0, whose cells are all known.
    pub levels: u32,
    pub contradiction: Option<Contradiction>,
}

fn cells_as_list<S: serde::Serializer>(cells: &BTreeMap<Cell, Q>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(cells.len()))?;
    for (cell, w) in cells {
        seq.serialize_element(&(cell, rational::show(w)))?;
    }
    seq.end()
}

impl PropagationTrace {
    pub fn weight(&self, x: u32, y: u32) -> Option<&Q> {
        self.cells.get(&(x, y))
    }

    fn level(&self, v: u32) -> Vec<Cell> {
        // Increasing h = y − x means decreasing x.
        (0..=v).rev().map(|x| (x, v - x)).filter(|c| self.cells.contains_key(c)).collect()
    }

    fn lower_sum(&self, (x, y): Cell, below_base: &Q) -> Q {
        if (x, y) == (0, 0) {
            return below_base.clone();
        }
        let mut sum = Q::zero();
        if x > 0 {
            sum += self.cells.get(&(x - 1, y)).cloned().unwrap_or_else(Q::zero);
        }
        if y > 0 {
            sum += self.cells.get(&(x, y - 1)).cloned().unwrap_or_else(Q::zero);
        }
        sum
    }

    fn fail(mut self, cell: Cell, lhs: Q, rhs: Q) -> Self {
        self.contradiction = Some(Contradiction { cell, lhs, rhs });
        self
    }
}

/// Runs until a contradiction, an empty level, or every cell up to `top_level` is known.
pub fn propagate(start: &PropagationStart, top_level: u32) -> Result<PropagationTrace, SolveError> {
    let one = Q::one();
    let two = rational::int(2);
    let mut trace = PropagationTrace { steps: Vec::new(), cells: BTreeMap::new(), levels: 1, contradiction: None };
    trace.cells.insert((0, 0), one.clone());
    if top_level == 0 {
        return Ok(trace);
    }
    let w10 = &one + &start.row_step;
    let w01 = &one + &start.column_step;
    for (cell, w) in [((1, 0), &w10), ((0, 1), &w01)] {
        if !w.is_positive() {
            let lhs = &start.below_base + &w10 + &w01;
            return Ok(trace.fail((0, 0), lhs, two));
        }
        trace.cells.insert(cell, w.clone());
        trace.steps.push(TraceStep { cell, event: StepEvent::Orphan { weight: w.clone() } });
    }
    let lhs = &start.below_base + &w10 + &w01;
    trace.steps.push(TraceStep { cell: (0, 0), event: StepEvent::Check { lhs: lhs.clone(), rhs: two.clone() } });
    if lhs != two {
        return Ok(trace.fail((0, 0), lhs, two));
    }
    trace.levels = 2;

    for v in 1..top_level {
        let level = trace.level(v);
        if level.is_empty() {
            break;
        }
        if level.len() == 1 {
            return Err(SolveError::AmbiguousLevel { level: v });
        }
        // Joins between neighbours; (x, y) and (x − 1, y + 1) meet at (x − 1, y).
        for pair in level.windows(2) {
            let (x, y) = pair[0];
            if pair[1] != (x - 1, y + 1) {
                continue;
            }
            let joined = (x, y + 1);
            let weight = trace.cells.get(&(x - 1, y)).expect("neighbours share a lower cover").clone();
            trace.cells.insert(joined, weight.clone());
            trace.steps.push(TraceStep { cell: joined, event: StepEvent::Join { weight } });
        }
        let last = level.len() - 1;
        for (i, &cell) in level.iter().enumerate() {
            let below = trace.lower_sum(cell, &start.below_base);
            let twice = &two * &trace.cells[&cell];
            if i != 0 && i != last {
                trace.steps.push(TraceStep { cell, event: StepEvent::Check { lhs: below.clone(), rhs: twice.clone() } });
                if below != twice {
                    return Ok(trace.fail(cell, below, twice));
                }
                continue;
            }
            let (x, y) = cell;
            let outer = if i == 0 { (x + 1, y) } else { (x, y + 1) };
            let leftover = &twice - &below;
            if leftover.is_negative() {
                return Ok(trace.fail(cell, below, twice));
            }
            if leftover.is_zero() {
                trace.steps.push(TraceStep { cell: outer, event: StepEvent::Unallocated });
            } else {
                trace.cells.insert(outer, leftover.clone());
                trace.steps.push(TraceStep { cell: outer, event: StepEvent::Orphan { weight: leftover } });
            }
        }
        trace.levels = v + 2;
    }
    Ok(trace)
}

/// A propagation that must end in a contradiction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationTrace {
    pub lemma: EliminationLemma,
    pub row_limit: u32,
    pub column_limit: u32,
    /// Derived from the two limits; need not be an integer outside the table.
    #[serde(with = "rational::as_string")]
    pub chain_length: Q,
    pub trace: PropagationTrace,
}

/// Highest level propagated before giving up on finding the contradiction.
pub const ELIMINATION_LEVEL_CAP: u32 = 64;

/// Propagates the case with both limits finite, as `(x_L, y_L)`.
pub fn propagate_elimination(row_limit: u32, column_limit: u32) -> Result<EliminationTrace, SolveError> {
    let lemma = EliminationLemma::for_limits(row_limit, column_limit).ok_or_else(|| SolveError::NotAnEliminationCase {
        row_limit: row_limit.to_string(),
        column_limit: column_limit.to_string(),
    })?;
    let inverse_row = rational::frac(1, i64::from(row_limit));
    let inverse_column = rational::frac(1, i64::from(column_limit));
    let inverse_chain = Q::one() - &inverse_row - &inverse_column;
    let start = PropagationStart::from_reciprocals(inverse_row, inverse_column, inverse_chain.clone());
    let trace = propagate(&start, ELIMINATION_LEVEL_CAP)?;
    Ok(EliminationTrace { lemma, row_limit, column_limit, chain_length: inverse_chain.recip(), trace })
}
