//! The numbers describing the bottom of a point poset: chain length, base
//! weight and the first steps along the two edges of the grid above it.

use super::{positivity_witness, AffineSolutionSpace, Extended, SolveError};
use crate::poset::{assign_grid, ChainLength, Extent, PointPosetWindow};
use crate::rational::{self, Q};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BottomChainProfile {
    /// Points in the bottom chain, the last of which is the base `T(0,0)`.
    pub chain_length: u32,
    /// Weight of the base, normalized so that it equals the chain length.
    #[serde(with = "rational::as_string")]
    pub base_weight: Q,
    /// Weight of the point below the base minus the base weight.
    #[serde(with = "rational::as_string")]
    pub tail_step: Q,
    /// `w(T10) − m`.
    #[serde(with = "rational::as_string")]
    pub row_step: Q,
    /// `w(T01) − m`.
    #[serde(with = "rational::as_string")]
    pub column_step: Q,
    pub row_reach: Extended<Q>,
    pub column_reach: Extended<Q>,
    /// First `i` with `T(i,0)` missing inside the window.
    pub row_limit: Extended<u32>,
    /// First `i` with `T(0,i)` missing inside the window.
    pub column_limit: Extended<u32>,
    /// `1/Δ⁻ + 1/Δ⁺ + 1/N = 1`, `m = N r` and `N = −m/ε` all hold.
    pub relations_hold: bool,
}

/// Profiles the least positive member of `space`, rescaled to `r = 1`.
pub fn bottom_chain_profile(p: &PointPosetWindow, space: &AffineSolutionSpace) -> Result<BottomChainProfile, SolveError> {
    let grid = assign_grid(p)?;
    let chain_length = match grid.chain_length {
        ChainLength::Unbounded => return Err(SolveError::ChainUnbounded),
        ChainLength::Finite(n) => n,
    };
    if grid.extent == (Extent::EmptyLevel { level: 1 }) {
        return Err(SolveError::FiniteChain);
    }
    let witness = positivity_witness(space, p).map_err(SolveError::NoPositiveSolution)?;
    let w = witness.scaled(&(Q::one() / witness.degree()));
    let base = grid.base();
    let m = w.weight(base).clone();
    let tail_step = match grid.bottom_chain.len() {
        0 | 1 => -m.clone(),
        k => w.weight(grid.bottom_chain[k - 2]) - &m,
    };
    let cell_weight = |x, y| grid.cell(x, y).map(|q| w.weight(q).clone()).ok_or(SolveError::FiniteChain);
    let row_step = cell_weight(1, 0)? - &m;
    let column_step = cell_weight(0, 1)? - &m;
    let levels = grid.levels() as u32;
    let first_missing = |along_x: bool| {
        (1..levels)
            .find(|&i| if along_x { grid.cell(i, 0).is_none() } else { grid.cell(0, i).is_none() })
            .map_or(Extended::Infinite, Extended::Finite)
    };
    let row_reach = Extended::neg_ratio(&m, &row_step);
    let column_reach = Extended::neg_ratio(&m, &column_step);
    let n = rational::int(i64::from(chain_length));
    let relations_hold = row_reach.reciprocal() + column_reach.reciprocal() + n.recip() == Q::one()
        && m == &n * w.degree()
        && !tail_step.is_zero()
        && -&m / &tail_step == n;
    Ok(BottomChainProfile {
        chain_length,
        base_weight: m,
        tail_step,
        row_step,
        column_step,
        row_reach,
        column_reach,
        row_limit: first_missing(true),
        column_limit: first_missing(false),
        relations_hold,
    })
}
