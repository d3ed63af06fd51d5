//! The full classification pipeline on windows of a given rank.

use super::{
    bottom_chain_profile, build_constraints, enumerate_reciprocal_cases, propagate, propagate_elimination,
    strip_family_members, BottomChainProfile, CaseRow, EliminationTrace, Extended, PropagationStart, SolveError,
    Verdict,
};
use crate::families::{make_point_poset, FamilyKind, FamilySpec, WeightedPoset};
use crate::poset::{assign_grid, WindowBuilder};
use crate::rational::{self, Q};
use crate::verify::{check_local, OrphanMode};
use crate::weights::WeightScheme;
use num_traits::{One, Zero};
use serde::Serialize;

/// Shallowest window on which every survivor's profile is visible: the
/// octant's chain ends at rank 1 and its column limit 2 shows two levels later.
const PROFILE_MIN_RANK: u32 = 4;

/// A lattice the case analysis leaves standing, rebuilt from its case row.
#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    /// `Y`, `SY` or `Y_k`.
    pub name: String,
    /// The family expression naming the same lattice.
    pub family: String,
    #[serde(with = "rational::as_string")]
    pub degree: Q,
    /// Propagated cells and weights coincide with the family's grid.
    pub matches_family: bool,
    /// The propagated poset with canonical weights passes the local check.
    pub local_check: bool,
    /// Dimension of the family window's solution space.
    pub solution_dimension: usize,
    /// `None` for the path, whose bottom chain fills the window.
    pub profile: Option<BottomChainProfile>,
    /// The solver's profile agrees with the case row.
    pub profile_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub max_rank: u32,
    pub cases: Vec<CaseRow>,
    pub survivors: Vec<Survivor>,
    pub eliminations: Vec<EliminationTrace>,
    /// Reported only; it has no bottom element.
    pub bottomless: CaseRow,
}

impl ClassificationReport {
    pub fn survivor_names(&self) -> Vec<&str> {
        self.survivors.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn holds(&self) -> bool {
        self.survivors.iter().all(|s| s.matches_family && s.local_check && s.profile_matches)
            && self.eliminations.iter().all(|e| e.trace.contradiction.is_some())
    }

    /// Table rows followed by one line per survivor and elimination.
    pub fn to_text(&self) -> String {
        let mut out = String::from("Δ⁻ | x_L | Δ⁺ | y_L | N | lattice\n");
        for row in &self.cases {
            out += &row.table_line();
            out.push('\n');
        }
        out.push('\n');
        for s in &self.survivors {
            out += &format!(
                "survivor {} ({}) r={} dim={} grid={} local={} profile={}\n",
                s.name,
                s.family,
                rational::show(&s.degree),
                s.solution_dimension,
                s.matches_family,
                s.local_check,
                s.profile_matches
            );
        }
        for e in &self.eliminations {
            let at = match &e.trace.contradiction {
                Some(c) => format!("T{}{} ({} ≠ {})", c.cell.0, c.cell.1, rational::show(&c.lhs), rational::show(&c.rhs)),
                None => "no contradiction".into(),
            };
            out += &format!("eliminated ({},{}) by {}: {}\n", e.row_limit, e.column_limit, e.lemma.id(), at);
        }
        out += &format!("bottomless: {}\n", self.bottomless.table_line());
        out
    }
}

/// Reciprocals `(1/Δ⁻, 1/Δ⁺, 1/N)` of a surviving row, or of the strip member `n`.
fn reciprocals(verdict: Verdict, n: u32) -> (Q, Q, Q) {
    match verdict {
        Verdict::Young => (Q::zero(), Q::zero(), Q::one()),
        Verdict::ShiftedYoung => (Q::zero(), rational::frac(1, 2), rational::frac(1, 2)),
        Verdict::StripFamily => (-rational::frac(1, n.into()), rational::frac(1, n.into()), Q::one()),
        _ => unreachable!("only surviving rows are rebuilt"),
    }
}

/// The bottom chain plus propagated cells as a point poset, weights in units of `m`.
fn rebuild(chain_length: u32, trace_cells: &std::collections::BTreeMap<(u32, u32), Q>, max_rank: u32) -> WeightedPoset {
    let mut b = WindowBuilder::new(max_rank);
    let n = i64::from(chain_length);
    let mut values = Vec::new();
    let mut previous = None;
    for i in 1..chain_length {
        let id = b.point(format!("B{i}"), i - 1).expect("fresh name");
        if let Some(lo) = previous {
            b.cover_ids(lo, id);
        }
        values.push(rational::frac(i64::from(i), n));
        previous = Some(id);
    }
    let mut ids = std::collections::BTreeMap::new();
    for (&(x, y), w) in trace_cells {
        let rank = chain_length - 1 + x + y;
        if rank > max_rank {
            continue;
        }
        ids.insert((x, y), b.point(format!("T{x},{y}"), rank).expect("fresh name"));
        values.push(w.clone());
    }
    if let (Some(lo), Some(&base)) = (previous, ids.get(&(0, 0))) {
        b.cover_ids(lo, base);
    }
    for (&(x, y), &id) in &ids {
        for up in [(x + 1, y), (x, y + 1)] {
            if let Some(&hi) = ids.get(&up) {
                b.cover_ids(id, hi);
            }
        }
    }
    let poset = b.build().expect("rebuilt window is graded");
    let weights = WeightScheme::new(values, rational::frac(1, n));
    WeightedPoset { poset, weights }
}

fn survivor(name: String, kind: FamilyKind, row: &CaseRow, verdict: Verdict, n: u32, max_rank: u32) -> Result<Survivor, SolveError> {
    let family = make_point_poset(&FamilySpec::new(kind.clone(), max_rank)).map_err(|e| SolveError::Family(e.to_string()))?;
    let space = super::solve(&build_constraints(&family.poset)?)?;
    let profile = if max_rank >= PROFILE_MIN_RANK {
        bottom_chain_profile(&family.poset, &space)?
    } else {
        let deeper = make_point_poset(&FamilySpec::new(kind.clone(), PROFILE_MIN_RANK)).map_err(|e| SolveError::Family(e.to_string()))?;
        bottom_chain_profile(&deeper.poset, &super::solve(&build_constraints(&deeper.poset)?)?)?
    };
    let (inv_row, inv_column, inv_chain) = reciprocals(verdict, n);
    let chain_length = u32::try_from(inv_chain.recip().to_integer()).expect("small chain");
    let start = PropagationStart::from_reciprocals(inv_row.clone(), inv_column.clone(), inv_chain);
    let top_level = (max_rank + 1).saturating_sub(chain_length);
    let trace = propagate(&start, top_level)?;

    let grid = assign_grid(&family.poset)?;
    let scale = family.weights.weight(grid.base()).clone();
    let family_cells: Vec<((u32, u32), Q)> =
        grid.cells.iter().map(|(&c, &q)| (c, family.weights.weight(q).clone())).collect();
    let trace_cells: Vec<((u32, u32), Q)> = trace
        .cells
        .iter()
        .filter(|(&(x, y), _)| x + y <= top_level)
        .map(|(&c, w)| (c, w * &scale))
        .collect();
    let matches_family = trace.contradiction.is_none() && family_cells == trace_cells;

    let rebuilt = rebuild(chain_length, &trace.cells, max_rank);
    let canonical = rebuilt.weights.scaled(&scale);
    let local_check = check_local(&rebuilt.poset, &canonical, OrphanMode::JoinOrphan)
        .map(|r| r.holds)
        .unwrap_or(false);

    let expected_reach = |inv: &Q| if inv.is_zero() { Extended::Infinite } else { Extended::Finite(inv.recip()) };
    let profile_matches = profile.relations_hold
        && profile.row_reach == expected_reach(&inv_row)
        && profile.column_reach == expected_reach(&inv_column)
        && profile.chain_length == chain_length
        && profile.row_limit == row.row_limit
        && (verdict == Verdict::StripFamily || profile.column_limit == row.column_limit);
    Ok(Survivor {
        name,
        family: kind.to_string(),
        degree: canonical.degree().clone(),
        matches_family,
        local_check,
        solution_dimension: space.dimension(),
        profile: Some(profile),
        profile_matches,
    })
}

/// The path: a single chain whose weights grow by `r` per step.
fn path_survivor(max_rank: u32) -> Result<Survivor, SolveError> {
    let family = make_point_poset(&FamilySpec::new(FamilyKind::Chain, max_rank)).map_err(|e| SolveError::Family(e.to_string()))?;
    let space = super::solve(&build_constraints(&family.poset)?)?;
    let profile_matches = matches!(bottom_chain_profile(&family.poset, &space), Err(SolveError::ChainUnbounded));
    let local_check = check_local(&family.poset, &family.weights, OrphanMode::JoinOrphan)?.holds;
    let expected = WeightScheme::from_fn(&family.poset, Q::one(), |q| rational::int(i64::from(family.poset.rank(q)) + 1));
    Ok(Survivor {
        name: "Y_1".into(),
        family: FamilyKind::Chain.to_string(),
        degree: family.weights.degree().clone(),
        matches_family: family.weights == expected,
        local_check,
        solution_dimension: space.dimension(),
        profile: None,
        profile_matches,
    })
}

/// Case table, survivors `Y`, `SY`, `Y_1..Y_max_rank` (a strip with more rows
/// than the window's rank is indistinguishable from the quadrant), and one
/// propagation per eliminated row.
pub fn classify(max_rank: u32) -> Result<ClassificationReport, SolveError> {
    let cases = enumerate_reciprocal_cases();
    let mut survivors = Vec::new();
    let mut eliminations = Vec::new();
    for row in &cases {
        match row.verdict {
            Verdict::Young => survivors.push(survivor("Y".into(), FamilyKind::Quadrant, row, row.verdict, 1, max_rank)?),
            Verdict::ShiftedYoung => {
                survivors.push(survivor("SY".into(), FamilyKind::Octant, row, row.verdict, 2, max_rank)?)
            }
            Verdict::StripFamily => {
                if max_rank >= 1 {
                    survivors.push(path_survivor(max_rank)?);
                }
                for n in strip_family_members(max_rank) {
                    survivors.push(survivor(format!("Y_{n}"), FamilyKind::Strip(n), row, row.verdict, n, max_rank)?);
                }
            }
            Verdict::Eliminated(_) => {
                let x = *row.row_limit.finite().expect("eliminated rows have finite limits");
                let y = *row.column_limit.finite().expect("eliminated rows have finite limits");
                eliminations.push(propagate_elimination(x, y)?);
            }
            Verdict::Bottomless => {}
        }
    }
    survivors.sort_by_key(|s| match s.name.as_str() {
        "Y" => (0, 0),
        "SY" => (1, 0),
        other => (2, other[2..].parse::<u32>().unwrap_or(0)),
    });
    Ok(ClassificationReport { max_rank, cases, survivors, eliminations, bottomless: super::bottomless_case() })
}
