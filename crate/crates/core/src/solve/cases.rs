//! Decompositions of 1 as `1/Δ⁻ + 1/Δ⁺ + 1/N` and the resulting case table.

use super::Extended;
use crate::rational::{self, Q};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

/// Why a case of the table admits no lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EliminationLemma {
    /// `x_L = 3`, `y_L = 2`.
    #[serde(rename = "xy-32")]
    ThreeTwo,
    /// `x_L = 6`, `y_L = 2`.
    #[serde(rename = "xy-62")]
    SixTwo,
    /// `x_L = 4`, `y_L = 2`.
    #[serde(rename = "xy-42")]
    FourTwo,
    /// Both limits finite and above 2.
    #[serde(rename = "xy-ge-3")]
    BothAtLeastThree,
}

impl EliminationLemma {
    pub fn id(self) -> &'static str {
        match self {
            EliminationLemma::ThreeTwo => "xy-32",
            EliminationLemma::SixTwo => "xy-62",
            EliminationLemma::FourTwo => "xy-42",
            EliminationLemma::BothAtLeastThree => "xy-ge-3",
        }
    }

    /// The lemma covering a pair of finite limits, if any.
    pub fn for_limits(row_limit: u32, column_limit: u32) -> Option<Self> {
        match (row_limit, column_limit) {
            (3, 2) => Some(EliminationLemma::ThreeTwo),
            (6, 2) => Some(EliminationLemma::SixTwo),
            (4, 2) => Some(EliminationLemma::FourTwo),
            (x, y) if x > 2 && y > 2 => Some(EliminationLemma::BothAtLeastThree),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "lemma", rename_all = "snake_case")]
pub enum Verdict {
    /// The strip family, one lattice per `n ≥ 2`.
    StripFamily,
    Young,
    ShiftedYoung,
    Eliminated(EliminationLemma),
    /// Needs an infinite bottom chain, so there is no bottom element.
    Bottomless,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::StripFamily => write!(f, "Y_n"),
            Verdict::Young => write!(f, "Y"),
            Verdict::ShiftedYoung => write!(f, "SY"),
            Verdict::Eliminated(l) => write!(f, "none ({})", l.id()),
            Verdict::Bottomless => write!(f, "twos (no bottom element)"),
        }
    }
}

/// A row of the case table. The strip family's row is parametric: its reaches
/// are `−n` and `n` and its column limit is `n`, stored here at `n = 2` and
/// displayed symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub row_reach: Extended<Q>,
    pub row_limit: Extended<u32>,
    pub column_reach: Extended<Q>,
    pub column_limit: Extended<u32>,
    pub chain_length: Extended<u32>,
    pub verdict: Verdict,
}

impl CaseRow {
    /// `1/Δ⁻ + 1/Δ⁺ + 1/N = 1`.
    pub fn reciprocals_sum_to_one(&self) -> bool {
        self.row_reach.reciprocal() + self.column_reach.reciprocal() + self.chain_length.reciprocal() == Q::one()
    }

    /// The row as the table prints it, columns `Δ⁻ | x_L | Δ⁺ | y_L | N | lattice`.
    pub fn table_line(&self) -> String {
        let cells = if self.verdict == Verdict::StripFamily {
            ["−n for n ≥ 2".to_string(), "∞".into(), "n".into(), "n".into(), self.chain_length.to_string()]
        } else {
            [
                self.row_reach.to_string(),
                self.row_limit.to_string(),
                self.column_reach.to_string(),
                self.column_limit.to_string(),
                self.chain_length.to_string(),
            ]
        };
        format!("{} | {}", cells.join(" | "), self.verdict)
    }
}

/// The reach along one edge determines the limit there: a positive reach is
/// where the edge runs out, anything else never does.
fn limit_of(reach: &Extended<Q>) -> Extended<u32> {
    match reach {
        Extended::Finite(v) if v.is_positive() && v.is_integer() => {
            Extended::Finite(u32::try_from(v.to_integer()).expect("small reach"))
        }
        _ => Extended::Infinite,
    }
}

/// Cases `N ≥ 1`, `Δ± ≠ 1` with `Δ⁺` an integer of absolute value at most
/// `bound` or infinite, mirror images removed by `x_L ≥ y_L`. The table is
/// complete once `bound ≥ 12`: a second positive term forces both reaches to be
/// at least 2, which leaves `1/N ≥ 1/6`, and a negative term forces `N = 1`.
fn raw_cases(bound: i64) -> Vec<(Extended<Q>, Extended<Q>, u32)> {
    let mut out = Vec::new();
    let column_reaches: Vec<Extended<Q>> = (-bound..=bound)
        .filter(|&d| d != 0 && d != 1)
        .map(|d| Extended::Finite(rational::int(d)))
        .chain([Extended::Infinite])
        .collect();
    for n in 1..=bound {
        for column_reach in &column_reaches {
            let rest = Q::one() - rational::frac(1, n) - column_reach.reciprocal();
            let row_reach = if rest.is_zero() { Extended::Infinite } else { Extended::Finite(rest.recip()) };
            let admissible = match &row_reach {
                Extended::Infinite => true,
                Extended::Finite(v) => v.is_integer() && *v != Q::one(),
            };
            if !admissible {
                continue;
            }
            let (x, y) = (limit_of(&row_reach), limit_of(column_reach));
            let ordered = match (&x, &y) {
                (Extended::Infinite, _) => true,
                (Extended::Finite(_), Extended::Infinite) => false,
                (Extended::Finite(a), Extended::Finite(b)) => a >= b,
            };
            // With both edges unbounded, the reaches must also be ordered to drop the mirror.
            let tie_broken = !(x.is_infinite() && y.is_infinite())
                || row_reach.reciprocal() <= column_reach.reciprocal();
            if ordered && tie_broken {
                out.push((row_reach, column_reach.clone(), n as u32));
            }
        }
    }
    out
}

fn verdict_of(row_reach: &Extended<Q>, column_reach: &Extended<Q>, n: u32) -> Verdict {
    match (limit_of(row_reach), limit_of(column_reach)) {
        (Extended::Infinite, Extended::Infinite) => Verdict::Young,
        (Extended::Infinite, Extended::Finite(_)) if n == 1 => Verdict::StripFamily,
        (Extended::Infinite, Extended::Finite(2)) if row_reach.is_infinite() => Verdict::ShiftedYoung,
        (Extended::Finite(x), Extended::Finite(y)) => match EliminationLemma::for_limits(x, y) {
            Some(l) => Verdict::Eliminated(l),
            None => unreachable!("every finite pair in the table is eliminated"),
        },
        other => unreachable!("unexpected case {other:?}"),
    }
}

/// Eliminated rows are grouped by decomposition, smallest denominators first,
/// and within a group by decreasing chain length.
fn table_position(row: &CaseRow) -> (usize, [u32; 3], u32) {
    let family = match row.verdict {
        Verdict::StripFamily => 0,
        Verdict::Young => 1,
        Verdict::ShiftedYoung => 2,
        Verdict::Eliminated(_) | Verdict::Bottomless => 3,
    };
    let lim = |e: &Extended<u32>| e.finite().copied().unwrap_or(u32::MAX);
    let n = lim(&row.chain_length);
    let mut parts = [lim(&row.row_limit), lim(&row.column_limit), n];
    parts.sort();
    (family, parts, u32::MAX - n)
}

/// The nine rows: the strip family (collapsed over `n`), `Y`, `SY`, and the six
/// eliminated cases.
pub fn enumerate_reciprocal_cases() -> Vec<CaseRow> {
    let mut rows: Vec<CaseRow> = Vec::new();
    for (row_reach, column_reach, n) in raw_cases(12) {
        let verdict = verdict_of(&row_reach, &column_reach, n);
        if verdict == Verdict::StripFamily && column_reach != Extended::Finite(rational::int(2)) {
            continue;
        }
        rows.push(CaseRow {
            row_limit: limit_of(&row_reach),
            column_limit: limit_of(&column_reach),
            row_reach,
            column_reach,
            chain_length: Extended::Finite(n),
            verdict,
        });
    }
    rows.sort_by_key(table_position);
    rows
}

/// Every `n` for which the strip-family row occurs with `|Δ±| = n ≤ bound`.
pub fn strip_family_members(bound: u32) -> Vec<u32> {
    raw_cases(i64::from(bound.max(12)))
        .into_iter()
        .filter(|(r, c, n)| verdict_of(r, c, *n) == Verdict::StripFamily)
        .filter_map(|(_, c, _)| limit_of(&c).finite().copied())
        .filter(|&n| n <= bound)
        .collect()
}

/// The extra decomposition available without a bottom element: `Δ⁻ = Δ⁺ = 2`
/// with an infinite chain. Reported only.
pub fn bottomless_case() -> CaseRow {
    CaseRow {
        row_reach: Extended::Finite(rational::int(2)),
        row_limit: Extended::Finite(2),
        column_reach: Extended::Finite(rational::int(2)),
        column_limit: Extended::Finite(2),
        chain_length: Extended::Infinite,
        verdict: Verdict::Bottomless,
    }
}
