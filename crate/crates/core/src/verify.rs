//! The differential condition in its global, incremental, partition and local forms.

use crate::graph::GradedWeightedGraph;
use crate::lattice::{deletion_points, enumerate_ideals, enumerate_interior_ideals, insertion_points, Diagram, IdealLattice, LatticeError};
use crate::poset::{neighborhood, PointId, PointPosetWindow, PosetError};
use crate::rational::{self, Q};
pub use crate::weights::WeightScheme;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::ops::RangeInclusive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{point:?} is not an insertion point of the diagram")]
    NotInsertionPoint { point: String },
    #[error("bad partition of the siblings of {point:?}: {reason}")]
    BadPartition { point: String, reason: String },
    #[error("sibling {sibling:?} of {point:?} has no unique partner")]
    NonUniquePartner { point: String, sibling: String },
    #[error(transparent)]
    Poset(PosetError),
}

impl From<PosetError> for VerifyError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::NonUniquePartner { point, sibling } => VerifyError::NonUniquePartner { point, sibling },
            other => VerifyError::Poset(other),
        }
    }
}

/// Which orphan equation the local check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrphanMode {
    JoinOrphan,
    MeetOrphan,
}

/// Where an identity was evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Site {
    Ideal { points: Vec<String> },
    Insertion { ideal: Vec<String>, point: String },
    Partition { point: String, lower: Vec<String>, upper: Vec<String> },
    Minimal,
    Orphan { point: String, mode: OrphanMode },
    Pairing { point: String },
    Sibling { point: String, sibling: String },
    Element { element: String },
    /// Membership of an ideal in the zero-free component versus the truncated lattice.
    Truncation { ideal: Vec<String> },
    /// Strict positivity of a weight (`point` is `"r"` for the degree).
    Positive { point: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub site: Site,
    #[serde(with = "rational::as_string")]
    pub lhs: Q,
    #[serde(with = "rational::as_string")]
    pub rhs: Q,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    /// Number of identities evaluated.
    pub checked: usize,
    pub failures: Vec<Failure>,
    /// Points or elements left out because their neighbourhood is clipped.
    pub skipped: Vec<String>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { holds: true, ..Default::default() }
    }

    /// Records one identity `lhs = rhs`.
    pub fn record(&mut self, site: impl FnOnce() -> Site, lhs: Q, rhs: Q) {
        self.checked += 1;
        if lhs != rhs {
            self.holds = false;
            self.failures.push(Failure { site: site(), lhs, rhs });
        }
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.holds &= other.holds;
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.skipped.extend(other.skipped);
        self
    }
}

pub(crate) fn names(p: &PointPosetWindow, ids: &[PointId]) -> Vec<String> {
    let mut v: Vec<String> = ids.iter().map(|&q| p.name(q).to_string()).collect();
    v.sort();
    v
}

/// `Σ_{D_x} w + r = Σ_{I_x} w` for every ideal of size at most `n_max`.
pub fn check_global(p: &PointPosetWindow, w: &WeightScheme, n_max: usize) -> Result<CheckReport, VerifyError> {
    let lat = enumerate_ideals(p, n_max)?;
    Ok(check_ideals(p, w, &lat))
}

/// The global identity on every ideal whose insertion points are visible,
/// i.e. every ideal of the points strictly below the complete part of the window.
pub fn check_global_interior(p: &PointPosetWindow, w: &WeightScheme) -> CheckReport {
    check_ideals(p, w, &enumerate_interior_ideals(p))
}

/// The global identity over an already enumerated lattice.
pub fn check_ideals(p: &PointPosetWindow, w: &WeightScheme, lat: &IdealLattice) -> CheckReport {
    let mut report = CheckReport::new();
    for x in lat.ideals() {
        let ins = insertion_points(p, x).expect("enumerated ideals have visible insertion points");
        let lhs = w.sum(&deletion_points(p, x)) + w.degree();
        let rhs = w.sum(&ins);
        report.record(|| Site::Ideal { points: names(p, x.points()) }, lhs, rhs);
    }
    report
}

/// The four-set difference identity between `x` and `x ⊔ {q}`.
pub fn check_incremental(p: &PointPosetWindow, w: &WeightScheme, x: &Diagram, q: PointId) -> Result<CheckReport, VerifyError> {
    let ins = insertion_points(p, x)?;
    if !ins.contains(&q) {
        return Err(VerifyError::NotInsertionPoint { point: p.name(q).to_string() });
    }
    let y = x.with(q);
    let ins_y = insertion_points(p, &y)?;
    let (del_x, del_y) = (deletion_points(p, x), deletion_points(p, &y));
    let minus = |a: &[PointId], b: &[PointId]| -> Vec<PointId> { a.iter().copied().filter(|v| !b.contains(v)).collect() };
    let lhs = w.sum(&minus(&del_y, &del_x)) - w.sum(&minus(&del_x, &del_y));
    let rhs = w.sum(&minus(&ins_y, &ins)) - w.sum(&minus(&ins, &ins_y));
    let mut report = CheckReport::new();
    report.record(|| Site::Insertion { ideal: names(p, x.points()), point: p.name(q).to_string() }, lhs, rhs);
    Ok(report)
}

/// The partition equation at `q` for the split `S_q = lower ⊔ upper`.
pub fn check_partition_equation(
    p: &PointPosetWindow,
    w: &WeightScheme,
    q: PointId,
    lower: &[PointId],
    upper: &[PointId],
) -> Result<CheckReport, VerifyError> {
    let nb = neighborhood(p, q)?;
    let bad = |reason: &str| VerifyError::BadPartition { point: p.name(q).to_string(), reason: reason.to_string() };
    let mut joined: Vec<PointId> = lower.iter().chain(upper).copied().collect();
    joined.sort();
    if joined != nb.siblings {
        return Err(bad("parts do not partition the siblings"));
    }
    for &a in &nb.siblings {
        for &b in lower {
            if a != b && p.leq(a, b) && !lower.contains(&a) {
                return Err(bad("lower part is not an ideal"));
            }
        }
    }
    let lhs = partition_lhs(p, w, &nb.c_minus, &nb.c_plus, lower, upper);
    let rhs = w.weight(q) * rational::int(2);
    let mut report = CheckReport::new();
    report.record(
        || Site::Partition { point: p.name(q).to_string(), lower: names(p, lower), upper: names(p, upper) },
        lhs,
        rhs,
    );
    Ok(report)
}

fn partition_lhs(p: &PointPosetWindow, w: &WeightScheme, c_minus: &[PointId], c_plus: &[PointId], lower: &[PointId], upper: &[PointId]) -> Q {
    let below: Q = c_minus.iter().filter(|&&a| !lower.iter().any(|&t| p.leq(a, t))).map(|&a| w.weight(a).clone()).sum();
    let above: Q = c_plus.iter().filter(|&&b| !upper.iter().any(|&t| p.leq(t, b))).map(|&b| w.weight(b).clone()).sum();
    below + above
}

/// The minimal-point equation and every partition equation at every interior
/// point. Sibling sets larger than twelve are sampled with the given seed.
pub fn check_all_partitions(p: &PointPosetWindow, w: &WeightScheme, seed: u64) -> Result<CheckReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new();
    // the partition equations never mention r
    report.record(|| Site::Minimal, w.degree().clone(), w.sum(&p.minimal_points()));
    for q in p.points() {
        if !p.is_interior(q) {
            report.skipped.push(p.name(q).to_string());
            continue;
        }
        let nb = neighborhood(p, q)?;
        let s = nb.siblings.len();
        let masks: Vec<u64> = if s <= 12 {
            (0..1u64 << s).collect()
        } else {
            (0..4096).map(|_| rng.gen::<u64>() & ((1u64 << s.min(63)) - 1)).collect()
        };
        for mask in masks {
            let lower: Vec<PointId> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| nb.siblings[i]).collect();
            let upper: Vec<PointId> = (0..s).filter(|i| mask >> i & 1 == 0).map(|i| nb.siblings[i]).collect();
            let is_ideal = lower.iter().all(|&b| nb.siblings.iter().all(|&a| !p.leq(a, b) || lower.contains(&a)));
            if !is_ideal {
                continue;
            }
            let lhs = partition_lhs(p, w, &nb.c_minus, &nb.c_plus, &lower, &upper);
            report.record(
                || Site::Partition { point: p.name(q).to_string(), lower: names(p, &lower), upper: names(p, &upper) },
                lhs,
                w.weight(q) * rational::int(2),
            );
        }
    }
    Ok(report)
}

/// The local system: minimal-point equation, one orphan equation per interior
/// point, bijectivity of the sibling pairing, and `w(m⁻) = w(m⁺)`.
pub fn check_local(p: &PointPosetWindow, w: &WeightScheme, mode: OrphanMode) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new();
    report.record(|| Site::Minimal, w.degree().clone(), w.sum(&p.minimal_points()));
    for q in p.points() {
        if !p.is_interior(q) {
            report.skipped.push(p.name(q).to_string());
            continue;
        }
        let nb = neighborhood(p, q)?;
        let lhs = match mode {
            OrphanMode::JoinOrphan => w.sum(&nb.c_minus) + w.sum(&nb.upward_orphans(p)),
            OrphanMode::MeetOrphan => w.sum(&nb.downward_orphans(p)) + w.sum(&nb.c_plus),
        };
        report.record(|| Site::Orphan { point: p.name(q).to_string(), mode }, lhs, w.weight(q) * rational::int(2));
        if !nb.pairing_is_bijective() {
            let distinct = |pick: fn(&(PointId, PointId)) -> PointId| {
                let mut v: Vec<PointId> = nb.pairing.values().map(pick).collect();
                v.sort();
                v.dedup();
                v.len()
            };
            let partners = distinct(|t| t.0).min(distinct(|t| t.1));
            report.record(
                || Site::Pairing { point: p.name(q).to_string() },
                rational::int(nb.pairing.len() as i64),
                rational::int(partners as i64),
            );
        }
        for (&m, &(lo, hi)) in &nb.pairing {
            report.record(
                || Site::Sibling { point: p.name(q).to_string(), sibling: p.name(m).to_string() },
                w.weight(lo).clone(),
                w.weight(hi).clone(),
            );
        }
    }
    Ok(report)
}

/// `Σ_up w − Σ_down w = r` at every element whose rank lies in `ranks`.
pub fn check_graded_graph(g: &GradedWeightedGraph, degree: &Q, ranks: RangeInclusive<i64>) -> CheckReport {
    let mut report = CheckReport::new();
    let visible = g.interior_ranks();
    for e in g.elements() {
        let k = g.rank(e);
        if !ranks.contains(&k) {
            continue;
        }
        if !visible.contains(&k) {
            report.skipped.push(g.name(e).to_string());
            continue;
        }
        let up: Q = g.up(e).iter().map(|(_, w)| w.clone()).sum();
        let down: Q = g.down(e).iter().map(|(_, w)| w.clone()).sum();
        report.record(|| Site::Element { element: g.name(e).to_string() }, up - down, degree.clone());
    }
    report
}
