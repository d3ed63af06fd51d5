use super::{PointId, PointPosetWindow};
use serde::Serialize;
use std::collections::BTreeSet;

/// A pair of points violating a structural predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub first: String,
    pub second: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub holds: bool,
    pub witnesses: Vec<PairWitness>,
}

impl StructureReport {
    fn from_witnesses(witnesses: Vec<PairWitness>) -> Self {
        StructureReport { holds: witnesses.is_empty(), witnesses }
    }
}

fn common(a: &[PointId], b: &[PointId]) -> Vec<PointId> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn upper_visible(p: &PointPosetWindow, x: PointId) -> bool {
    p.rank(x) < p.max_rank()
}

/// Pairs of distinct points sharing a lower cover or an upper cover.
fn sibling_pairs(p: &PointPosetWindow) -> BTreeSet<(PointId, PointId, bool)> {
    let mut out = BTreeSet::new();
    for z in p.points() {
        for (list, shares_lower) in [(p.up(z), true), (p.down(z), false)] {
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    out.insert((a.min(b), a.max(b), shares_lower));
                }
            }
        }
    }
    out
}

/// Every two points covering a common point have a common upper cover, and dually.
/// Pairs whose upper covers lie beyond the window are skipped.
pub fn check_cover_modular(p: &PointPosetWindow) -> StructureReport {
    let mut witnesses = Vec::new();
    for (a, b, shares_lower) in sibling_pairs(p) {
        if shares_lower {
            if upper_visible(p, a) && common(p.up(a), p.up(b)).is_empty() {
                witnesses.push(witness(p, a, b, "share a lower cover but no upper cover"));
            }
        } else if common(p.down(a), p.down(b)).is_empty() {
            witnesses.push(witness(p, a, b, "share an upper cover but no lower cover"));
        }
    }
    StructureReport::from_witnesses(witnesses)
}

/// Every two points sharing a cover or cocover share exactly one of each.
pub fn check_unique_cover_modular(p: &PointPosetWindow) -> StructureReport {
    let mut witnesses = Vec::new();
    let pairs: BTreeSet<(PointId, PointId)> = sibling_pairs(p).into_iter().map(|(a, b, _)| (a, b)).collect();
    for (a, b) in pairs {
        let lower = common(p.down(a), p.down(b)).len();
        if lower != 1 {
            witnesses.push(witness(p, a, b, &format!("{lower} common lower covers")));
        }
        if upper_visible(p, a) {
            let upper = common(p.up(a), p.up(b)).len();
            if upper != 1 {
                witnesses.push(witness(p, a, b, &format!("{upper} common upper covers")));
            }
        }
    }
    StructureReport::from_witnesses(witnesses)
}

fn witness(p: &PointPosetWindow, a: PointId, b: PointId, reason: &str) -> PairWitness {
    PairWitness { first: p.name(a).to_string(), second: p.name(b).to_string(), reason: reason.to_string() }
}

/// Partition of the points into connected components of the Hasse diagram,
/// ordered by their first point.
pub fn component_ids(p: &PointPosetWindow) -> Vec<Vec<PointId>> {
    let n = p.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for a in p.points() {
        for &b in p.up(a) {
            let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<PointId>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for a in p.points() {
        let root = find(&mut parent, a.index());
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(a);
    }
    groups
}

/// Connected components as separate windows.
pub fn connected_components(p: &PointPosetWindow) -> Vec<PointPosetWindow> {
    component_ids(p)
        .into_iter()
        .map(|group| {
            let mut keep = vec![false; p.len()];
            for q in group {
                keep[q.index()] = true;
            }
            p.restrict(|q| keep[q.index()])
        })
        .collect()
}
