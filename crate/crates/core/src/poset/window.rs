use super::PosetError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Dense index of a point inside one window. Ordering follows construction order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointId(pub(crate) u32);

impl PointId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        PointId(i as u32)
    }
}

/// A finitely presented graded poset of points: every point of rank at most
/// `max_rank`, with all points of rank at most `complete_below` guaranteed present.
#[derive(Clone, Debug)]
pub struct PointPosetWindow {
    max_rank: u32,
    complete_below: u32,
    names: Vec<String>,
    ranks: Vec<u32>,
    up: Vec<Vec<PointId>>,
    down: Vec<Vec<PointId>>,
    by_name: HashMap<String, PointId>,
    by_rank: Vec<Vec<PointId>>,
}

/// Incremental constructor for [`PointPosetWindow`].
#[derive(Debug, Default)]
pub struct WindowBuilder {
    max_rank: u32,
    complete_below: Option<u32>,
    names: Vec<String>,
    ranks: Vec<u32>,
    covers: Vec<(usize, usize)>,
    by_name: HashMap<String, PointId>,
}

impl WindowBuilder {
    pub fn new(max_rank: u32) -> Self {
        WindowBuilder { max_rank, ..Default::default() }
    }

    pub fn complete_below(mut self, rank: u32) -> Self {
        self.complete_below = Some(rank);
        self
    }

    pub fn point(&mut self, name: impl Into<String>, rank: u32) -> Result<PointId, PosetError> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(PosetError::DuplicatePoint(name));
        }
        if rank > self.max_rank {
            return Err(PosetError::RankAboveWindow { point: name, rank, max_rank: self.max_rank });
        }
        let id = PointId(self.names.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.ranks.push(rank);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<PointId> {
        self.by_name.get(name).copied()
    }

    pub fn cover(&mut self, lower: &str, upper: &str) -> Result<(), PosetError> {
        let lo = self.id(lower).ok_or_else(|| PosetError::UnknownPoint(lower.to_string()))?;
        let hi = self.id(upper).ok_or_else(|| PosetError::UnknownPoint(upper.to_string()))?;
        self.cover_ids(lo, hi);
        Ok(())
    }

    pub fn cover_ids(&mut self, lower: PointId, upper: PointId) {
        self.covers.push((lower.index(), upper.index()));
    }

    pub fn build(self) -> Result<PointPosetWindow, PosetError> {
        let n = self.names.len();
        let complete_below = self.complete_below.unwrap_or(self.max_rank);
        if complete_below > self.max_rank {
            return Err(PosetError::CompleteBelowTooLarge { complete_below, max_rank: self.max_rank });
        }
        let mut up: Vec<BTreeSet<PointId>> = vec![BTreeSet::new(); n];
        let mut down: Vec<BTreeSet<PointId>> = vec![BTreeSet::new(); n];
        for &(lo, hi) in &self.covers {
            if self.ranks[hi] != self.ranks[lo] + 1 {
                return Err(PosetError::RankGap {
                    lower: self.names[lo].clone(),
                    upper: self.names[hi].clone(),
                });
            }
            up[lo].insert(PointId(hi as u32));
            down[hi].insert(PointId(lo as u32));
        }
        let mut by_rank = vec![Vec::new(); self.max_rank as usize + 1];
        for (i, &r) in self.ranks.iter().enumerate() {
            by_rank[r as usize].push(PointId(i as u32));
        }
        Ok(PointPosetWindow {
            max_rank: self.max_rank,
            complete_below,
            names: self.names,
            ranks: self.ranks,
            up: up.into_iter().map(|s| s.into_iter().collect()).collect(),
            down: down.into_iter().map(|s| s.into_iter().collect()).collect(),
            by_name: self.by_name,
            by_rank,
        })
    }
}

impl PointPosetWindow {
    /// The window with no points.
    pub fn empty(max_rank: u32) -> Self {
        WindowBuilder::new(max_rank).build().expect("empty window is valid")
    }

    pub fn max_rank(&self) -> u32 {
        self.max_rank
    }

    pub fn complete_below(&self) -> u32 {
        self.complete_below
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.names.len() as u32).map(PointId)
    }

    pub fn name(&self, p: PointId) -> &str {
        &self.names[p.index()]
    }

    pub fn id(&self, name: &str) -> Option<PointId> {
        self.by_name.get(name).copied()
    }

    /// Looks up a point by name, failing with [`PosetError::UnknownPoint`].
    pub fn require(&self, name: &str) -> Result<PointId, PosetError> {
        self.id(name).ok_or_else(|| PosetError::UnknownPoint(name.to_string()))
    }

    pub fn rank(&self, p: PointId) -> u32 {
        self.ranks[p.index()]
    }

    pub fn up(&self, p: PointId) -> &[PointId] {
        &self.up[p.index()]
    }

    pub fn down(&self, p: PointId) -> &[PointId] {
        &self.down[p.index()]
    }

    pub fn at_rank(&self, rank: u32) -> &[PointId] {
        self.by_rank.get(rank as usize).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Points with no lower cover.
    pub fn minimal_points(&self) -> Vec<PointId> {
        self.points().filter(|&p| self.down(p).is_empty()).collect()
    }

    /// A point is interior when every point of its neighbourhood is present,
    /// i.e. its upper covers lie within the complete part of the window.
    pub fn is_interior(&self, p: PointId) -> bool {
        self.rank(p) < self.complete_below
    }

    /// `a ≤ b` in the poset.
    pub fn leq(&self, a: PointId, b: PointId) -> bool {
        if a == b {
            return true;
        }
        let target = self.rank(b);
        if self.rank(a) >= target {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &y in self.up(x) {
                if y == b {
                    return true;
                }
                if self.rank(y) < target && !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Points `q` with `q ≥ p` (including `p`).
    pub fn up_set(&self, seeds: impl IntoIterator<Item = PointId>) -> BTreeSet<PointId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<PointId> = seeds.into_iter().collect();
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend_from_slice(self.up(x));
            }
        }
        out
    }

    /// Sub-window induced on the points for which `keep` holds.
    pub fn restrict(&self, keep: impl Fn(PointId) -> bool) -> PointPosetWindow {
        let mut b = WindowBuilder::new(self.max_rank).complete_below(self.complete_below);
        let mut map = vec![None; self.len()];
        for p in self.points().filter(|&p| keep(p)) {
            map[p.index()] = Some(b.point(self.name(p), self.rank(p)).expect("names unique"));
        }
        for p in self.points() {
            if let Some(lo) = map[p.index()] {
                for &q in self.up(p) {
                    if let Some(hi) = map[q.index()] {
                        b.cover_ids(lo, hi);
                    }
                }
            }
        }
        b.build().expect("restriction of a valid window is valid")
    }

    /// Disjoint union; point names are prefixed with `"{i}/"` for the i-th part.
    pub fn disjoint_union(parts: &[&PointPosetWindow]) -> PointPosetWindow {
        let max_rank = parts.iter().map(|p| p.max_rank).max().unwrap_or(0);
        let complete_below = parts.iter().map(|p| p.complete_below).min().unwrap_or(max_rank);
        let mut b = WindowBuilder::new(max_rank).complete_below(complete_below);
        for (i, part) in parts.iter().enumerate() {
            let ids: Vec<PointId> = part
                .points()
                .map(|p| b.point(format!("{i}/{}", part.name(p)), part.rank(p)).expect("prefixed names unique"))
                .collect();
            for p in part.points() {
                for &q in part.up(p) {
                    b.cover_ids(ids[p.index()], ids[q.index()]);
                }
            }
        }
        b.build().expect("disjoint union of valid windows is valid")
    }

    /// Serializable form.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            max_rank: self.max_rank,
            complete_below: Some(self.complete_below),
            points: self
                .points()
                .map(|p| PointEntry {
                    id: self.name(p).to_string(),
                    rank: self.rank(p),
                    up: self.up(p).iter().map(|&q| self.name(q).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self, PosetError> {
        let mut b = WindowBuilder::new(file.max_rank);
        if let Some(c) = file.complete_below {
            b = b.complete_below(c);
        }
        for e in &file.points {
            b.point(e.id.clone(), e.rank)?;
        }
        for e in &file.points {
            for u in &e.up {
                b.cover(&e.id, u)?;
            }
        }
        b.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("poset file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PosetError> {
        let file: PosetFile = serde_json::from_str(s).map_err(|e| PosetError::Json(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// JSON shape: `{"max_rank": int, "complete_below": int, "points": [{"id", "rank", "up"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PosetFile {
    pub max_rank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete_below: Option<u32>,
    pub points: Vec<PointEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PointEntry {
    pub id: String,
    pub rank: u32,
    #[serde(default)]
    pub up: Vec<String>,
}
