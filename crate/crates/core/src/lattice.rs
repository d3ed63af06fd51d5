//! Finite order ideals of a point window: the distributive lattice they form,
//! insertion and deletion points, chain counts and colourings.

use crate::poset::{PointId, PointPosetWindow};
use crate::rational::Q;
use crate::weights::WeightScheme;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("window complete only below rank {complete_below}; size bound {requested} needs more")]
    WindowTooShallow { requested: usize, complete_below: u32 },
    #[error("point set is not downward closed")]
    NotAnIdeal,
    #[error("diagram of size {0} was not enumerated")]
    NotEnumerated(usize),
    #[error("no weight for point {0:?}")]
    MissingWeight(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
}

/// A finite order ideal, stored as its sorted points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Diagram(Vec<PointId>);

impl Diagram {
    pub fn empty() -> Self {
        Diagram(Vec::new())
    }

    /// Canonicalizes an arbitrary point list (no ideal check).
    pub fn from_points(points: impl IntoIterator<Item = PointId>) -> Self {
        let mut v: Vec<PointId> = points.into_iter().collect();
        v.sort();
        v.dedup();
        Diagram(v)
    }

    /// Resolves names and checks downward closure.
    pub fn from_names(p: &PointPosetWindow, names: &[&str]) -> Result<Self, LatticeError> {
        let ids = names
            .iter()
            .map(|n| p.id(n).ok_or_else(|| LatticeError::UnknownPoint(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let d = Diagram::from_points(ids);
        if d.is_ideal(p) {
            Ok(d)
        } else {
            Err(LatticeError::NotAnIdeal)
        }
    }

    pub fn points(&self) -> &[PointId] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn with(&self, p: PointId) -> Diagram {
        let mut v = self.0.clone();
        if let Err(i) = v.binary_search(&p) {
            v.insert(i, p);
        }
        Diagram(v)
    }

    pub fn without(&self, p: PointId) -> Diagram {
        Diagram(self.0.iter().copied().filter(|&q| q != p).collect())
    }

    pub fn union(&self, other: &Diagram) -> Diagram {
        Diagram::from_points(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &Diagram) -> Diagram {
        Diagram(self.0.iter().copied().filter(|&q| other.contains(q)).collect())
    }

    pub fn is_ideal(&self, p: &PointPosetWindow) -> bool {
        self.0.iter().all(|&q| p.down(q).iter().all(|&d| self.contains(d)))
    }

    /// Point names, sorted lexicographically.
    pub fn sorted_names(&self, p: &PointPosetWindow) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(|&q| p.name(q).to_string()).collect();
        v.sort();
        v
    }
}

/// Minimal points of the complement. Needs every point of `x` to lie strictly
/// below the complete part of the window.
pub fn insertion_points(p: &PointPosetWindow, x: &Diagram) -> Result<Vec<PointId>, LatticeError> {
    if !x.is_ideal(p) {
        return Err(LatticeError::NotAnIdeal);
    }
    if x.points().iter().any(|&q| p.rank(q) >= p.complete_below()) {
        return Err(LatticeError::WindowTooShallow { requested: x.size() + 1, complete_below: p.complete_below() });
    }
    Ok(insertion_points_unchecked(p, x))
}

fn insertion_points_unchecked(p: &PointPosetWindow, x: &Diagram) -> Vec<PointId> {
    let mut out: Vec<PointId> = p.minimal_points().into_iter().filter(|&q| !x.contains(q)).collect();
    for &q in x.points() {
        for &u in p.up(q) {
            if !x.contains(u) && !out.contains(&u) && p.down(u).iter().all(|&d| x.contains(d)) {
                out.push(u);
            }
        }
    }
    out.sort();
    out
}

/// Maximal points of `x`.
pub fn deletion_points(p: &PointPosetWindow, x: &Diagram) -> Vec<PointId> {
    x.points().iter().copied().filter(|&q| !p.up(q).iter().any(|&u| x.contains(u))).collect()
}

/// `c(x)`: the product of the weights of the points of `x`.
pub fn coloring_count_c(w: &WeightScheme, x: &Diagram) -> Result<Q, LatticeError> {
    let mut acc = Q::one();
    for &q in x.points() {
        let v = w.get(q).ok_or_else(|| LatticeError::MissingWeight(format!("#{}", q.index())))?;
        acc *= v;
    }
    Ok(acc)
}

/// All ideals up to a size bound with labelled covers.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    n_max: usize,
    ideals: Vec<Diagram>,
    level_start: Vec<usize>,
    index: HashMap<Diagram, usize>,
    up: Vec<Vec<(usize, PointId)>>,
    down: Vec<Vec<(usize, PointId)>>,
}

/// Enumerates every ideal of size at most `n_max`, breadth first by size.
pub fn enumerate_ideals(p: &PointPosetWindow, n_max: usize) -> Result<IdealLattice, LatticeError> {
    if n_max > p.complete_below() as usize {
        return Err(LatticeError::WindowTooShallow { requested: n_max, complete_below: p.complete_below() });
    }
    Ok(enumerate_bounded(p, n_max, |_| true))
}

/// Enumerates every ideal contained in the points of rank `< complete_below`:
/// exactly the ideals whose insertion points are all visible.
pub fn enumerate_interior_ideals(p: &PointPosetWindow) -> IdealLattice {
    let interior = p.points().filter(|&q| p.is_interior(q)).count();
    enumerate_bounded(p, interior, |q| p.is_interior(q))
}

fn enumerate_bounded(p: &PointPosetWindow, n_max: usize, allowed: impl Fn(PointId) -> bool) -> IdealLattice {
    let mut lat = IdealLattice {
        n_max,
        ideals: vec![Diagram::empty()],
        level_start: vec![0, 1],
        index: HashMap::from([(Diagram::empty(), 0)]),
        up: vec![Vec::new()],
        down: vec![Vec::new()],
    };
    for size in 0..n_max {
        let (lo, hi) = (lat.level_start[size], lat.level_start[size + 1]);
        for i in lo..hi {
            let x = lat.ideals[i].clone();
            for q in insertion_points_unchecked(p, &x).into_iter().filter(|&q| allowed(q)) {
                let y = x.with(q);
                let j = match lat.index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = lat.ideals.len();
                        lat.index.insert(y.clone(), j);
                        lat.ideals.push(y);
                        lat.up.push(Vec::new());
                        lat.down.push(Vec::new());
                        j
                    }
                };
                lat.up[i].push((j, q));
                lat.down[j].push((i, q));
            }
        }
        lat.level_start.push(lat.ideals.len());
    }
    lat
}

impl IdealLattice {
    /// Largest enumerated size.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideal(&self, i: usize) -> &Diagram {
        &self.ideals[i]
    }

    pub fn ideals(&self) -> &[Diagram] {
        &self.ideals
    }

    pub fn index_of(&self, x: &Diagram) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of the ideals of a given size.
    pub fn by_size(&self, size: usize) -> std::ops::Range<usize> {
        if size + 1 >= self.level_start.len() {
            return 0..0;
        }
        self.level_start[size]..self.level_start[size + 1]
    }

    /// Number of ideals of each size.
    pub fn counts(&self) -> Vec<usize> {
        self.level_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Upper covers with the added point.
    pub fn up(&self, i: usize) -> &[(usize, PointId)] {
        &self.up[i]
    }

    /// Lower covers with the removed point.
    pub fn down(&self, i: usize) -> &[(usize, PointId)] {
        &self.down[i]
    }

    /// `f(x)` for every enumerated ideal.
    pub fn chain_counts(&self) -> Vec<BigUint> {
        let mut f = vec![BigUint::zero(); self.ideals.len()];
        f[0] = BigUint::one();
        for i in 1..self.ideals.len() {
            f[i] = self.down[i].iter().map(|&(j, _)| f[j].clone()).sum();
        }
        f
    }

    /// Graphviz rendering; nodes are labelled by their sorted point names.
    pub fn to_dot(&self, p: &PointPosetWindow) -> String {
        let label = |i: usize| format!("{{{}}}", self.ideals[i].sorted_names(p).join(" "));
        let mut out = String::from("digraph ideals {\n  rankdir=BT;\n");
        for size in 0..=self.n_max {
            out.push_str("  { rank=same;");
            for i in self.by_size(size) {
                out.push_str(&format!(" n{i} [label=\"{}\"];", label(i)));
            }
            out.push_str(" }\n");
        }
        for i in 0..self.ideals.len() {
            for &(j, q) in &self.up[i] {
                out.push_str(&format!("  n{i} -> n{j} [label=\"{}\"];\n", p.name(q)));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Levels as lists of sorted point-name lists.
    pub fn to_levels(&self, p: &PointPosetWindow) -> LatticeLevels {
        LatticeLevels {
            levels: (0..=self.n_max).map(|s| self.by_size(s).map(|i| self.ideals[i].sorted_names(p)).collect()).collect(),
        }
    }
}

/// `f(x)` for a single enumerated diagram.
pub fn chain_count_f(lat: &IdealLattice, x: &Diagram) -> Result<BigUint, LatticeError> {
    let i = lat.index_of(x).ok_or(LatticeError::NotEnumerated(x.size()))?;
    Ok(lat.chain_counts().swap_remove(i))
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeLevels {
    pub levels: Vec<Vec<Vec<String>>>,
}
