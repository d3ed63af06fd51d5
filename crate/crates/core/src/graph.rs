//! Graded graphs with rational cover weights: the general presentation of a
//! weighted-differential lattice, with or without a bottom element.

use crate::lattice::IdealLattice;
use crate::poset::PointPosetWindow;
use crate::rational::{self, Q};
use crate::weights::WeightScheme;
use num_traits::Signed;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate element {0:?}")]
    Duplicate(String),
    #[error("unknown element {0:?}")]
    Unknown(String),
    #[error("edge {lower:?} -> {upper:?} does not raise the rank by one")]
    RankGap { lower: String, upper: String },
    #[error("bottom element requested but rank {rank} has {count} elements")]
    NoBottom { rank: i64, count: usize },
}

/// Dense element index; the order of insertion is the canonical element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub(crate) u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct GradedWeightedGraph {
    names: Vec<String>,
    ranks: Vec<i64>,
    up: Vec<Vec<(ElemId, Q)>>,
    down: Vec<Vec<(ElemId, Q)>>,
    by_rank: BTreeMap<i64, Vec<ElemId>>,
    by_name: HashMap<String, ElemId>,
    zero_hat: Option<ElemId>,
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    ranks: Vec<i64>,
    edges: Vec<(usize, usize, Q)>,
    by_name: HashMap<String, ElemId>,
    bottom: bool,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares that the lowest rank holds a single bottom element.
    pub fn with_bottom(mut self) -> Self {
        self.bottom = true;
        self
    }

    pub fn element(&mut self, name: impl Into<String>, rank: i64) -> Result<ElemId, GraphError> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(GraphError::Duplicate(name));
        }
        let id = ElemId(self.names.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.names.push(name);
        self.ranks.push(rank);
        Ok(id)
    }

    pub fn id(&self, name: &str) -> Option<ElemId> {
        self.by_name.get(name).copied()
    }

    pub fn edge(&mut self, lower: ElemId, upper: ElemId, weight: Q) {
        self.edges.push((lower.index(), upper.index(), weight));
    }

    pub fn build(self) -> Result<GradedWeightedGraph, GraphError> {
        let n = self.names.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (lo, hi, w) in self.edges {
            if self.ranks[hi] != self.ranks[lo] + 1 {
                return Err(GraphError::RankGap { lower: self.names[lo].clone(), upper: self.names[hi].clone() });
            }
            up[lo].push((ElemId(hi as u32), w.clone()));
            down[hi].push((ElemId(lo as u32), w));
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_by_key(|(e, _)| *e);
        }
        let mut by_rank: BTreeMap<i64, Vec<ElemId>> = BTreeMap::new();
        for (i, &r) in self.ranks.iter().enumerate() {
            by_rank.entry(r).or_default().push(ElemId(i as u32));
        }
        let zero_hat = if self.bottom {
            match by_rank.iter().next() {
                Some((_, v)) if v.len() == 1 => Some(v[0]),
                Some((&rank, v)) => return Err(GraphError::NoBottom { rank, count: v.len() }),
                None => return Err(GraphError::NoBottom { rank: 0, count: 0 }),
            }
        } else {
            None
        };
        Ok(GradedWeightedGraph { names: self.names, ranks: self.ranks, up, down, by_rank, by_name: self.by_name, zero_hat })
    }
}

impl GradedWeightedGraph {
    /// The ideal lattice as a graph: covers weighted by the added point. Within a
    /// rank, diagrams are ordered lexicographically by their sorted point names.
    pub fn from_ideal_lattice(p: &PointPosetWindow, w: &WeightScheme, lat: &IdealLattice) -> Self {
        let mut order: Vec<usize> = (0..lat.len()).collect();
        let keys: Vec<Vec<String>> = lat.ideals().iter().map(|d| d.sorted_names(p)).collect();
        order.sort_by(|&a, &b| lat.ideal(a).size().cmp(&lat.ideal(b).size()).then_with(|| keys[a].cmp(&keys[b])));
        let mut b = GraphBuilder::new().with_bottom();
        let mut ids = vec![ElemId(0); lat.len()];
        for &i in &order {
            ids[i] = b.element(format!("{{{}}}", keys[i].join(" ")), lat.ideal(i).size() as i64).expect("distinct diagrams");
        }
        for i in 0..lat.len() {
            for &(j, q) in lat.up(i) {
                b.edge(ids[i], ids[j], w.weight(q).clone());
            }
        }
        b.build().expect("ideal lattice is graded with bottom")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.names.len() as u32).map(ElemId)
    }

    pub fn name(&self, e: ElemId) -> &str {
        &self.names[e.index()]
    }

    pub fn id(&self, name: &str) -> Option<ElemId> {
        self.by_name.get(name).copied()
    }

    pub fn rank(&self, e: ElemId) -> i64 {
        self.ranks[e.index()]
    }

    pub fn up(&self, e: ElemId) -> &[(ElemId, Q)] {
        &self.up[e.index()]
    }

    pub fn down(&self, e: ElemId) -> &[(ElemId, Q)] {
        &self.down[e.index()]
    }

    pub fn at_rank(&self, rank: i64) -> &[ElemId] {
        self.by_rank.get(&rank).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn zero_hat(&self) -> Option<ElemId> {
        self.zero_hat
    }

    pub fn min_rank(&self) -> i64 {
        self.by_rank.keys().next().copied().unwrap_or(0)
    }

    pub fn max_rank(&self) -> i64 {
        self.by_rank.keys().next_back().copied().unwrap_or(0)
    }

    /// Weight of the cover `lower ⋖ upper`, if present.
    pub fn weight(&self, lower: ElemId, upper: ElemId) -> Option<&Q> {
        self.up(lower).iter().find(|(e, _)| *e == upper).map(|(_, w)| w)
    }

    /// Ranks whose elements have all their up and down edges inside the graph.
    pub fn interior_ranks(&self) -> std::ops::RangeInclusive<i64> {
        let lo = if self.zero_hat.is_some() { self.min_rank() } else { self.min_rank() + 1 };
        lo..=self.max_rank() - 1
    }

    /// Every cover weight is a positive integer.
    pub fn has_positive_integral_weights(&self) -> bool {
        self.up.iter().flatten().all(|(_, w)| w.is_positive() && rational::is_integral(w))
    }
}
