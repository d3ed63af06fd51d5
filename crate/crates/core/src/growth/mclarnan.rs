//! Per-element bijections between incoming colored edges plus `r` fresh symbols
//! and outgoing colored edges.

use super::GrowthError;
use crate::graph::{ElemId, GradedWeightedGraph};
use crate::rational::{self, Q};
use num_traits::{Signed, ToPrimitive};
use std::collections::{BTreeMap, BTreeSet};

/// Something entering an element: a colored down-edge or one of the `r` symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomainItem {
    Down { lower: ElemId, color: u32 },
    Symbol(u32),
}

/// A colored up-edge leaving an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpEdge {
    pub upper: ElemId,
    pub color: u32,
}

/// One bijection per element below the top rank.
#[derive(Clone, Debug)]
pub struct McLarnanMap {
    degree: u32,
    forward: Vec<BTreeMap<DomainItem, UpEdge>>,
    backward: Vec<BTreeMap<UpEdge, DomainItem>>,
}

/// Weights and degree must be positive integers and the graph needs a bottom.
pub fn rsk_eligibility(g: &GradedWeightedGraph, degree: &Q) -> Result<u32, GrowthError> {
    if g.zero_hat().is_none() {
        return Err(GrowthError::Ineligible("no bottom element".into()));
    }
    if !degree.is_positive() || !rational::is_integral(degree) {
        return Err(GrowthError::Ineligible(format!("degree {} is not a positive integer", rational::show(degree))));
    }
    if !g.has_positive_integral_weights() {
        return Err(GrowthError::Ineligible("some cover weight is not a positive integer".into()));
    }
    Ok(degree.to_integer().to_u32().expect("degree fits in u32"))
}

pub(crate) fn multiplicity(w: &Q) -> u32 {
    w.to_integer().to_u32().expect("eligible weights are small positive integers")
}

fn domain(g: &GradedWeightedGraph, x: ElemId, degree: u32) -> Vec<DomainItem> {
    let mut items: Vec<DomainItem> = g
        .down(x)
        .iter()
        .flat_map(|(lower, w)| (1..=multiplicity(w)).map(move |color| DomainItem::Down { lower: *lower, color }))
        .collect();
    items.extend((1..=degree).map(DomainItem::Symbol));
    items
}

fn codomain(g: &GradedWeightedGraph, x: ElemId) -> Vec<UpEdge> {
    g.up(x)
        .iter()
        .flat_map(|(upper, w)| (1..=multiplicity(w)).map(move |color| UpEdge { upper: *upper, color }))
        .collect()
}

impl McLarnanMap {
    /// Builds a map from a rule choosing the image of each domain item, and
    /// checks that the rule is a bijection at every element below the top rank.
    pub fn from_rule(
        g: &GradedWeightedGraph,
        degree: &Q,
        rule: impl Fn(ElemId, &[DomainItem], &[UpEdge]) -> Result<Vec<UpEdge>, GrowthError>,
    ) -> Result<Self, GrowthError> {
        let degree = rsk_eligibility(g, degree)?;
        let mut forward = vec![BTreeMap::new(); g.len()];
        let mut backward = vec![BTreeMap::new(); g.len()];
        for x in g.elements().filter(|&x| g.rank(x) < g.max_rank()) {
            let dom = domain(g, x, degree);
            let cod = codomain(g, x);
            if dom.len() != cod.len() {
                return Err(GrowthError::CardinalityMismatch {
                    element: g.name(x).to_string(),
                    domain: dom.len(),
                    codomain: cod.len(),
                });
            }
            let images = rule(x, &dom, &cod)?;
            let distinct: BTreeSet<&UpEdge> = images.iter().collect();
            let all_valid = images.iter().all(|e| cod.contains(e));
            if images.len() != dom.len() || distinct.len() != cod.len() || !all_valid {
                return Err(GrowthError::NotBijective(g.name(x).to_string()));
            }
            for (d, e) in dom.into_iter().zip(images) {
                forward[x.index()].insert(d, e);
                backward[x.index()].insert(e, d);
            }
        }
        Ok(McLarnanMap { degree, forward, backward })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn apply(&self, x: ElemId, item: DomainItem) -> Option<UpEdge> {
        self.forward.get(x.index())?.get(&item).copied()
    }

    pub fn invert(&self, x: ElemId, edge: UpEdge) -> Option<DomainItem> {
        self.backward.get(x.index())?.get(&edge).copied()
    }

    /// The pairs at `x`, in domain order.
    pub fn table(&self, x: ElemId) -> Vec<(DomainItem, UpEdge)> {
        self.forward[x.index()].iter().map(|(d, e)| (*d, *e)).collect()
    }
}

/// Down-edges by (lower element, color), then symbols, paired in order with
/// up-edges by (upper element, color).
pub fn canonical_mclarnan(g: &GradedWeightedGraph, degree: &Q) -> Result<McLarnanMap, GrowthError> {
    McLarnanMap::from_rule(g, degree, |_, _, cod| Ok(cod.to_vec()))
}

/// Young's lattice as the ideal lattice of the quadrant, with point `"i,j"` in
/// row `i`: a down-edge removing a box from row `i` goes to the up-edge adding
/// a box to row `i + 1`, the symbol to the up-edge adding a box to row 0. This
/// is Schensted row insertion.
pub fn young_row_insertion(g: &GradedWeightedGraph) -> Result<McLarnanMap, GrowthError> {
    let boxes = |e: ElemId| -> BTreeSet<String> {
        let name = g.name(e);
        name.trim_start_matches('{').trim_end_matches('}').split_whitespace().map(str::to_string).collect()
    };
    let row_of_difference = |lo: ElemId, hi: ElemId| -> Result<u32, GrowthError> {
        let (small, big) = (boxes(lo), boxes(hi));
        let added: Vec<&String> = big.difference(&small).collect();
        let point = added.first().ok_or_else(|| GrowthError::Ineligible(format!("{} does not add a box", g.name(hi))))?;
        point
            .split(',')
            .next()
            .and_then(|row| row.parse().ok())
            .ok_or_else(|| GrowthError::Ineligible(format!("box {point:?} is not named row,column")))
    };
    McLarnanMap::from_rule(g, &Q::from_integer(1.into()), |x, dom, cod| {
        let mut by_row = BTreeMap::new();
        for e in cod {
            by_row.insert(row_of_difference(x, e.upper)?, *e);
        }
        dom.iter()
            .map(|d| {
                let row = match d {
                    DomainItem::Symbol(_) => 0,
                    DomainItem::Down { lower, .. } => row_of_difference(*lower, x)? + 1,
                };
                by_row.get(&row).copied().ok_or_else(|| GrowthError::NotBijective(g.name(x).to_string()))
            })
            .collect()
    })
}
