use super::{PointId, PointPosetWindow, PosetError};
use serde::Serialize;
use std::collections::BTreeMap;

/// The covers, cocovers and siblings of a point, with each sibling's partners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: PointId,
    pub c_minus: Vec<PointId>,
    pub c_plus: Vec<PointId>,
    pub siblings: Vec<PointId>,
    /// sibling ↦ (unique cocover of the center below it, unique cover above it)
    pub pairing: BTreeMap<PointId, (PointId, PointId)>,
}

/// `(|C⁺|, |C⁻|, |S|)`, the shape classifying a neighbourhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodShape {
    pub covers: usize,
    pub cocovers: usize,
    pub siblings: usize,
}

/// All neighbourhood shapes a positive weighting allows, in table order.
pub const NEIGHBORHOOD_TABLE: [(usize, usize, usize); 14] = [
    (0, 0, 0),
    (0, 1, 0),
    (0, 2, 0),
    (1, 0, 0),
    (1, 1, 0),
    (1, 1, 1),
    (1, 2, 0),
    (1, 2, 1),
    (2, 0, 0),
    (2, 1, 0),
    (2, 1, 1),
    (2, 2, 0),
    (2, 2, 1),
    (2, 2, 2),
];

impl NeighborhoodShape {
    /// 1-based row of [`NEIGHBORHOOD_TABLE`], if the shape appears there.
    pub fn table_row(&self) -> Option<usize> {
        NEIGHBORHOOD_TABLE
            .iter()
            .position(|&t| t == (self.covers, self.cocovers, self.siblings))
            .map(|i| i + 1)
    }

    /// Number of points in the neighbourhood, the center included.
    pub fn size(&self) -> usize {
        1 + self.covers + self.cocovers + self.siblings
    }
}

impl Neighborhood {
    pub fn shape(&self) -> NeighborhoodShape {
        NeighborhoodShape { covers: self.c_plus.len(), cocovers: self.c_minus.len(), siblings: self.siblings.len() }
    }

    /// Covers of the center that cover no sibling.
    pub fn upward_orphans(&self, p: &PointPosetWindow) -> Vec<PointId> {
        self.c_plus
            .iter()
            .copied()
            .filter(|&b| !p.down(b).iter().any(|m| self.siblings.contains(m)))
            .collect()
    }

    /// Cocovers of the center covered by no sibling.
    pub fn downward_orphans(&self, p: &PointPosetWindow) -> Vec<PointId> {
        self.c_minus
            .iter()
            .copied()
            .filter(|&a| !p.up(a).iter().any(|m| self.siblings.contains(m)))
            .collect()
    }

    /// The pairing is injective in both coordinates.
    pub fn pairing_is_bijective(&self) -> bool {
        let mut lows: Vec<PointId> = self.pairing.values().map(|v| v.0).collect();
        let mut highs: Vec<PointId> = self.pairing.values().map(|v| v.1).collect();
        lows.sort();
        lows.dedup();
        highs.sort();
        highs.dedup();
        lows.len() == self.pairing.len() && highs.len() == self.pairing.len()
    }

    /// Siblings are pairwise incomparable.
    pub fn siblings_form_antichain(&self, p: &PointPosetWindow) -> bool {
        self.siblings.iter().enumerate().all(|(i, &a)| {
            self.siblings[i + 1..].iter().all(|&b| !p.leq(a, b) && !p.leq(b, a))
        })
    }
}

/// Computes the neighbourhood of an interior point.
pub fn neighborhood(p: &PointPosetWindow, center: PointId) -> Result<Neighborhood, PosetError> {
    if !p.is_interior(center) {
        return Err(PosetError::NeighborhoodNotVisible { point: p.name(center).to_string() });
    }
    let c_minus = p.down(center).to_vec();
    let c_plus = p.up(center).to_vec();
    let mut siblings = Vec::new();
    for &a in &c_minus {
        for &m in p.up(a) {
            if m != center && !siblings.contains(&m) && p.up(m).iter().any(|b| c_plus.contains(b)) {
                siblings.push(m);
            }
        }
    }
    siblings.sort();
    let mut pairing = BTreeMap::new();
    for &m in &siblings {
        let below: Vec<PointId> = p.down(m).iter().copied().filter(|a| c_minus.contains(a)).collect();
        let above: Vec<PointId> = p.up(m).iter().copied().filter(|b| c_plus.contains(b)).collect();
        if below.len() != 1 || above.len() != 1 {
            return Err(PosetError::NonUniquePartner {
                point: p.name(center).to_string(),
                sibling: p.name(m).to_string(),
            });
        }
        pairing.insert(m, (below[0], above[0]));
    }
    Ok(Neighborhood { center, c_minus, c_plus, siblings, pairing })
}
