//! Product, factor, scale and truncation.

use super::{FamilyError, WeightedPoset};
use crate::lattice::{enumerate_ideals, Diagram, IdealLattice};
use crate::poset::{connected_components, PointPosetWindow};
use crate::rational::Q;
use crate::verify::{check_global, check_local, names, CheckReport, OrphanMode, Site};
use crate::weights::WeightScheme;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

/// Multiplies every weight and the degree by `factor`.
pub fn scale(family: &WeightedPoset, factor: &Q) -> WeightedPoset {
    WeightedPoset { poset: family.poset.clone(), weights: family.weights.scaled(factor) }
}

/// Disjoint union of point posets with degrees added. Empty factors (the
/// trivial lattice) are dropped, so a product with one nontrivial factor is
/// that factor unchanged.
pub fn product(factors: &[WeightedPoset]) -> WeightedPoset {
    let kept: Vec<&WeightedPoset> = factors.iter().filter(|f| !f.poset.is_empty()).collect();
    let degree = factors.iter().fold(Q::zero(), |acc, f| acc + f.weights.degree());
    if let [only] = kept.as_slice() {
        let mut weights = only.weights.clone();
        weights.set_degree(degree);
        return WeightedPoset { poset: only.poset.clone(), weights };
    }
    let parts: Vec<&PointPosetWindow> = kept.iter().map(|f| &f.poset).collect();
    let poset = PointPosetWindow::disjoint_union(&parts);
    let values = kept.iter().flat_map(|f| f.weights.values().iter().cloned()).collect();
    WeightedPoset { poset, weights: WeightScheme::new(values, degree) }
}

/// One connected component of a point poset with its induced weights.
#[derive(Clone, Debug)]
pub struct Factor {
    pub poset: PointPosetWindow,
    pub weights: WeightScheme,
}

impl Factor {
    pub fn degree(&self) -> &Q {
        self.weights.degree()
    }
}

/// Splits a differential weighting into its connected factors. Each factor's
/// degree is the total weight of its minimal points.
pub fn factor(family: &WeightedPoset) -> Result<Vec<Factor>, FamilyError> {
    let report = check_local(&family.poset, &family.weights, OrphanMode::JoinOrphan)?;
    if !report.holds {
        return Err(FamilyError::NotDifferential(format!("{} failing identities", report.failures.len())));
    }
    let p = &family.poset;
    Ok(connected_components(p)
        .into_iter()
        .map(|component| {
            let lookup = |q| family.weights.weight(p.require(component.name(q)).expect("component point exists")).clone();
            let degree = component.minimal_points().into_iter().fold(Q::zero(), |acc, q| acc + lookup(q));
            let weights = WeightScheme::from_fn(&component, degree, lookup);
            Factor { poset: component, weights }
        })
        .collect())
}

/// Removes every point lying above a point of weight zero.
pub fn truncate_points(family: &WeightedPoset) -> WeightedPoset {
    let p = &family.poset;
    let zeros = p.points().filter(|&q| family.weights.weight(q).is_zero());
    let removed = p.up_set(zeros);
    let poset = p.restrict(|q| !removed.contains(&q));
    let weights = WeightScheme::from_fn(&poset, family.weights.degree().clone(), |q| {
        family.weights.weight(p.require(poset.name(q)).expect("kept point exists")).clone()
    });
    WeightedPoset { poset, weights }
}

/// Component label of every enumerated ideal under the relation generated by
/// covers of nonzero weight.
pub fn sim_components(lat: &IdealLattice, weights: &WeightScheme) -> Vec<usize> {
    let mut label = vec![usize::MAX; lat.len()];
    let mut next = 0;
    for start in 0..lat.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let neighbours = lat.up(i).iter().chain(lat.down(i));
            for &(j, q) in neighbours {
                if !weights.weight(q).is_zero() && label[j] == usize::MAX {
                    label[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    label
}

/// Closed under union and intersection (when enumerated) and under betweenness.
pub fn is_convex_sublattice(lat: &IdealLattice, members: &BTreeSet<usize>) -> bool {
    let member = |x: &Diagram| lat.index_of(x).map(|i| members.contains(&i));
    for &a in members {
        for &b in members {
            let (x, y) = (lat.ideal(a), lat.ideal(b));
            if member(&x.intersection(y)) == Some(false) || member(&x.union(y)) == Some(false) {
                return false;
            }
        }
    }
    // Betweenness: anything above a member and below a member is a member.
    let above = |seeds: &BTreeSet<usize>, step: &dyn Fn(usize) -> Vec<usize>| {
        let mut seen = seeds.clone();
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        while let Some(i) = queue.pop_front() {
            for j in step(i) {
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen
    };
    let up_closure = above(members, &|i| lat.up(i).iter().map(|&(j, _)| j).collect());
    let down_closure = above(members, &|i| lat.down(i).iter().map(|&(j, _)| j).collect());
    up_closure.intersection(&down_closure).all(|i| members.contains(i))
}

/// Compares the zero-free component of the empty ideal with the ideals of the
/// truncated point poset up to `n_max`, then checks the truncation is
/// differential and, when some weight vanished, positive.
pub fn truncate_lattice_check(family: &WeightedPoset, n_max: usize) -> Result<CheckReport, FamilyError> {
    let p = &family.poset;
    let lat = enumerate_ideals(p, n_max)?;
    let labels = sim_components(&lat, &family.weights);
    let truncated = truncate_points(family);
    let t_lat = enumerate_ideals(&truncated.poset, n_max)?;
    let truncated_ideals: BTreeSet<Vec<String>> =
        t_lat.ideals().iter().map(|x| names(&truncated.poset, x.points())).collect();

    let mut report = CheckReport::new();
    let indicator = |b: bool| if b { Q::one() } else { Q::zero() };
    for (i, x) in lat.ideals().iter().enumerate() {
        let ideal = names(p, x.points());
        let in_component = labels[i] == labels[0];
        let in_truncation = truncated_ideals.contains(&ideal);
        report.record(|| Site::Truncation { ideal: ideal.clone() }, indicator(in_component), indicator(in_truncation));
    }
    report = report.merge(check_global(&truncated.poset, &truncated.weights, n_max)?);

    if p.points().any(|q| family.weights.weight(q).is_zero()) {
        let w = &truncated.weights;
        for q in truncated.poset.points() {
            let name = truncated.poset.name(q).to_string();
            report.record(|| Site::Positive { point: name }, indicator(w.weight(q).is_positive()), Q::one());
        }
        report.record(|| Site::Positive { point: "r".into() }, indicator(w.degree().is_positive()), Q::one());
    }
    Ok(report)
}
