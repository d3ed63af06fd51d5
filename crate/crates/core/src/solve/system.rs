use super::SolveError;
use crate::poset::{neighborhood, PointId, PointPosetWindow};
use crate::rational::{self, Q};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// An unknown of a constraint system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Unknown {
    /// Weight of a point.
    Weight(PointId),
    /// The differential degree.
    Degree,
    /// Weight of the i-th edge of a graph.
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    /// Sorted by variable index, no zero coefficients.
    pub coeffs: Vec<(usize, Q)>,
    pub rhs: Q,
    pub label: String,
}

/// Linear equations over a named list of unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub variables: Vec<Unknown>,
    pub names: Vec<String>,
    pub rows: Vec<Row>,
}

impl LinearSystem {
    pub fn new(variables: Vec<Unknown>, names: Vec<String>) -> Self {
        assert_eq!(variables.len(), names.len());
        LinearSystem { variables, names, rows: Vec::new() }
    }

    pub fn index_of(&self, u: Unknown) -> Option<usize> {
        self.variables.iter().position(|&v| v == u)
    }

    /// Adds `Σ coeff·var = rhs`, merging repeated variables.
    pub fn push(&mut self, terms: impl IntoIterator<Item = (usize, Q)>, rhs: Q, label: impl Into<String>) {
        let mut merged: BTreeMap<usize, Q> = BTreeMap::new();
        for (v, c) in terms {
            assert!(v < self.variables.len(), "row references undeclared variable");
            *merged.entry(v).or_insert_with(Q::zero) += c;
        }
        let coeffs = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.rows.push(Row { coeffs, rhs, label: label.into() });
    }

    /// `lhs − rhs` of every row at the assignment `x`.
    pub fn residuals(&self, x: &[Q]) -> Vec<Q> {
        self.rows
            .iter()
            .map(|row| row.coeffs.iter().fold(Q::zero(), |acc, (v, c)| acc + c * &x[*v]) - &row.rhs)
            .collect()
    }

    pub fn is_satisfied(&self, x: &[Q]) -> bool {
        self.residuals(x).iter().all(Zero::is_zero)
    }
}

fn point_system(p: &PointPosetWindow) -> LinearSystem {
    let mut variables: Vec<Unknown> = p.points().map(Unknown::Weight).collect();
    let mut names: Vec<String> = p.points().map(|q| p.name(q).to_string()).collect();
    variables.push(Unknown::Degree);
    names.push("r".into());
    LinearSystem::new(variables, names)
}

/// Index of the degree unknown in systems built from a window.
pub fn degree_index(p: &PointPosetWindow) -> usize {
    p.len()
}

/// Minimal-point equation, the join-orphan equation at every interior point,
/// and `w(m⁻) = w(m⁺)` for every sibling of every interior point.
pub fn build_constraints(p: &PointPosetWindow) -> Result<LinearSystem, SolveError> {
    let mut sys = point_system(p);
    let degree = degree_index(p);
    let one = Q::one;
    let two = || rational::int(2);
    sys.push(
        p.minimal_points().into_iter().map(|q| (q.index(), one())).chain([(degree, -one())]),
        Q::zero(),
        "minimal",
    );
    for q in p.points().filter(|&q| p.is_interior(q)) {
        let nb = neighborhood(p, q)?;
        let orphans = nb.upward_orphans(p);
        sys.push(
            nb.c_minus.iter().chain(&orphans).map(|a| (a.index(), one())).chain([(q.index(), -two())]),
            Q::zero(),
            format!("orphan {}", p.name(q)),
        );
        for (&m, &(lo, hi)) in &nb.pairing {
            sys.push([(lo.index(), one()), (hi.index(), -one())], Q::zero(), format!("sibling {} of {}", p.name(m), p.name(q)));
        }
    }
    Ok(sys)
}

/// Minimal-point equation and every partition equation at every interior point.
/// Equivalent to the global condition without any positivity assumption.
pub fn build_partition_constraints(p: &PointPosetWindow) -> Result<LinearSystem, SolveError> {
    let mut sys = point_system(p);
    let degree = degree_index(p);
    sys.push(
        p.minimal_points().into_iter().map(|q| (q.index(), Q::one())).chain([(degree, -Q::one())]),
        Q::zero(),
        "minimal",
    );
    for q in p.points().filter(|&q| p.is_interior(q)) {
        let nb = neighborhood(p, q)?;
        let s = nb.siblings.len();
        for mask in 0..1u64 << s {
            let lower: Vec<PointId> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| nb.siblings[i]).collect();
            let upper: Vec<PointId> = (0..s).filter(|i| mask >> i & 1 == 0).map(|i| nb.siblings[i]).collect();
            if !lower.iter().all(|&b| nb.siblings.iter().all(|&a| !p.leq(a, b) || lower.contains(&a))) {
                continue;
            }
            let below = nb.c_minus.iter().filter(|&&a| !lower.iter().any(|&t| p.leq(a, t)));
            let above = nb.c_plus.iter().filter(|&&b| !upper.iter().any(|&t| p.leq(t, b)));
            sys.push(
                below.chain(above).map(|a| (a.index(), Q::one())).chain([(q.index(), -rational::int(2))]),
                Q::zero(),
                format!("partition {} / {mask:b}", p.name(q)),
            );
        }
    }
    Ok(sys)
}
