//! Sparse exact Gauss–Jordan elimination.

use super::system::{LinearSystem, Unknown};
use super::SolveError;
use crate::poset::PointPosetWindow;
use crate::rational::Q;
use crate::weights::WeightScheme;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

type Sparse = BTreeMap<usize, Q>;

/// `particular + span(basis)`, together with the reduced rows describing it.
#[derive(Clone, Debug)]
pub struct AffineSolutionSpace {
    pub variables: Vec<Unknown>,
    pub names: Vec<String>,
    pub particular: Vec<Q>,
    pub basis: Vec<Vec<Q>>,
    /// (pivot variable, coefficients on free variables, rhs)
    reduced: Vec<(usize, Sparse, Q)>,
}

/// A combination of input rows whose coefficients cancel but whose right-hand
/// sides do not: `Σ multiplier·row` reads `0 = rhs` with `rhs ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<(usize, Q)>,
    pub rhs: Q,
}

impl InfeasibilityCertificate {
    /// Re-derives `0 = rhs` from the system's rows.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        let mut acc: Sparse = BTreeMap::new();
        let mut rhs = Q::zero();
        for (i, m) in &self.multipliers {
            for (v, c) in &sys.rows[*i].coeffs {
                *acc.entry(*v).or_insert_with(Q::zero) += m * c;
            }
            rhs += m * &sys.rows[*i].rhs;
        }
        acc.values().all(Zero::is_zero) && rhs == self.rhs && !rhs.is_zero()
    }
}

fn axpy(target: &mut Sparse, factor: &Q, source: &Sparse) {
    for (k, v) in source {
        let entry = target.entry(*k).or_insert_with(Q::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Solves exactly; fails with a certificate when the rows are inconsistent.
pub fn solve(sys: &LinearSystem) -> Result<AffineSolutionSpace, SolveError> {
    let n = sys.variables.len();
    struct WorkRow {
        coeffs: Sparse,
        rhs: Q,
        origin: Sparse,
    }
    let mut rows: Vec<WorkRow> = sys
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| WorkRow {
            coeffs: r.coeffs.iter().cloned().collect(),
            rhs: r.rhs.clone(),
            origin: BTreeMap::from([(i, Q::one())]),
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let candidate = (rank..rows.len())
            .filter(|&i| rows[i].coeffs.contains_key(&col))
            .min_by_key(|&i| rows[i].coeffs.len());
        let Some(pr) = candidate else { continue };
        rows.swap(rank, pr);
        let inv = Q::one() / &rows[rank].coeffs[&col];
        {
            let row = &mut rows[rank];
            for v in row.coeffs.values_mut() {
                *v *= &inv;
            }
            row.rhs *= &inv;
            for v in row.origin.values_mut() {
                *v *= &inv;
            }
        }
        let (pivot_coeffs, pivot_rhs, pivot_origin) =
            (rows[rank].coeffs.clone(), rows[rank].rhs.clone(), rows[rank].origin.clone());
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            if let Some(f) = row.coeffs.get(&col).cloned() {
                axpy(&mut row.coeffs, &f, &pivot_coeffs);
                row.rhs -= &f * &pivot_rhs;
                axpy(&mut row.origin, &f, &pivot_origin);
            }
        }
        pivots.push(col);
        rank += 1;
    }

    if let Some(bad) = rows[rank..].iter().find(|r| !r.rhs.is_zero()) {
        return Err(SolveError::Infeasible(InfeasibilityCertificate {
            multipliers: bad.origin.iter().map(|(k, v)| (*k, v.clone())).collect(),
            rhs: bad.rhs.clone(),
        }));
    }

    let is_pivot: Vec<bool> = (0..n).map(|c| pivots.contains(&c)).collect();
    let mut particular = vec![Q::zero(); n];
    let mut reduced = Vec::new();
    for (i, &col) in pivots.iter().enumerate() {
        particular[col] = rows[i].rhs.clone();
        let free: Sparse = rows[i].coeffs.iter().filter(|(k, _)| **k != col).map(|(k, v)| (*k, v.clone())).collect();
        reduced.push((col, free, rows[i].rhs.clone()));
    }
    let basis = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (col, free, _) in &reduced {
                if let Some(c) = free.get(&f) {
                    v[*col] = -c.clone();
                }
            }
            v
        })
        .collect();
    Ok(AffineSolutionSpace { variables: sys.variables.clone(), names: sys.names.clone(), particular, basis, reduced })
}

impl AffineSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.particular.iter().all(Zero::is_zero)
    }

    /// `particular + Σ coeffs[i]·basis[i]`.
    pub fn member(&self, coeffs: &[Q]) -> Vec<Q> {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut x = self.particular.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.variables.len()
            && self.reduced.iter().all(|(col, free, rhs)| {
                free.iter().fold(x[*col].clone(), |acc, (k, c)| acc + c * &x[*k]) == *rhs
            })
    }

    pub fn index_of(&self, u: Unknown) -> Option<usize> {
        self.variables.iter().position(|&v| v == u)
    }

    /// Reads point weights and degree out of an assignment of a window system.
    pub fn weight_scheme(&self, p: &PointPosetWindow, x: &[Q]) -> WeightScheme {
        let degree = self.index_of(Unknown::Degree).map(|i| x[i].clone()).unwrap_or_else(Q::zero);
        WeightScheme::from_fn(p, degree, |q| {
            self.index_of(Unknown::Weight(q)).map(|i| x[i].clone()).unwrap_or_else(Q::zero)
        })
    }
}
