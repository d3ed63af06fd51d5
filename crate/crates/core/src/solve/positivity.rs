//! Strictly positive points of a solution space, or a certificate that none exist.
//!
//! With `x = s·particular + Σ t_k basis_k`, positivity of the required
//! coordinates is the feasibility of `R u ≥ 1` in `u = (t, s)`. The minimum of
//! `Σ R_i u` over that region is found through its dual
//! `max 1·y, Rᵀy = Σ R_i, y ≥ 0`, which is always feasible at `y = 1`; the dual
//! is unbounded exactly when no positive point exists, and its ray is the certificate.

use super::linalg::{solve, AffineSolutionSpace};
use super::lp::{maximize, LpOutcome};
use super::system::{LinearSystem, Unknown};
use crate::poset::PointPosetWindow;
use crate::rational::{self, Q};
use crate::weights::WeightScheme;
use num_traits::{One, Signed, Zero};

/// Nonnegative multipliers with `Σ multiplier·x_var = value ≤ 0` on the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub multipliers: Vec<(usize, Q)>,
    pub value: Q,
}

impl PositivityCertificate {
    pub fn verify(&self, space: &AffineSolutionSpace) -> bool {
        let nonneg = self.multipliers.iter().all(|(_, m)| !m.is_negative());
        let nontrivial = self.multipliers.iter().any(|(_, m)| m.is_positive());
        let pairing = |v: &[Q]| self.multipliers.iter().fold(Q::zero(), |acc, (i, m)| acc + m * &v[*i]);
        nonneg
            && nontrivial
            && space.basis.iter().all(|b| pairing(b).is_zero())
            && pairing(&space.particular) == self.value
            && !self.value.is_positive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// Positive on every required coordinate; the minimal-sum point with all
    /// required coordinates at least 1, rescaled to primitive integers when the
    /// space is a cone.
    Witness(Vec<Q>),
    Absent(PositivityCertificate),
}

impl Positivity {
    pub fn witness(&self) -> Option<&[Q]> {
        match self {
            Positivity::Witness(x) => Some(x),
            Positivity::Absent(_) => None,
        }
    }
}

/// Searches the space for a point positive on every index in `required`.
pub fn positive_point(space: &AffineSolutionSpace, required: &[usize]) -> Positivity {
    let d = space.dimension();
    let homogeneous = space.is_homogeneous();
    let width = if homogeneous { d } else { d + 1 };
    let mut rows: Vec<Vec<Q>> = required
        .iter()
        .map(|&i| {
            let mut r: Vec<Q> = space.basis.iter().map(|b| b[i].clone()).collect();
            if !homogeneous {
                r.push(space.particular[i].clone());
            }
            r
        })
        .collect();
    if !homogeneous {
        let mut s_row = vec![Q::zero(); width];
        s_row[d] = Q::one();
        rows.push(s_row);
    }
    let q = rows.len();
    let column_sums: Vec<Q> = (0..width).map(|k| rows.iter().fold(Q::zero(), |acc, r| acc + &r[k])).collect();
    let transposed: Vec<Vec<Q>> = (0..width).map(|k| rows.iter().map(|r| r[k].clone()).collect()).collect();
    let ones = vec![Q::one(); q];

    match maximize(&transposed, &column_sums, &ones) {
        LpOutcome::Unbounded { ray } => {
            let multipliers: Vec<(usize, Q)> =
                required.iter().zip(&ray).filter(|(_, y)| !y.is_zero()).map(|(&i, y)| (i, y.clone())).collect();
            let value = if homogeneous { Q::zero() } else { -ray[q - 1].clone() };
            Positivity::Absent(PositivityCertificate { multipliers, value })
        }
        LpOutcome::Optimal { basis, .. } => {
            let u = solve_tight(&rows, &basis, width);
            debug_assert!(rows.iter().all(|r| dot(r, &u) >= Q::one()));
            let (t, s) = if homogeneous { (&u[..], Q::one()) } else { (&u[..d], u[d].clone()) };
            let mut x: Vec<Q> = space.particular.iter().map(|v| v * &s).collect();
            for (tk, b) in t.iter().zip(&space.basis) {
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += tk * bi;
                }
            }
            if homogeneous {
                x = rational::primitive(&x);
            } else {
                x = x.into_iter().map(|v| v / &s).collect();
            }
            Positivity::Witness(x)
        }
        LpOutcome::Infeasible => unreachable!("the all-ones vector is dual feasible"),
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Any `u` with `rows[i]·u = 1` for every basic row `i`.
fn solve_tight(rows: &[Vec<Q>], basis: &[usize], width: usize) -> Vec<Q> {
    let vars: Vec<Unknown> = (0..width).map(Unknown::Edge).collect();
    let names: Vec<String> = (0..width).map(|k| format!("u{k}")).collect();
    let mut sys = LinearSystem::new(vars, names);
    for &i in basis {
        sys.push(rows[i].iter().cloned().enumerate(), Q::one(), format!("tight {i}"));
    }
    solve(&sys).expect("basic rows of an optimal dual basis are independent").particular
}

/// Positive point weights and degree on a window system, or a certificate.
pub fn positivity_witness(space: &AffineSolutionSpace, p: &PointPosetWindow) -> Result<WeightScheme, PositivityCertificate> {
    let required: Vec<usize> = space
        .variables
        .iter()
        .enumerate()
        .filter(|(_, u)| matches!(u, Unknown::Weight(_) | Unknown::Degree))
        .map(|(i, _)| i)
        .collect();
    match positive_point(space, &required) {
        Positivity::Witness(x) => Ok(space.weight_scheme(p, &x)),
        Positivity::Absent(c) => Err(c),
    }
}
