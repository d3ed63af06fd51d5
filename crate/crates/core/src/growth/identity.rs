//! `n!·rⁿ = Σ f(x)·F(x)` over the elements of rank `n`, where `f` counts paths
//! from the bottom and `F` counts them with multiplicity the product of their
//! weights. For an ideal lattice `F = f·c`, giving `Σ f(x)²c(x)`.

use super::GrowthError;
use crate::graph::GradedWeightedGraph;
use crate::rational::{self, Q};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    #[serde(with = "rational::as_string")]
    pub lhs: Q,
    #[serde(with = "rational::as_string")]
    pub rhs: Q,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn counts(g: &GradedWeightedGraph, weighted: bool) -> Vec<Q> {
    let mut f = vec![Q::zero(); g.len()];
    let Some(bottom) = g.zero_hat() else { return f };
    f[bottom.index()] = Q::one();
    for rank in g.min_rank() + 1..=g.max_rank() {
        for &x in g.at_rank(rank) {
            f[x.index()] = g
                .down(x)
                .iter()
                .map(|(y, w)| if weighted { &f[y.index()] * w } else { f[y.index()].clone() })
                .sum();
        }
    }
    f
}

/// Paths from the bottom to each element.
pub fn path_counts(g: &GradedWeightedGraph) -> Vec<Q> {
    counts(g, false)
}

/// Paths from the bottom weighted by the product of their cover weights.
pub fn colored_path_counts(g: &GradedWeightedGraph) -> Vec<Q> {
    counts(g, true)
}

pub fn verify_identity(g: &GradedWeightedGraph, degree: &Q, n: usize) -> Result<IdentityReport, GrowthError> {
    if g.zero_hat().is_none() {
        return Err(GrowthError::Ineligible("no bottom element".into()));
    }
    if n as i64 > g.max_rank() - g.min_rank() {
        return Err(GrowthError::WindowTooShallow { requested: n, available: g.max_rank() });
    }
    let plain = path_counts(g);
    let colored = colored_path_counts(g);
    let rank = g.min_rank() + n as i64;
    let rhs: Q = g.at_rank(rank).iter().map(|x| &plain[x.index()] * &colored[x.index()]).sum();
    let factorial: Q = (1..=n as i64).map(rational::int).product();
    let lhs = factorial * num_traits::pow(degree.clone(), n);
    Ok(IdentityReport { n, matches: lhs == rhs, lhs, rhs })
}
