//! A small dense two-phase simplex over exact rationals (Bland's rule).

use crate::rational::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal `y` with the final basis (column indices, one per kept row).
    Optimal { y: Vec<Q>, basis: Vec<usize>, value: Q },
    /// `y ≥ 0`, `A y = 0`, `c·y > 0`.
    Unbounded { ray: Vec<Q> },
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Q::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the columns allowed to enter. Returns the entering
    /// column of an unbounded direction, if any.
    fn optimize(&mut self, obj: &[Q], allowed: impl Fn(usize) -> bool) -> Option<usize> {
        loop {
            let entering = (0..self.width).filter(|&j| allowed(j) && !self.basis.contains(&j)).find(|&j| {
                let reduced = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(obj[j].clone(), |acc, (i, &b)| acc - &obj[b] * &self.rows[i][j]);
                reduced.is_positive()
            });
            let j = entering?;
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Some(j),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Q> {
        let mut y = vec![Q::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                y[b] = self.rhs(i).clone();
            }
        }
        y
    }
}

/// Maximizes `c·y` subject to `A y = b`, `y ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), width };

    let phase_one: Vec<Q> = (0..width).map(|j| if j >= n { -Q::one() } else { Q::zero() }).collect();
    t.optimize(&phase_one, |_| true);
    if (0..m).any(|i| t.basis[i] >= n && !t.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let phase_two: Vec<Q> = (0..width).map(|j| if j < n { c[j].clone() } else { Q::zero() }).collect();
    if let Some(j) = t.optimize(&phase_two, |j| j < n) {
        let mut ray = vec![Q::zero(); n];
        ray[j] = Q::one();
        for (i, &bcol) in t.basis.iter().enumerate() {
            if bcol < n {
                ray[bcol] = -t.rows[i][j].clone();
            }
        }
        return LpOutcome::Unbounded { ray };
    }
    let y = t.solution(n);
    let value = y.iter().zip(c).fold(Q::zero(), |acc, (yi, ci)| acc + yi * ci);
    LpOutcome::Optimal { y, basis: t.basis.clone(), value }
}
