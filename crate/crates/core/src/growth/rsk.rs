//! Colored growth diagrams.
//!
//! The diagram is a square of elements `e[i][j]`, `0 ≤ i, j ≤ n`, with the
//! bottom along the left and lower edges. Edges along rows (increasing `i`)
//! carry colors, edges along columns do not. The row `j = n` is the colored
//! tableau, the column `i = n` the plain one.

use super::mclarnan::{multiplicity, DomainItem, McLarnanMap, UpEdge};
use super::GrowthError;
use crate::graph::{ElemId, GradedWeightedGraph};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColoredPermutation {
    /// Values `1..=n`; position `i` maps to `perm[i]`.
    pub perm: Vec<u32>,
    /// Colors `1..=r`, one per position.
    pub colors: Vec<u32>,
}

impl ColoredPermutation {
    pub fn new(perm: Vec<u32>, colors: Vec<u32>, degree: u32) -> Result<Self, GrowthError> {
        let n = perm.len();
        if colors.len() != n {
            return Err(GrowthError::InvalidPermutation(format!("{} values but {} colors", n, colors.len())));
        }
        let mut seen = vec![false; n + 1];
        for &v in &perm {
            if v == 0 || v as usize > n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(GrowthError::InvalidPermutation(format!("{perm:?} is not a permutation of 1..{n}")));
            }
        }
        if let Some(c) = colors.iter().find(|&&c| c == 0 || c > degree) {
            return Err(GrowthError::InvalidPermutation(format!("color {c} outside 1..{degree}")));
        }
        Ok(ColoredPermutation { perm, colors })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }
}

/// A path from the bottom, optionally with a color per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathTableau {
    pub chain: Vec<ElemId>,
    pub edge_colors: Option<Vec<u32>>,
}

impl PathTableau {
    pub fn shape(&self) -> ElemId {
        *self.chain.last().expect("paths start at the bottom")
    }

    pub fn names(&self, g: &GradedWeightedGraph) -> Vec<String> {
        self.chain.iter().map(|&e| g.name(e).to_string()).collect()
    }

    /// Checks covers, start at the bottom, and colors within weights.
    pub fn validate(&self, g: &GradedWeightedGraph) -> Result<(), GrowthError> {
        let bottom = g.zero_hat().ok_or_else(|| GrowthError::Ineligible("no bottom element".into()))?;
        if self.chain.first() != Some(&bottom) {
            return Err(GrowthError::NotAPath("does not start at the bottom".into()));
        }
        for (k, pair) in self.chain.windows(2).enumerate() {
            let w = g
                .weight(pair[0], pair[1])
                .ok_or_else(|| GrowthError::NotAPath(format!("{} does not cover {}", g.name(pair[1]), g.name(pair[0]))))?;
            if let Some(colors) = &self.edge_colors {
                let c = *colors.get(k).ok_or_else(|| GrowthError::InvalidColoring("missing step color".into()))?;
                if c == 0 || c > multiplicity(w) {
                    return Err(GrowthError::InvalidColoring(format!("color {c} on a cover of weight {}", multiplicity(w))));
                }
            }
        }
        if let Some(colors) = &self.edge_colors {
            if colors.len() + 1 != self.chain.len() {
                return Err(GrowthError::InvalidColoring("one color per step expected".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RskOutput {
    /// Carries the colors.
    pub colored: PathTableau,
    pub plain: PathTableau,
}

impl RskOutput {
    pub fn shape(&self) -> ElemId {
        self.colored.shape()
    }
}

fn intersect_sorted(a: &[(ElemId, crate::Q)], b: &[(ElemId, crate::Q)]) -> Vec<ElemId> {
    a.iter().filter(|(e, _)| b.iter().any(|(f, _)| f == e)).map(|(e, _)| *e).collect()
}

/// `(t, color of t→u)` over common lower covers `t` of `u` and `v`.
fn down_up_paths(g: &GradedWeightedGraph, u: ElemId, v: ElemId) -> Vec<(ElemId, u32)> {
    intersect_sorted(g.down(u), g.down(v))
        .into_iter()
        .flat_map(|t| (1..=multiplicity(g.weight(t, u).expect("cover"))).map(move |c| (t, c)))
        .collect()
}

/// `(x, color of v→x)` over common upper covers `x` of `u` and `v`.
fn up_down_paths(g: &GradedWeightedGraph, u: ElemId, v: ElemId) -> Vec<(ElemId, u32)> {
    intersect_sorted(g.up(u), g.up(v))
        .into_iter()
        .flat_map(|x| (1..=multiplicity(g.weight(v, x).expect("cover"))).map(move |c| (x, c)))
        .collect()
}

fn pairing_error(g: &GradedWeightedGraph, u: ElemId, v: ElemId, a: usize, b: usize) -> GrowthError {
    GrowthError::PairingMismatch { lower: g.name(u).to_string(), upper: g.name(v).to_string(), down_up: a, up_down: b }
}

/// Top-right corner of a cell from its other three corners.
/// `bottom` is the color of `t→u`, `mark` the color of a permutation entry.
fn grow(
    g: &GradedWeightedGraph,
    m: &McLarnanMap,
    (t, u, v): (ElemId, ElemId, ElemId),
    bottom: Option<u32>,
    mark: Option<u32>,
) -> Result<(ElemId, Option<u32>), GrowthError> {
    let missing = || GrowthError::NotBijective(g.name(t).to_string());
    Ok(match (t == u, t == v) {
        (true, true) => match mark {
            Some(k) => {
                let e = m.apply(t, DomainItem::Symbol(k)).ok_or_else(missing)?;
                (e.upper, Some(e.color))
            }
            None => (t, None),
        },
        (true, false) => (v, None),
        (false, true) => (u, bottom),
        (false, false) if u == v => {
            let item = DomainItem::Down { lower: t, color: bottom.expect("covers carry colors") };
            let e = m.apply(u, item).ok_or_else(|| GrowthError::NotBijective(g.name(u).to_string()))?;
            (e.upper, Some(e.color))
        }
        (false, false) => {
            let a = down_up_paths(g, u, v);
            let b = up_down_paths(g, u, v);
            if a.len() != b.len() {
                return Err(pairing_error(g, u, v, a.len(), b.len()));
            }
            let k = a.iter().position(|&p| p == (t, bottom.expect("covers carry colors"))).ok_or_else(missing)?;
            let (x, c) = b[k];
            (x, Some(c))
        }
    })
}

/// Inverse of [`grow`]: bottom-left corner, color of `t→u`, and mark.
#[allow(clippy::type_complexity)]
fn shrink(
    g: &GradedWeightedGraph,
    m: &McLarnanMap,
    (x, u, v): (ElemId, ElemId, ElemId),
    top: Option<u32>,
) -> Result<(ElemId, Option<u32>, Option<u32>), GrowthError> {
    Ok(match (x == u, x == v) {
        (true, true) => (x, None, None),
        (false, true) => (u, None, None),
        (true, false) => (v, top, None),
        (false, false) if u == v => {
            let edge = UpEdge { upper: x, color: top.expect("covers carry colors") };
            match m.invert(u, edge).ok_or_else(|| GrowthError::NotBijective(g.name(u).to_string()))? {
                DomainItem::Symbol(k) => (u, None, Some(k)),
                DomainItem::Down { lower, color } => (lower, Some(color), None),
            }
        }
        (false, false) => {
            let a = down_up_paths(g, u, v);
            let b = up_down_paths(g, u, v);
            if a.len() != b.len() {
                return Err(pairing_error(g, u, v, a.len(), b.len()));
            }
            let k = b
                .iter()
                .position(|&p| p == (x, top.expect("covers carry colors")))
                .ok_or_else(|| GrowthError::NotBijective(g.name(x).to_string()))?;
            let (t, c) = a[k];
            (t, Some(c), None)
        }
    })
}

/// Grows the diagram of a colored permutation.
pub fn rsk_forward(g: &GradedWeightedGraph, m: &McLarnanMap, sigma: &ColoredPermutation) -> Result<RskOutput, GrowthError> {
    let n = sigma.len();
    let bottom = g.zero_hat().ok_or_else(|| GrowthError::Ineligible("no bottom element".into()))?;
    if n as i64 > g.max_rank() {
        return Err(GrowthError::WindowTooShallow { requested: n, available: g.max_rank() });
    }
    // e[i][j], and colors of the row edge into e[i][j] (from e[i-1][j]).
    let mut e = vec![vec![bottom; n + 1]; n + 1];
    let mut color = vec![vec![None; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            let mark = (sigma.perm[i - 1] as usize == j).then(|| sigma.colors[i - 1]);
            let corners = (e[i - 1][j - 1], e[i][j - 1], e[i - 1][j]);
            let (x, c) = grow(g, m, corners, color[i][j - 1], mark)?;
            e[i][j] = x;
            color[i][j] = c;
        }
    }
    let colored = PathTableau {
        chain: (0..=n).map(|i| e[i][n]).collect(),
        edge_colors: Some((1..=n).map(|i| color[i][n].expect("the top row rises at every step")).collect()),
    };
    let plain = PathTableau { chain: (0..=n).map(|j| e[n][j]).collect(), edge_colors: None };
    Ok(RskOutput { colored, plain })
}

/// Shrinks a pair of tableaux with a common shape back to a colored permutation.
pub fn rsk_inverse(
    g: &GradedWeightedGraph,
    m: &McLarnanMap,
    colored: &PathTableau,
    plain: &PathTableau,
) -> Result<ColoredPermutation, GrowthError> {
    colored.validate(g)?;
    plain.validate(g)?;
    let colors = colored.edge_colors.as_ref().ok_or_else(|| GrowthError::InvalidColoring("colored tableau has no colors".into()))?;
    if colored.shape() != plain.shape() || colored.chain.len() != plain.chain.len() {
        return Err(GrowthError::ShapeMismatch(g.name(colored.shape()).into(), g.name(plain.shape()).into()));
    }
    let n = colored.chain.len() - 1;
    let bottom = g.zero_hat().expect("validated");
    let mut e = vec![vec![bottom; n + 1]; n + 1];
    let mut color = vec![vec![None; n + 1]; n + 1];
    for (i, (&c, &p)) in colored.chain.iter().zip(&plain.chain).enumerate() {
        e[i][n] = c;
        e[n][i] = p;
    }
    for i in 1..=n {
        color[i][n] = Some(colors[i - 1]);
    }
    let mut perm = vec![0u32; n];
    let mut perm_colors = vec![0u32; n];
    for i in (1..=n).rev() {
        for j in (1..=n).rev() {
            let (t, c, mark) = shrink(g, m, (e[i][j], e[i][j - 1], e[i - 1][j]), color[i][j])?;
            e[i - 1][j - 1] = t;
            color[i][j - 1] = c;
            if let Some(k) = mark {
                if perm[i - 1] != 0 {
                    return Err(GrowthError::InvalidPermutation(format!("two marks in column {i}")));
                }
                perm[i - 1] = j as u32;
                perm_colors[i - 1] = k;
            }
        }
    }
    if perm.contains(&0) {
        return Err(GrowthError::InvalidPermutation("some column has no mark".into()));
    }
    ColoredPermutation::new(perm, perm_colors, m.degree())
}

/// Every permutation of `1..=n` with every coloring in `1..=degree`, in
/// lexicographic order.
pub fn all_colored_permutations(n: usize, degree: u32) -> Vec<ColoredPermutation> {
    fn perms(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32 + 1);
                perms(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut ps = Vec::new();
    perms(&mut Vec::new(), &mut vec![false; n], &mut ps);
    let radix = vec![degree; n];
    let colorings: Vec<Vec<u32>> = (0..(degree as usize).pow(n as u32)).map(|code| mixed_radix(code, &radix)).collect();
    let mut out: Vec<ColoredPermutation> = ps
        .iter()
        .flat_map(|p| colorings.iter().map(move |c| ColoredPermutation { perm: p.clone(), colors: c.clone() }))
        .collect();
    out.sort();
    out
}

/// Every path from the bottom to an element of rank `n`.
pub fn enumerate_paths(g: &GradedWeightedGraph, n: usize) -> Vec<PathTableau> {
    let Some(bottom) = g.zero_hat() else { return Vec::new() };
    let mut layer = vec![vec![bottom]];
    for _ in 0..n {
        layer = layer
            .into_iter()
            .flat_map(|chain| {
                let last = *chain.last().expect("nonempty");
                g.up(last).iter().map(move |(next, _)| {
                    let mut c = chain.clone();
                    c.push(*next);
                    c
                }).collect::<Vec<_>>()
            })
            .collect();
    }
    layer.into_iter().map(|chain| PathTableau { chain, edge_colors: None }).collect()
}

/// Every path of length `n` with every coloring of its steps.
pub fn enumerate_colored_paths(g: &GradedWeightedGraph, n: usize) -> Vec<PathTableau> {
    let mut out = Vec::new();
    for path in enumerate_paths(g, n) {
        let limits: Vec<u32> =
            path.chain.windows(2).map(|p| multiplicity(g.weight(p[0], p[1]).expect("cover"))).collect();
        let total: usize = limits.iter().map(|&l| l as usize).product();
        for code in 0..total {
            out.push(PathTableau { chain: path.chain.clone(), edge_colors: Some(mixed_radix(code, &limits)) });
        }
    }
    out
}

/// Digits of `code` in the mixed radix `limits`, most significant first, each shifted to start at 1.
fn mixed_radix(mut code: usize, limits: &[u32]) -> Vec<u32> {
    let mut digits = vec![0; limits.len()];
    for (d, &l) in digits.iter_mut().zip(limits).rev() {
        *d = (code % l as usize) as u32 + 1;
        code /= l as usize;
    }
    digits
}
