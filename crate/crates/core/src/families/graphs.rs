//! Families presented directly as weighted graded graphs.

use super::{make_point_poset, FamilyError, FamilyKind, FamilySpec, TwosBlock};
use crate::graph::{ElemId, GradedWeightedGraph, GraphBuilder};
use crate::lattice::enumerate_ideals;
use crate::rational::{self, Q};
use crate::solve::{positive_point, solve, LinearSystem, Positivity, Unknown};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A graded graph with its differential degree.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    pub graph: GradedWeightedGraph,
    pub degree: Q,
}

/// Graph presentation of any family. Distributive families become their ideal
/// lattice up to size `max_rank`.
pub fn make_graded_graph(spec: &FamilySpec) -> Result<WeightedGraph, FamilyError> {
    let max_rank = spec.max_rank;
    match &spec.kind {
        FamilyKind::ZChain => Ok(zchain_graph(max_rank, &Q::one())),
        FamilyKind::Twos(blocks) => twos_graph(blocks, max_rank),
        FamilyKind::Yf1 => Ok(yf1_graph(max_rank)),
        FamilyKind::Orthant(_) => Err(FamilyError::UnsupportedSpec(spec.kind.to_string())),
        _ => {
            let family = make_point_poset(spec)?;
            let lat = enumerate_ideals(&family.poset, max_rank as usize)?;
            let graph = GradedWeightedGraph::from_ideal_lattice(&family.poset, &family.weights, &lat);
            Ok(WeightedGraph { graph, degree: family.weights.degree().clone() })
        }
    }
}

/// The integers `−reach..=reach` with `w(i ⋖ i+1) = degree·i`.
pub fn zchain_graph(reach: u32, degree: &Q) -> WeightedGraph {
    let reach = i64::from(reach);
    let mut b = GraphBuilder::new();
    let ids: Vec<ElemId> = (-reach..=reach).map(|i| b.element(i.to_string(), i).expect("distinct integers")).collect();
    for (i, pair) in (-reach..).zip(ids.windows(2)) {
        b.edge(pair[0], pair[1], degree * rational::int(i));
    }
    WeightedGraph { graph: b.build().expect("chain is graded"), degree: degree.clone() }
}

/// The pattern repeated in both directions from rank 0 until ranks `±reach` are
/// covered. Joints are named by rank, diamond middles by rank plus `a`/`b`.
/// Edge weights are the least positive integer solution of the balance
/// equations with `r = 0` and equal opposite diamond sides.
pub fn twos_graph(blocks: &[TwosBlock], reach: u32) -> Result<WeightedGraph, FamilyError> {
    let reach = i64::from(reach);
    let height = |b: TwosBlock| if b == TwosBlock::Chain { 1 } else { 2 };
    // (bottom rank, block), upward from 0 then downward.
    let mut placed: Vec<(i64, TwosBlock)> = Vec::new();
    let mut bottom = 0;
    for &b in blocks.iter().cycle() {
        if bottom >= reach {
            break;
        }
        placed.push((bottom, b));
        bottom += height(b);
    }
    let mut top = 0;
    for &b in blocks.iter().rev().cycle() {
        if top <= -reach {
            break;
        }
        top -= height(b);
        placed.push((top, b));
    }
    placed.sort_by_key(|&(r, _)| r);

    let mut b = GraphBuilder::new();
    let mut joints: BTreeMap<i64, ElemId> = BTreeMap::new();
    let mut joint = |b: &mut GraphBuilder, rank: i64| *joints.entry(rank).or_insert_with(|| b.element(rank.to_string(), rank).expect("joint"));
    // (lower, upper) per edge, and the diamonds as edge-index quadruples.
    let mut edges: Vec<(ElemId, ElemId)> = Vec::new();
    let mut diamonds: Vec<[usize; 4]> = Vec::new();
    for &(r, block) in &placed {
        let lo = joint(&mut b, r);
        match block {
            TwosBlock::Chain => {
                let hi = joint(&mut b, r + 1);
                edges.push((lo, hi));
            }
            TwosBlock::Diamond => {
                let left = b.element(format!("{}a", r + 1), r + 1)?;
                let right = b.element(format!("{}b", r + 1), r + 1)?;
                let hi = joint(&mut b, r + 2);
                let e = edges.len();
                edges.extend([(lo, left), (lo, right), (left, hi), (right, hi)]);
                diamonds.push([e, e + 1, e + 2, e + 3]);
            }
        }
    }
    let min_rank = placed.first().map(|&(r, _)| r).unwrap_or(0);
    let max_rank = placed.iter().map(|&(r, blk)| r + height(blk)).max().unwrap_or(0);

    let vars: Vec<Unknown> = (0..edges.len()).map(Unknown::Edge).collect();
    let names: Vec<String> = (0..edges.len()).map(|i| format!("e{i}")).collect();
    let mut sys = LinearSystem::new(vars, names);
    let all_elements: BTreeSet<ElemId> = edges.iter().flat_map(|&(lo, hi)| [lo, hi]).collect();
    for e in all_elements {
        let terms: Vec<(usize, Q)> = edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(lo, hi))| {
                if lo == e {
                    Some((i, Q::one()))
                } else if hi == e {
                    Some((i, -Q::one()))
                } else {
                    None
                }
            })
            .collect();
        let has_up = edges.iter().any(|&(lo, _)| lo == e);
        let has_down = edges.iter().any(|&(_, hi)| hi == e);
        if has_up && has_down {
            sys.push(terms, Q::zero(), format!("balance {}", e.index()));
        }
    }
    for d in &diamonds {
        sys.push([(d[0], Q::one()), (d[3], -Q::one())], Q::zero(), "diamond sides");
        sys.push([(d[1], Q::one()), (d[2], -Q::one())], Q::zero(), "diamond sides");
    }
    let space = solve(&sys)?;
    let required: Vec<usize> = (0..edges.len()).collect();
    let weights = match positive_point(&space, &required) {
        Positivity::Witness(x) => x,
        Positivity::Absent(_) => return Err(FamilyError::Derivation("twos pattern has no positive balance".into())),
    };
    for (&(lo, hi), w) in edges.iter().zip(weights) {
        b.edge(lo, hi, w);
    }
    let graph = b.build()?;
    debug_assert!(graph.min_rank() == min_rank && graph.max_rank() == max_rank);
    Ok(WeightedGraph { graph, degree: Q::zero() })
}

/// Words of the Young–Fibonacci lattice by rank, each rank sorted. Rank `n + 1`
/// holds `1x` for every `x` of rank `n` and `2y` for every `y` of rank `n − 1`.
pub fn yf1_words(max_rank: u32) -> Vec<Vec<String>> {
    let mut ranks: Vec<Vec<String>> = vec![vec![String::new()]];
    for n in 1..=max_rank as usize {
        let mut level: Vec<String> = ranks[n - 1].iter().map(|x| format!("1{x}")).collect();
        if n >= 2 {
            level.extend(ranks[n - 2].iter().map(|y| format!("2{y}")));
        }
        level.sort();
        ranks.push(level);
    }
    ranks
}

fn yf1_name(word: &str) -> String {
    if word.is_empty() {
        "∅".into()
    } else {
        word.to_string()
    }
}

/// Young–Fibonacci lattice up to `max_rank`, built by reflection-extension:
/// `1x` covers only `x`, and `2y` covers every element covering `y`. All
/// weights 1, `r = 1`.
pub fn yf1_graph(max_rank: u32) -> WeightedGraph {
    let words = yf1_words(max_rank);
    let mut b = GraphBuilder::new().with_bottom();
    let mut ids: BTreeMap<String, ElemId> = BTreeMap::new();
    for (n, level) in words.iter().enumerate() {
        for w in level {
            ids.insert(w.clone(), b.element(yf1_name(w), n as i64).expect("distinct words"));
        }
    }
    let mut up: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for level in words.iter().skip(1) {
        for w in level {
            let lower: Vec<String> = match w.strip_prefix('1') {
                Some(x) => vec![x.to_string()],
                None => up.get(&w[1..]).cloned().unwrap_or_default(),
            };
            for x in lower {
                up.entry(x.clone()).or_default().push(w.clone());
                b.edge(ids[&x], ids[w], Q::one());
            }
        }
    }
    WeightedGraph { graph: b.build().expect("YF graph is graded"), degree: Q::one() }
}
