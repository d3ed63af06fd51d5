mod common;

use common::{family, graph, grid_coords, q};
use fomin_core::families::{factor, is_convex_sublattice, product, scale, sim_components, truncate_points, WeightedPoset};
use fomin_core::growth::{canonical_mclarnan, rsk_forward, rsk_inverse, ColoredPermutation};
use fomin_core::lattice::enumerate_ideals;
use fomin_core::rational::{self, Q};
use fomin_core::solve::{build_constraints, solve};
use fomin_core::verify::{check_all_partitions, check_global_interior, check_local, OrphanMode, WeightScheme};
use num_traits::Signed;
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

const FAMILIES: [&str; 5] = ["quadrant", "octant", "strip:2", "strip:3", "chain"];

fn small_rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rational::frac(n, d))
}

fn assignment(w: &WeightScheme) -> Vec<Q> {
    let mut x = w.values().to_vec();
    x.push(w.degree().clone());
    x
}

fn local_and_global(fam: &WeightedPoset) -> [bool; 4] {
    let (p, w) = (&fam.poset, &fam.weights);
    [
        check_global_interior(p, w).holds,
        check_local(p, w, OrphanMode::JoinOrphan).unwrap().holds,
        check_local(p, w, OrphanMode::MeetOrphan).unwrap().holds,
        check_all_partitions(p, w, 0).unwrap().holds,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solution_space_members_pass_the_verifier(
        which in 0usize..4,
        coeffs in proptest::collection::vec(small_rational(), 2),
    ) {
        let fam = family(FAMILIES[which], 5);
        let space = solve(&build_constraints(&fam.poset).unwrap()).unwrap();
        let x = space.member(&coeffs[..space.dimension()]);
        let w = space.weight_scheme(&fam.poset, &x);
        let member = WeightedPoset { poset: fam.poset.clone(), weights: w };
        prop_assert_eq!(local_and_global(&member), [true; 4]);
    }

    #[test]
    fn linear_combinations_stay_in_the_space(which in 0usize..5, a in small_rational(), b in small_rational()) {
        let fam = family(FAMILIES[which], 5);
        let space = solve(&build_constraints(&fam.poset).unwrap()).unwrap();
        let canonical = assignment(&fam.weights);
        let other = space.member(&vec![q(1); space.dimension()]);
        let mix: Vec<Q> = canonical.iter().zip(&other).map(|(u, v)| &a * u + &b * v).collect();
        prop_assert!(space.contains(&mix));
        // a second positive member: step from the canonical point along the homogeneous part
        let smallest = canonical.iter().min().unwrap().clone();
        let step = other.iter().zip(&space.particular).map(|(o, base)| (o - base).abs()).max().unwrap() + q(1);
        let nudged: Vec<Q> =
            canonical.iter().zip(&other).zip(&space.particular).map(|((u, o), base)| u + &smallest * (o - base) / (&step * q(2))).collect();
        let cone: Vec<Q> = canonical.iter().zip(&nudged).map(|(u, v)| a.abs() * u + (b.abs() + q(1)) * v).collect();
        prop_assert!(cone.iter().all(|v| v > &q(0)));
        prop_assert!(space.contains(&cone));
    }

    #[test]
    fn perturbations_break_every_form_together(
        which in 0usize..3,
        rank in 4u32..=6,
        hits in proptest::collection::vec((0usize..64, small_rational()), 1..3),
        degree_shift in proptest::option::of(small_rational()),
    ) {
        let mut fam = family(["quadrant", "octant", "strip:2"][which], rank);
        let n = fam.poset.len();
        for (i, delta) in &hits {
            let pt = fomin_core::poset::PointId::from_index(i % n);
            let v = fam.weights.weight(pt) + delta;
            fam.weights.set(pt, v);
        }
        if let Some(shift) = degree_shift {
            let d = fam.weights.degree() + shift;
            fam.weights.set_degree(d);
        }
        let verdicts = local_and_global(&fam);
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]), "{:?}", verdicts);
    }

    #[test]
    fn product_then_factor_recovers_the_factors(
        first in 0usize..5,
        second in 0usize..5,
        k in (1i64..=3, 1i64..=2).prop_map(|(n, d)| rational::frac(n, d)),
    ) {
        let a = scale(&family(FAMILIES[first], 4), &k);
        let b = family(FAMILIES[second], 4);
        let parts = factor(&product(&[a.clone(), b.clone()])).unwrap();
        prop_assert_eq!(parts.len(), 2);
        let recovered: BTreeSet<(Q, Vec<Q>)> =
            parts.iter().map(|f| (f.degree().clone(), f.weights.values().to_vec())).collect();
        let original: BTreeSet<(Q, Vec<Q>)> = [a, b]
            .iter()
            .map(|f| (f.weights.degree().clone(), f.weights.values().to_vec()))
            .collect();
        prop_assert_eq!(recovered, original);
    }

    #[test]
    fn truncation_is_idempotent(base in 1i64..=3, slope in 0i64..=2, drop_corner in any::<bool>()) {
        let y = family("quadrant", 5);
        let p = &y.poset;
        let mut weights = WeightScheme::from_fn(p, q(base), |pt| {
            let c = grid_coords(p.name(pt));
            q(base + slope * (c[0] - c[1]))
        });
        if drop_corner {
            weights.set(p.require("2,0").unwrap(), q(0));
        }
        let once = truncate_points(&WeightedPoset { poset: p.clone(), weights });
        let twice = truncate_points(&once);
        prop_assert_eq!(once.poset.to_json(), twice.poset.to_json());
        prop_assert_eq!(once.weights.values(), twice.weights.values());
    }

    #[test]
    fn zero_free_components_are_convex_sublattices(base in 1i64..=3, slope in 1i64..=2, n_max in 3usize..=6) {
        let y = family("quadrant", n_max as u32);
        let p = &y.poset;
        let weights = WeightScheme::from_fn(p, q(base), |pt| {
            let c = grid_coords(p.name(pt));
            q(base + slope * (c[0] - c[1]))
        });
        let lat = enumerate_ideals(p, n_max).unwrap();
        let labels = sim_components(&lat, &weights);
        // related elements share a label, and labels never join across a zero cover
        for i in 0..lat.len() {
            for &(j, pt) in lat.up(i) {
                if weights.weight(pt) != &q(0) {
                    prop_assert_eq!(labels[i], labels[j]);
                }
            }
        }
        let groups: BTreeMap<usize, BTreeSet<usize>> = labels.iter().enumerate().fold(BTreeMap::new(), |mut m, (i, &l)| {
            m.entry(l).or_insert_with(BTreeSet::new).insert(i);
            m
        });
        prop_assert!(is_convex_sublattice(&lat, &groups[&labels[0]]));
    }

    #[test]
    fn ideals_are_closed_under_union_and_intersection(which in 0usize..4, n_max in 2usize..=6) {
        let fam = family(FAMILIES[which], n_max as u32);
        let lat = enumerate_ideals(&fam.poset, n_max).unwrap();
        for x in lat.ideals() {
            for y in lat.ideals() {
                prop_assert!(lat.index_of(&x.intersection(y)).is_some());
                let join = x.union(y);
                if join.size() <= n_max {
                    prop_assert!(lat.index_of(&join).is_some());
                }
            }
        }
    }

    #[test]
    fn covers_are_transposes(which in 0usize..5, rank in 1u32..=7) {
        let p = &family(FAMILIES[which], rank).poset;
        for a in p.points() {
            for &b in p.up(a) {
                prop_assert!(p.down(b).contains(&a));
                prop_assert_eq!(p.rank(b), p.rank(a) + 1);
            }
            for &b in p.down(a) {
                prop_assert!(p.up(b).contains(&a));
            }
        }
    }

    #[test]
    fn random_colored_permutations_round_trip(
        (perm, colors) in (1usize..=5).prop_flat_map(|n| (
            Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(1u32..=2, n),
        )),
    ) {
        let g = graph("strip:2", 5);
        let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
        let sigma = ColoredPermutation::new(perm, colors, 2).unwrap();
        let out = rsk_forward(&g.graph, &m, &sigma).unwrap();
        prop_assert_eq!(out.colored.shape(), out.plain.shape());
        prop_assert_eq!(rsk_inverse(&g.graph, &m, &out.colored, &out.plain).unwrap(), sigma);
    }
}

#[test]
fn interior_points_of_positive_families_have_at_most_two_covers() {
    for name in FAMILIES {
        let fam = family(name, 7);
        let p = &fam.poset;
        for pt in p.points().filter(|&pt| p.is_interior(pt)) {
            assert!(p.up(pt).len() <= 2 && p.down(pt).len() <= 2, "{name} {}", p.name(pt));
            let nb = fomin_core::poset::neighborhood(p, pt).unwrap();
            assert!(nb.siblings_form_antichain(p));
            assert!(nb.pairing_is_bijective());
            for (lo, hi) in nb.pairing.values() {
                assert_eq!(fam.weights.weight(*lo), fam.weights.weight(*hi));
            }
        }
    }
}
