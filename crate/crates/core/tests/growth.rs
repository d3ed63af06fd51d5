mod common;

use common::{family, graph, q};
use fomin_core::graph::GraphBuilder;
use fomin_core::growth::{
    all_colored_permutations, canonical_mclarnan, enumerate_colored_paths, enumerate_paths, rsk_eligibility, rsk_forward,
    rsk_inverse, verify_identity, ColoredPermutation, DomainItem, GrowthError, PathTableau, UpEdge,
};
use fomin_core::lattice::{coloring_count_c, enumerate_ideals};
use fomin_core::rational::Q;
use std::collections::{BTreeMap, BTreeSet};

#[test]
fn mclarnan_tables_on_small_elements() {
    let y = graph("quadrant", 3);
    let m = canonical_mclarnan(&y.graph, &y.degree).unwrap();
    let bottom = y.graph.zero_hat().unwrap();
    let one = y.graph.id("{0,0}").unwrap();
    assert_eq!(m.table(bottom), vec![(DomainItem::Symbol(1), UpEdge { upper: one, color: 1 })]);

    let table = m.table(one);
    assert_eq!(table.len(), 2);
    assert_eq!(table[0].0, DomainItem::Down { lower: bottom, color: 1 });
    assert_eq!(table[1].0, DomainItem::Symbol(1));
    let uppers: BTreeSet<&str> = table.iter().map(|(_, e)| y.graph.name(e.upper)).collect();
    assert_eq!(uppers, BTreeSet::from(["{0,0 0,1}", "{0,0 1,0}"]));

    let y2 = graph("strip:2", 3);
    let m2 = canonical_mclarnan(&y2.graph, &y2.degree).unwrap();
    let bottom = y2.graph.zero_hat().unwrap();
    let colors: Vec<(DomainItem, u32)> = m2.table(bottom).into_iter().map(|(d, e)| (d, e.color)).collect();
    assert_eq!(colors, [(DomainItem::Symbol(1), 1), (DomainItem::Symbol(2), 2)]);
}

#[test]
fn rsk_examples() {
    let y = graph("quadrant", 3);
    let m = canonical_mclarnan(&y.graph, &y.degree).unwrap();
    let one = ColoredPermutation::new(vec![1], vec![1], 1).unwrap();
    let out = rsk_forward(&y.graph, &m, &one).unwrap();
    assert_eq!(out.colored.names(&y.graph), ["{}", "{0,0}"]);
    assert_eq!(out.plain.names(&y.graph), ["{}", "{0,0}"]);

    let shape_of = |perm: Vec<u32>| {
        let sigma = ColoredPermutation::new(perm, vec![1; 3], 1).unwrap();
        let out = rsk_forward(&y.graph, &m, &sigma).unwrap();
        assert_eq!(out.colored.shape(), out.plain.shape());
        y.graph.name(out.shape()).to_string()
    };
    let row = shape_of(vec![1, 2, 3]);
    let column = shape_of(vec![3, 2, 1]);
    assert_ne!(row, column);
    let long_shapes = BTreeSet::from(["{0,0 0,1 0,2}".to_string(), "{0,0 1,0 2,0}".to_string()]);
    assert!(long_shapes.contains(&row) && long_shapes.contains(&column));

    let y2 = graph("strip:2", 2);
    let m2 = canonical_mclarnan(&y2.graph, &y2.degree).unwrap();
    let outputs: BTreeSet<Vec<u32>> = all_colored_permutations(1, 2)
        .iter()
        .map(|s| rsk_forward(&y2.graph, &m2, s).unwrap().colored.edge_colors.unwrap())
        .collect();
    assert_eq!(outputs.len(), 2);
}

fn exhaustive_round_trip(name: &str, n_max: usize) -> usize {
    let g = graph(name, n_max as u32);
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let mut total = 0;
    for n in 1..=n_max {
        let inputs = all_colored_permutations(n, m.degree());
        let mut seen = BTreeSet::new();
        for sigma in &inputs {
            let out = rsk_forward(&g.graph, &m, sigma).unwrap();
            assert_eq!(&rsk_inverse(&g.graph, &m, &out.colored, &out.plain).unwrap(), sigma, "{name}");
            seen.insert(out);
        }
        assert_eq!(seen.len(), inputs.len(), "{name}: not injective at n = {n}");
        total += inputs.len();
    }
    total
}

#[test]
fn round_trips() {
    assert_eq!(exhaustive_round_trip("quadrant", 4), 33);
    assert_eq!(exhaustive_round_trip("strip:2", 3), 58);
    exhaustive_round_trip("octant", 4);
    exhaustive_round_trip("strip:3", 3);
    exhaustive_round_trip("yf1", 4);
}

#[test]
fn inverse_then_forward_is_the_identity() {
    let g = graph("strip:2", 3);
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let colored = enumerate_colored_paths(&g.graph, 3);
    let plain = enumerate_paths(&g.graph, 3);
    let mut pairs = 0;
    for c in &colored {
        for p in plain.iter().filter(|p| p.shape() == c.shape()) {
            let sigma = rsk_inverse(&g.graph, &m, c, p).unwrap();
            let out = rsk_forward(&g.graph, &m, &sigma).unwrap();
            assert_eq!((&out.colored, &out.plain), (c, p));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 48);
}

// Number of colored permutations landing on each shape, against f(x)²·c(x)
// taken from the ideal lattice.
fn triple_counts_match(name: &str, n_max: usize) {
    let fam = family(name, n_max as u32);
    let lat = enumerate_ideals(&fam.poset, n_max).unwrap();
    let expected: BTreeMap<String, Q> = lat
        .ideals()
        .iter()
        .zip(lat.chain_counts())
        .map(|(x, f)| {
            let f = Q::from_integer(f.into());
            let key = format!("{{{}}}", x.sorted_names(&fam.poset).join(" "));
            (key, &f * &f * coloring_count_c(&fam.weights, x).unwrap())
        })
        .collect();
    let g = graph(name, n_max as u32);
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let mut counts: BTreeMap<String, Q> = BTreeMap::new();
    for n in 0..=n_max {
        for sigma in all_colored_permutations(n, m.degree()) {
            let out = rsk_forward(&g.graph, &m, &sigma).unwrap();
            *counts.entry(g.graph.name(out.shape()).to_string()).or_insert_with(|| q(0)) += q(1);
        }
    }
    assert_eq!(counts, expected, "{name}");
}

#[test]
fn triple_counts() {
    triple_counts_match("quadrant", 4);
    triple_counts_match("strip:2", 3);
    triple_counts_match("octant", 4);
}

#[test]
fn identities() {
    for (name, n, value) in [("quadrant", 6, 720), ("octant", 6, 720), ("strip:2", 5, 3840), ("strip:3", 4, 1944), ("yf1", 5, 120)] {
        let g = graph(name, n as u32);
        let report = verify_identity(&g.graph, &g.degree, n).unwrap();
        assert_eq!((report.lhs.clone(), report.rhs.clone()), (q(value), q(value)), "{name}");
        assert!(report.matches);
    }
    let g = graph("quadrant*quadrant", 5);
    assert!(verify_identity(&g.graph, &g.degree, 5).unwrap().matches);
    let g = graph("quadrant", 3);
    assert!(matches!(verify_identity(&g.graph, &g.degree, 5), Err(GrowthError::WindowTooShallow { .. })));
}

#[test]
fn bottomless_graphs_are_ineligible() {
    for name in ["zchain", "twos:B1B2"] {
        let g = graph(name, 5);
        assert!(matches!(rsk_eligibility(&g.graph, &g.degree), Err(GrowthError::Ineligible(_))), "{name}");
    }
}

#[test]
fn non_differential_graphs_have_no_mclarnan_map() {
    // a bottom with one cover of weight 1, asked to carry degree 2
    let mut b = GraphBuilder::new().with_bottom();
    let bottom = b.element("bottom", 0).unwrap();
    let top = b.element("top", 1).unwrap();
    let above = b.element("above", 2).unwrap();
    b.edge(bottom, top, q(1));
    b.edge(top, above, q(1));
    let g = b.build().unwrap();
    assert!(matches!(canonical_mclarnan(&g, &q(2)), Err(GrowthError::CardinalityMismatch { .. })));
}

#[test]
fn malformed_inputs() {
    assert!(ColoredPermutation::new(vec![1, 1], vec![1, 1], 1).is_err());
    assert!(ColoredPermutation::new(vec![2, 1], vec![1, 3], 2).is_err());
    let g = graph("quadrant", 3);
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let bottom = g.graph.zero_hat().unwrap();
    let one = g.graph.id("{0,0}").unwrap();
    let two = g.graph.id("{0,0 1,0}").unwrap();
    let short = PathTableau { chain: vec![bottom, one], edge_colors: Some(vec![1]) };
    let long = PathTableau { chain: vec![bottom, one, two], edge_colors: None };
    assert!(matches!(rsk_inverse(&g.graph, &m, &short, &long), Err(GrowthError::ShapeMismatch(..))));
    let uncolored = PathTableau { chain: vec![bottom, one], edge_colors: None };
    assert!(matches!(rsk_inverse(&g.graph, &m, &uncolored, &uncolored), Err(GrowthError::InvalidColoring(_))));
    let jump = PathTableau { chain: vec![bottom, two], edge_colors: None };
    assert!(rsk_inverse(&g.graph, &m, &jump, &jump).is_err());
}
