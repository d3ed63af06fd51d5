mod common;

use common::{family, point};
use fomin_core::families::{grid_window, make_window, FamilyKind};
use fomin_core::lattice::{chain_count_f, coloring_count_c, deletion_points, enumerate_ideals, insertion_points, Diagram};
use fomin_core::poset::{
    assign_grid, check_cover_modular, check_unique_cover_modular, connected_components, neighborhood, ChainLength,
    PointPosetWindow, PosetError, WindowBuilder,
};
use num_bigint::BigUint;

fn names(p: &PointPosetWindow, ids: &[fomin_core::poset::PointId]) -> Vec<String> {
    let mut v: Vec<String> = ids.iter().map(|&q| p.name(q).to_string()).collect();
    v.sort();
    v
}

fn v_poset() -> PointPosetWindow {
    let mut b = WindowBuilder::new(2);
    b.point("bottom", 0).unwrap();
    b.point("left", 1).unwrap();
    b.point("right", 1).unwrap();
    b.cover("bottom", "left").unwrap();
    b.cover("bottom", "right").unwrap();
    b.build().unwrap()
}

#[test]
fn cover_modular_examples() {
    assert!(check_cover_modular(&make_window(&FamilyKind::Quadrant, 5).unwrap()).holds);
    assert!(check_cover_modular(&make_window(&FamilyKind::Orthant(3), 4).unwrap()).holds);
    let report = check_cover_modular(&v_poset());
    assert!(!report.holds);
    assert_eq!((report.witnesses[0].first.as_str(), report.witnesses[0].second.as_str()), ("left", "right"));
}

#[test]
fn unique_cover_modular_examples() {
    assert!(check_unique_cover_modular(&make_window(&FamilyKind::Octant, 6).unwrap()).holds);
    assert!(check_unique_cover_modular(&make_window(&FamilyKind::Quadrant, 6).unwrap()).holds);

    // one point covered by two points that share two upper covers
    let mut b = WindowBuilder::new(3);
    for (name, rank) in [("z", 0), ("a", 1), ("b", 2), ("c", 2), ("u", 3), ("v", 3)] {
        b.point(name, rank).unwrap();
    }
    for (lo, hi) in [("z", "a"), ("a", "b"), ("a", "c"), ("b", "u"), ("c", "u"), ("b", "v"), ("c", "v")] {
        b.cover(lo, hi).unwrap();
    }
    let p = b.build().unwrap();
    let report = check_unique_cover_modular(&p);
    assert!(!report.holds);
    assert!(report.witnesses.iter().any(|w| w.first == "b" && w.second == "c" && w.reason.contains("2 common upper")));
}

#[test]
fn neighborhood_shapes() {
    let quadrant = make_window(&FamilyKind::Quadrant, 4).unwrap();
    let nb = neighborhood(&quadrant, point(&quadrant, "1,1")).unwrap();
    assert_eq!((nb.c_minus.len(), nb.c_plus.len(), nb.siblings.len()), (2, 2, 2));
    assert_eq!(nb.shape().table_row(), Some(14));
    let nb = neighborhood(&quadrant, point(&quadrant, "0,0")).unwrap();
    assert_eq!((nb.c_minus.len(), nb.c_plus.len(), nb.siblings.len()), (0, 2, 0));

    let octant = make_window(&FamilyKind::Octant, 4).unwrap();
    let nb = neighborhood(&octant, point(&octant, "1,1")).unwrap();
    assert_eq!((nb.c_minus.len(), nb.c_plus.len(), nb.siblings.len()), (1, 1, 1));
    assert_eq!(names(&octant, &nb.siblings), ["2,0"]);
}

#[test]
fn neighborhood_at_window_edge_is_rejected() {
    let quadrant = make_window(&FamilyKind::Quadrant, 3).unwrap();
    assert!(matches!(neighborhood(&quadrant, point(&quadrant, "2,1")), Err(PosetError::NeighborhoodNotVisible { .. })));
}

#[test]
fn components() {
    let quadrant = make_window(&FamilyKind::Quadrant, 3).unwrap();
    let octant = make_window(&FamilyKind::Octant, 3).unwrap();
    assert_eq!(connected_components(&PointPosetWindow::disjoint_union(&[&quadrant, &octant])).len(), 2);
    assert_eq!(connected_components(&quadrant).len(), 1);
    assert!(connected_components(&PointPosetWindow::empty(3)).is_empty());
}

#[test]
fn grid_assignment_on_quadrant() {
    let p = make_window(&FamilyKind::Quadrant, 6).unwrap();
    let g = assign_grid(&p).unwrap();
    assert_eq!(g.chain_length, ChainLength::Finite(1));
    assert_eq!(g.cell(0, 0), Some(point(&p, "0,0")));
    let first: Vec<_> = [g.cell(1, 0), g.cell(0, 1)].into_iter().map(|c| p.name(c.unwrap()).to_string()).collect();
    let mut sorted = first.clone();
    sorted.sort();
    assert_eq!(sorted, ["0,1", "1,0"]);
    for level in 0..g.levels() {
        assert_eq!(g.h_min[level], -(level as i64));
        assert_eq!(g.h_max[level], level as i64);
    }
    // covers step one cell right or up, and every such step is a cover
    for (&pt, &(x, y)) in &g.coords {
        for &u in p.up(pt) {
            if let Some(&(ux, uy)) = g.coords.get(&u) {
                assert!((ux, uy) == (x + 1, y) || (ux, uy) == (x, y + 1));
            }
        }
        for next in [g.cell(x + 1, y), g.cell(x, y + 1)].into_iter().flatten() {
            assert!(p.up(pt).contains(&next));
        }
    }
}

#[test]
fn grid_assignment_on_octant_and_chain() {
    let p = make_window(&FamilyKind::Octant, 6).unwrap();
    let g = assign_grid(&p).unwrap();
    assert_eq!(g.chain_length, ChainLength::Finite(2));
    assert_eq!(names(&p, &g.bottom_chain), ["0,0", "1,0"]);
    assert_eq!(p.name(g.cell(0, 0).unwrap()), "1,0");

    let chain = make_window(&FamilyKind::Chain, 5).unwrap();
    assert_eq!(assign_grid(&chain).unwrap().chain_length, ChainLength::Unbounded);
}

#[test]
fn ideal_counts() {
    let quadrant = make_window(&FamilyKind::Quadrant, 4).unwrap();
    assert_eq!(enumerate_ideals(&quadrant, 4).unwrap().counts(), [1, 1, 2, 3, 5]);
    let octant = make_window(&FamilyKind::Octant, 4).unwrap();
    assert_eq!(enumerate_ideals(&octant, 4).unwrap().counts(), [1, 1, 1, 2, 2]);
    let empty = PointPosetWindow::empty(0);
    let lat = enumerate_ideals(&empty, 0).unwrap();
    assert_eq!(lat.len(), 1);
    assert_eq!(lat.ideal(0).size(), 0);
}

#[test]
fn insertion_and_deletion_points() {
    let p = make_window(&FamilyKind::Quadrant, 4).unwrap();
    let empty = Diagram::empty();
    assert_eq!(names(&p, &insertion_points(&p, &empty).unwrap()), ["0,0"]);
    assert!(deletion_points(&p, &empty).is_empty());
    let one = Diagram::from_names(&p, &["0,0"]).unwrap();
    assert_eq!(names(&p, &insertion_points(&p, &one).unwrap()), ["0,1", "1,0"]);
    assert_eq!(names(&p, &deletion_points(&p, &one)), ["0,0"]);

    let p = make_window(&FamilyKind::Octant, 4).unwrap();
    let x = Diagram::from_names(&p, &["0,0", "1,0"]).unwrap();
    assert_eq!(names(&p, &insertion_points(&p, &x).unwrap()), ["1,1", "2,0"]);
    assert_eq!(names(&p, &deletion_points(&p, &x)), ["1,0"]);
}

#[test]
fn chain_count_examples() {
    let p = make_window(&FamilyKind::Quadrant, 5).unwrap();
    let lat = enumerate_ideals(&p, 5).unwrap();
    // partition (2,1): two cells in the bottom row, one above
    let hook = Diagram::from_names(&p, &["0,0", "1,0", "0,1"]).unwrap();
    assert_eq!(chain_count_f(&lat, &hook).unwrap(), BigUint::from(2u32));
    let square = Diagram::from_names(&p, &["0,0", "1,0", "0,1", "1,1"]).unwrap();
    assert_eq!(chain_count_f(&lat, &square).unwrap(), BigUint::from(2u32));
    assert_eq!(chain_count_f(&lat, &Diagram::empty()).unwrap(), BigUint::from(1u32));
}

#[test]
fn coloring_count_examples() {
    let y = family("quadrant", 4);
    for x in enumerate_ideals(&y.poset, 4).unwrap().ideals() {
        assert_eq!(coloring_count_c(&y.weights, x).unwrap(), common::q(1));
    }
    let sy = family("octant", 4);
    let x = Diagram::from_names(&sy.poset, &["0,0", "1,0"]).unwrap();
    assert_eq!(coloring_count_c(&sy.weights, &x).unwrap(), common::q(2));
    let y3 = family("strip:3", 4);
    let x = Diagram::from_names(&y3.poset, &["0,0"]).unwrap();
    assert_eq!(coloring_count_c(&y3.weights, &x).unwrap(), common::q(3));
}

#[test]
fn poset_json_round_trip() {
    let p = grid_window(4, 2, |c| c[1] <= c[0]);
    let back = PointPosetWindow::from_json(&p.to_json()).unwrap();
    assert_eq!(back.to_json(), p.to_json());
    assert!(matches!(PointPosetWindow::from_json("{"), Err(PosetError::Json(_))));
}

#[test]
fn rank_gaps_are_rejected() {
    let mut b = WindowBuilder::new(2);
    b.point("a", 0).unwrap();
    b.point("b", 2).unwrap();
    b.cover("a", "b").unwrap();
    assert!(matches!(b.build(), Err(PosetError::RankGap { .. })));
}
