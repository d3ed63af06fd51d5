//! One line per acceptance criterion. Every comparison is exact: weights,
//! degrees and counts are rationals or integers, so the tolerance is zero.

use fomin_core::families::{
    factor, make_graded_graph, make_point_poset, make_window, product, truncate_lattice_check, truncate_points, FamilyKind,
    FamilySpec, WeightedPoset,
};
use fomin_core::growth::{all_colored_permutations, canonical_mclarnan, rsk_eligibility, rsk_forward, rsk_inverse, verify_identity};
use fomin_core::lattice::{coloring_count_c, enumerate_ideals};
use fomin_core::poset::{check_unique_cover_modular, neighborhood, PointId};
use fomin_core::rational::{self, Q};
use fomin_core::solve::{build_constraints, build_partition_constraints, positivity_witness, solve};
use fomin_core::verify::{check_global, check_global_interior, check_graded_graph, check_local, OrphanMode, WeightScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

/// Criteria that cannot hold, with the reason. They are reported, not asserted.
const KNOWN_UNATTAINABLE: &[(&str, &str)] = &[(
    "5a",
    "the quadrant rank-6 space has dimension 2, not 3: at the one-point ideal the identity reads \
     w(1,0) + w(0,1) = r + w(0,0), which forces the two slopes of base + row_slope·i + column_slope·j to cancel",
)];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn family(name: &str, max_rank: u32) -> WeightedPoset {
    make_point_poset(&FamilySpec::parse(name, max_rank).unwrap()).unwrap()
}

fn q(n: i64) -> Q {
    rational::int(n)
}

fn criterion_1() -> Outcome {
    let mut details = Vec::new();
    let mut passed = true;
    let quadrant = family("quadrant", 12);
    let report = check_global(&quadrant.poset, &quadrant.weights, 12).unwrap();
    let ideals = enumerate_ideals(&quadrant.poset, 12).unwrap().len();
    passed &= report.holds && ideals == 272 && report.checked == 272;
    details.push(format!("quadrant {ideals} ideals"));
    for (name, size) in [("octant", 12), ("strip:1", 10), ("strip:2", 10), ("strip:3", 10)] {
        let fam = family(name, size);
        let report = check_global(&fam.poset, &fam.weights, size as usize).unwrap();
        passed &= report.holds;
        details.push(format!("{name} {} ideals", report.checked));
    }
    Outcome { id: "1", passed, detail: details.join(", ") }
}

fn verdicts(fam: &WeightedPoset) -> [bool; 3] {
    [
        check_global_interior(&fam.poset, &fam.weights).holds,
        check_local(&fam.poset, &fam.weights, OrphanMode::JoinOrphan).unwrap().holds,
        check_local(&fam.poset, &fam.weights, OrphanMode::MeetOrphan).unwrap().holds,
    ]
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut passed = true;
    let mut broken = 0;
    let mut windows = 0;
    for name in ["quadrant", "octant", "strip:2"] {
        for rank in 2..=6 {
            let canonical = family(name, rank);
            passed &= verdicts(&canonical) == [true; 3];
            windows += 1;
            for _ in 0..100 {
                let mut fam = canonical.clone();
                for _ in 0..rng.gen_range(1..=2) {
                    let pt = PointId::from_index(rng.gen_range(0..fam.poset.len()));
                    let delta = rational::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                    let v = fam.weights.weight(pt) + delta;
                    fam.weights.set(pt, v);
                }
                if rng.gen_bool(0.2) {
                    let d = fam.weights.degree() + q(rng.gen_range(-1..=1));
                    fam.weights.set_degree(d);
                }
                let v = verdicts(&fam);
                passed &= v[0] == v[1] && v[1] == v[2];
                broken += usize::from(!v[0]);
                windows += 1;
            }
        }
    }
    Outcome { id: "2", passed, detail: format!("{windows} windows agree in all three forms, {broken} perturbations fail everywhere") }
}

fn criterion_3() -> Outcome {
    let mut passed = true;
    let mut details = Vec::new();
    for (name, n, value) in [("quadrant", 6, 720), ("octant", 6, 720), ("strip:2", 5, 3840), ("strip:3", 4, 1944), ("yf1", 5, 120)] {
        let g = make_graded_graph(&FamilySpec::parse(name, n as u32).unwrap()).unwrap();
        let report = verify_identity(&g.graph, &g.degree, n).unwrap();
        passed &= report.matches && report.lhs == q(value) && report.rhs == q(value);
        details.push(format!("{name} n={n}: {}", rational::show(&report.rhs)));
    }
    Outcome { id: "3", passed, detail: details.join(", ") }
}

fn fomin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fomin")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

const TABLE: [&str; 9] = [
    "−n for n ≥ 2 | ∞ | n | n | 1 | Y_n",
    "∞ | ∞ | ∞ | ∞ | 1 | Y",
    "∞ | ∞ | 2 | 2 | 2 | SY",
    "3 | 3 | 2 | 2 | 6 | none (xy-32)",
    "6 | 6 | 2 | 2 | 3 | none (xy-62)",
    "6 | 6 | 3 | 3 | 2 | none (xy-ge-3)",
    "4 | 4 | 2 | 2 | 4 | none (xy-42)",
    "4 | 4 | 4 | 4 | 2 | none (xy-ge-3)",
    "3 | 3 | 3 | 3 | 3 | none (xy-ge-3)",
];

fn criterion_4() -> Outcome {
    let (code, text) = fomin(&["classify", "--max-rank", "8"]);
    let (json_code, json) = fomin(&["classify", "--max-rank", "8", "--json"]);
    let report: serde_json::Value = serde_json::from_str(&json).unwrap();
    let survivors: Vec<&str> = report["survivors"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    let expected: Vec<String> = ["Y", "SY"].iter().map(|s| s.to_string()).chain((1..=8).map(|n| format!("Y_{n}"))).collect();
    let cells: BTreeMap<(u64, u64), (u64, u64)> = report["eliminations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let cell = &e["trace"]["contradiction"]["cell"];
            (
                (e["row_limit"].as_u64().unwrap(), e["column_limit"].as_u64().unwrap()),
                (cell[0].as_u64().unwrap(), cell[1].as_u64().unwrap()),
            )
        })
        .collect();
    let expected_cells = BTreeMap::from([
        ((3, 2), (4, 4)),
        ((4, 2), (2, 2)),
        ((6, 2), (2, 2)),
        ((6, 3), (1, 1)),
        ((4, 4), (1, 1)),
        ((3, 3), (1, 1)),
    ]);
    let table: Vec<&str> = text.lines().skip(1).take(9).collect();
    let passed = code == 0 && json_code == 0 && survivors == expected && cells == expected_cells && table == TABLE;
    Outcome {
        id: "4",
        passed,
        detail: format!("{} survivors, {} elimination traces, table {}", survivors.len(), cells.len(), if table == TABLE { "matches" } else { "differs" }),
    }
}

fn linear(p: &fomin_core::poset::PointPosetWindow, base: i64, row_slope: i64, column_slope: i64) -> WeightScheme {
    WeightScheme::from_fn(p, q(base), |pt| {
        let c: Vec<i64> = p.name(pt).split(',').map(|s| s.parse().unwrap()).collect();
        q(base + row_slope * c[0] + column_slope * c[1])
    })
}

fn criterion_5a() -> Outcome {
    let p = make_window(&FamilyKind::Quadrant, 6).unwrap();
    let joined = solve(&build_constraints(&p).unwrap()).unwrap();
    let partitions = solve(&build_partition_constraints(&p).unwrap()).unwrap();
    let member = |w: WeightScheme| {
        let mut x = w.values().to_vec();
        x.push(w.degree().clone());
        joined.contains(&x)
    };
    let has_unit = member(linear(&p, 1, 0, 0));
    let has_row_slope = member(linear(&p, 1, 1, 0));
    let passed = joined.dimension() == 3 && partitions.dimension() == 3 && has_unit && has_row_slope;
    Outcome {
        id: "5a",
        passed,
        detail: format!(
            "dimension {} (partition route {}), contains w≡1: {has_unit}, contains 1+i: {has_row_slope}",
            joined.dimension(),
            partitions.dimension()
        ),
    }
}

fn criterion_5b() -> Outcome {
    let p = make_window(&FamilyKind::Orthant(3), 4).unwrap();
    let space = solve(&build_constraints(&p).unwrap()).unwrap();
    let (passed, detail) = match positivity_witness(&space, &p) {
        Ok(_) => (false, "found a positive weighting".to_string()),
        Err(cert) => (cert.verify(&space), format!("no positive solution, certificate verified: {}", cert.verify(&space))),
    };
    Outcome { id: "5b", passed, detail }
}

fn names_and_weights(fam: &WeightedPoset) -> BTreeMap<String, Q> {
    fam.poset.points().map(|pt| (fam.poset.name(pt).to_string(), fam.weights.weight(pt).clone())).collect()
}

fn criterion_6() -> Outcome {
    let y = family("quadrant", 6);
    let sloped = WeightedPoset { poset: y.poset.clone(), weights: linear(&y.poset, 2, 1, -1) };
    let truncated = truncate_points(&sloped);
    let strip = family("strip:2", 6);
    let same = names_and_weights(&truncated) == names_and_weights(&strip) && truncated.weights.degree() == &q(2);
    let check = truncate_lattice_check(&sloped, 6).unwrap();
    let (code, _) = fomin(&["truncate", "--family", "quadrant", "--linear", "2,1,-1", "--max-size", "6"]);
    Outcome {
        id: "6",
        passed: same && check.holds && code == 0,
        detail: format!("{} points kept, r = 2, lattice check over {} identities", truncated.poset.len(), check.checked),
    }
}

fn criterion_7() -> Outcome {
    let y = family("quadrant", 8);
    let yy = product(&[y.clone(), y]);
    let report = check_global(&yy.poset, &yy.weights, 8).unwrap();
    let degrees: Vec<Q> = factor(&yy).unwrap().iter().map(|f| f.degree().clone()).collect();
    Outcome {
        id: "7",
        passed: report.holds && yy.weights.degree() == &q(2) && degrees == [q(1), q(1)],
        detail: format!("product r = {}, {} ideals, factor degrees {:?}", rational::show(yy.weights.degree()), report.checked,
            degrees.iter().map(rational::show).collect::<Vec<_>>()),
    }
}

fn round_trip_count(name: &str, n_max: usize) -> Option<usize> {
    let g = make_graded_graph(&FamilySpec::parse(name, n_max as u32).unwrap()).unwrap();
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let mut total = 0;
    for n in 1..=n_max {
        let mut images = BTreeSet::new();
        for sigma in all_colored_permutations(n, m.degree()) {
            let out = rsk_forward(&g.graph, &m, &sigma).ok()?;
            if rsk_inverse(&g.graph, &m, &out.colored, &out.plain).ok()? != sigma {
                return None;
            }
            images.insert(out);
            total += 1;
        }
        if images.len() != all_colored_permutations(n, m.degree()).len() {
            return None;
        }
    }
    Some(total)
}

fn criterion_8() -> Outcome {
    let y_count = round_trip_count("quadrant", 4);
    let strip_count = round_trip_count("strip:2", 3);

    let fam = family("quadrant", 4);
    let lat = enumerate_ideals(&fam.poset, 4).unwrap();
    let g = make_graded_graph(&FamilySpec::parse("quadrant", 4).unwrap()).unwrap();
    let m = canonical_mclarnan(&g.graph, &g.degree).unwrap();
    let mut counts: BTreeMap<String, Q> = BTreeMap::new();
    for n in 0..=4 {
        for sigma in all_colored_permutations(n, 1) {
            let out = rsk_forward(&g.graph, &m, &sigma).unwrap();
            *counts.entry(g.graph.name(out.shape()).to_string()).or_insert_with(|| q(0)) += q(1);
        }
    }
    let shapes_agree = lat.ideals().iter().zip(lat.chain_counts()).all(|(x, f)| {
        let f = Q::from_integer(f.into());
        let key = format!("{{{}}}", x.sorted_names(&fam.poset).join(" "));
        counts.get(&key) == Some(&(&f * &f * coloring_count_c(&fam.weights, x).unwrap()))
    });
    Outcome {
        id: "8",
        passed: y_count == Some(33) && strip_count == Some(58) && shapes_agree && counts.len() == lat.len(),
        detail: format!("Y round trips {y_count:?}, strip(2) round trips {strip_count:?}, f²c at {} shapes", lat.len()),
    }
}

fn criterion_9() -> Outcome {
    let mut passed = true;
    let mut points = 0;
    for name in ["quadrant", "octant", "strip:1", "strip:2", "strip:3", "chain", "quadrant*octant"] {
        let fam = family(name, 7);
        let p = &fam.poset;
        passed &= check_unique_cover_modular(p).holds;
        for pt in p.points().filter(|&pt| p.is_interior(pt)) {
            let nb = neighborhood(p, pt).unwrap();
            passed &= nb.siblings_form_antichain(p)
                && nb.c_minus.len() <= 2
                && nb.c_plus.len() <= 2
                && nb.pairing_is_bijective()
                && nb.pairing.values().all(|(lo, hi)| fam.weights.weight(*lo) == fam.weights.weight(*hi));
            points += 1;
        }
    }
    Outcome { id: "9", passed, detail: format!("{points} interior points across 7 positive fixtures") }
}

fn criterion_10() -> Outcome {
    let mut passed = true;
    let mut details = Vec::new();
    for name in ["zchain", "twos:B1B2"] {
        let g = make_graded_graph(&FamilySpec::parse(name, 8).unwrap()).unwrap();
        let report = check_graded_graph(&g.graph, &g.degree, g.graph.interior_ranks());
        passed &= report.holds && report.checked > 0;
        details.push(format!("{name} {} elements", report.checked));
    }
    let twos = make_graded_graph(&FamilySpec::parse("twos:B1B2", 8).unwrap()).unwrap();
    let ineligible = rsk_eligibility(&twos.graph, &twos.degree).is_err();
    let (code, json) = fomin(&["--json", "check", "--family", "twos:B1B2", "--max-size", "8"]);
    let reported: serde_json::Value = serde_json::from_str(&json).unwrap();
    passed &= ineligible && code == 0 && reported["rsk_eligible"] == serde_json::Value::Bool(false);
    details.push(format!("twos RSK-ineligible: {ineligible}"));
    Outcome { id: "10", passed, detail: details.join(", ") }
}

fn main() {
    let outcomes = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5a(),
        criterion_5b(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == o.id);
        println!("criterion {:<3} [exact] {}  {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.detail);
        match (o.passed, known) {
            (false, Some((_, reason))) => println!("              known unattainable: {reason}"),
            (false, None) => unexpected.push(o.id),
            (true, _) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria failed: {unexpected:?}");
        std::process::exit(1);
    }
}
