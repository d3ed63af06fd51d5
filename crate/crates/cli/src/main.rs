use clap::{Parser, Subcommand, ValueEnum};
use fomin_core::families::{
    factor, make_graded_graph, make_point_poset, make_window, product, truncate_lattice_check, truncate_points,
    FamilyError, FamilyKind, FamilySpec, WeightedPoset,
};
use fomin_core::growth::{
    all_colored_permutations, canonical_mclarnan, rsk_eligibility, rsk_forward, rsk_inverse, verify_identity,
    young_row_insertion, ColoredPermutation, McLarnanMap,
};
use fomin_core::lattice::enumerate_ideals;
use fomin_core::poset::{check_unique_cover_modular, to_dot};
use fomin_core::rational::{self, Q};
use fomin_core::solve::{bottom_chain_profile, build_constraints, classify, positivity_witness, solve};
use fomin_core::verify::{check_all_partitions, check_global, check_graded_graph, check_local, CheckReport, OrphanMode};
use fomin_core::weights::WeightScheme;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fomin", version, about = "Weighted differential lattices: checks, solver, classification, RSK")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for any sampled randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Global,
    Local,
    LocalMeet,
    Partitions,
    Structure,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Canonical,
    RowInsertion,
}

#[derive(Subcommand)]
enum Command {
    /// Check the differential identity on a family window.
    Check {
        #[arg(long)]
        family: String,
        /// Largest ideal size (and window rank).
        #[arg(long, default_value_t = 8)]
        max_size: u32,
        #[arg(long, value_enum, default_value_t = CheckMode::Global)]
        mode: CheckMode,
        /// Replace the canonical weights with a weight file.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Solve for all weightings of a family's point poset window.
    Solve {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_rank: u32,
        /// Also profile the bottom chain.
        #[arg(long)]
        profile: bool,
    },
    /// Run the case analysis and rebuild the survivors.
    Classify {
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
    },
    /// Colored growth-diagram correspondence.
    Rsk {
        #[arg(long)]
        family: String,
        /// Comma-separated permutation of 1..n.
        #[arg(long, conflicts_with = "sweep")]
        perm: Option<String>,
        /// Comma-separated colors, default all 1.
        #[arg(long)]
        colors: Option<String>,
        /// Round-trip every colored permutation of size at most this.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, value_enum, default_value_t = MapKind::Canonical)]
        map: MapKind,
    },
    /// Compare n!·rⁿ with the path-count sum at rank n.
    Identity {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Product of families: disjoint union of points, degrees added.
    Product {
        #[arg(long = "family", required = true, num_args = 1..)]
        families: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
    },
    /// Split a weighted point poset into connected factors.
    Factor {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 6)]
        max_rank: u32,
    },
    /// Truncate at zero weights and compare with the zero-free component.
    Truncate {
        #[arg(long)]
        family: String,
        /// Weights `a + b·x + c·y` on grid points `x,y`, degree `a`, given as `a,b,c`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "weights")]
        linear: Option<String>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
    },
    /// Graphviz output of a point poset or its ideal lattice.
    ExportDot {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 4)]
        max_rank: u32,
        /// Render the ideal lattice instead of the points.
        #[arg(long)]
        lattice: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the family grammar.
    Families,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

macro_rules! runtime {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self { Failure::Runtime(e.to_string()) }
        }
    )*};
}
runtime!(
    fomin_core::verify::VerifyError,
    fomin_core::solve::SolveError,
    fomin_core::growth::GrowthError,
    fomin_core::lattice::LatticeError,
    fomin_core::weights::WeightError,
    std::io::Error
);

/// Result of a command: whether its check held, and what to print.
struct Outcome {
    holds: bool,
    value: Value,
    text: String,
}

fn family_spec(flag: &str, text: &str, max_rank: u32) -> Result<FamilySpec, Failure> {
    FamilySpec::parse(text, max_rank).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn report_text(label: &str, report: &CheckReport) -> String {
    let mut out = format!("{label}: {} ({} identities checked", if report.holds { "holds" } else { "FAILS" }, report.checked);
    if !report.skipped.is_empty() {
        out += &format!(", {} skipped at the window edge", report.skipped.len());
    }
    out.push(')');
    for f in report.failures.iter().take(10) {
        out += &format!("\n  {:?}: {} ≠ {}", f.site, rational::show(&f.lhs), rational::show(&f.rhs));
    }
    out
}

fn load_weights(family: &WeightedPoset, path: &Option<PathBuf>) -> Result<WeightScheme, Failure> {
    match path {
        None => Ok(family.weights.clone()),
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(WeightScheme::from_json(&family.poset, &text)?)
        }
    }
}

fn is_graph_only(kind: &FamilyKind) -> bool {
    matches!(kind, FamilyKind::ZChain | FamilyKind::Twos(_) | FamilyKind::Yf1)
}

fn run_check(family: &str, max_size: u32, mode: CheckMode, weights: &Option<PathBuf>, seed: u64) -> Result<Outcome, Failure> {
    let spec = family_spec("family", family, max_size)?;
    if is_graph_only(&spec.kind) || matches!(mode, CheckMode::Graph) {
        let g = make_graded_graph(&spec)?;
        let ranks = g.graph.interior_ranks();
        let report = check_graded_graph(&g.graph, &g.degree, ranks);
        let eligible = rsk_eligibility(&g.graph, &g.degree);
        let text = format!(
            "{}\nrsk: {}",
            report_text(&format!("{family} graph, r = {}", rational::show(&g.degree)), &report),
            eligible.as_ref().map(|_| "eligible".to_string()).unwrap_or_else(|e| e.to_string())
        );
        let value = json!({"family": family, "degree": rational::show(&g.degree), "report": report,
            "rsk_eligible": eligible.is_ok(), "rsk_reason": eligible.err().map(|e| e.to_string())});
        return Ok(Outcome { holds: report.holds, value, text });
    }
    let fam = make_point_poset(&spec)?;
    let w = load_weights(&fam, weights)?;
    let p = &fam.poset;
    let (label, report) = match mode {
        CheckMode::Global => ("global", check_global(p, &w, max_size as usize)?),
        CheckMode::Local => ("local", check_local(p, &w, OrphanMode::JoinOrphan)?),
        CheckMode::LocalMeet => ("local (meet orphans)", check_local(p, &w, OrphanMode::MeetOrphan)?),
        CheckMode::Partitions => ("partitions", check_all_partitions(p, &w, seed)?),
        CheckMode::Structure => {
            let s = check_unique_cover_modular(p);
            let value = json!({"family": family, "unique_cover_modular": s.holds,
                "witnesses": s.witnesses.iter().map(|w| json!([w.first, w.second, w.reason])).collect::<Vec<_>>()});
            let text = format!("{family}: unique-cover-modular {}", if s.holds { "holds" } else { "FAILS" });
            return Ok(Outcome { holds: s.holds, value, text });
        }
        CheckMode::Graph => unreachable!("handled above"),
    };
    let value = json!({"family": family, "mode": label, "degree": rational::show(w.degree()), "report": report});
    Ok(Outcome { holds: report.holds, text: report_text(&format!("{family} {label}"), &report), value })
}

fn run_solve(family: &str, max_rank: u32, with_profile: bool) -> Result<Outcome, Failure> {
    let kind: FamilyKind = family.parse().map_err(|e: FamilyError| Failure::Usage(format!("--family: {e}")))?;
    let p = make_window(&kind, max_rank)?;
    let space = solve(&build_constraints(&p)?)?;
    let show_vec = |v: &[Q]| -> Value {
        space.names.iter().zip(v).map(|(n, x)| (n.clone(), Value::String(rational::show(x)))).collect::<serde_json::Map<_, _>>().into()
    };
    let witness = positivity_witness(&space, &p);
    let positive = witness.is_ok();
    let mut value = json!({
        "family": family,
        "max_rank": max_rank,
        "dimension": space.dimension(),
        "particular": show_vec(&space.particular),
        "basis": space.basis.iter().map(|b| show_vec(b)).collect::<Vec<_>>(),
    });
    let mut text = format!("{family} rank ≤ {max_rank}: solution space of dimension {}", space.dimension());
    match &witness {
        Ok(w) => {
            value["positive_witness"] = serde_json::to_value(w.to_file(&p)).expect("weight file serializes");
            text += &format!("\npositive witness with r = {}", rational::show(w.degree()));
        }
        Err(cert) => {
            value["positive_witness"] = Value::Null;
            value["certificate"] = json!({
                "multipliers": cert.multipliers.iter().map(|(i, m)| json!([space.names[*i], rational::show(m)])).collect::<Vec<_>>(),
                "value": rational::show(&cert.value),
                "verified": cert.verify(&space),
            });
            text += "\nno positive weighting (certificate attached)";
        }
    }
    if with_profile {
        match bottom_chain_profile(&p, &space) {
            Ok(profile) => {
                text += &format!(
                    "\nN = {}, Δ⁻ = {}, Δ⁺ = {}, x_L = {}, y_L = {}",
                    profile.chain_length, profile.row_reach, profile.column_reach, profile.row_limit, profile.column_limit
                );
                value["profile"] = serde_json::to_value(&profile).expect("profile serializes");
            }
            Err(e) => {
                text += &format!("\nprofile: {e}");
                value["profile"] = json!({"error": e.to_string()});
            }
        }
    }
    Ok(Outcome { holds: positive, value, text })
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("--{flag}: {s:?} is not a positive integer"))))
        .collect()
}

fn mclarnan(kind: MapKind, g: &fomin_core::graph::GradedWeightedGraph, degree: &Q) -> Result<McLarnanMap, Failure> {
    Ok(match kind {
        MapKind::Canonical => canonical_mclarnan(g, degree)?,
        MapKind::RowInsertion => young_row_insertion(g)?,
    })
}

fn run_rsk(family: &str, perm: &Option<String>, colors: &Option<String>, sweep: Option<usize>, map: MapKind) -> Result<Outcome, Failure> {
    let n = match (perm, sweep) {
        (Some(p), _) => p.split(',').count(),
        (None, Some(n)) => n,
        (None, None) => return Err(Failure::Usage("give --perm or --sweep".into())),
    };
    let spec = family_spec("family", family, n.max(1) as u32)?;
    let g = make_graded_graph(&spec)?;
    let m = mclarnan(map, &g.graph, &g.degree)?;
    if let Some(p) = perm {
        let perm = parse_list("perm", p)?;
        let colors = match colors {
            Some(c) => parse_list("colors", c)?,
            None => vec![1; perm.len()],
        };
        let sigma = ColoredPermutation::new(perm, colors, m.degree()).map_err(|e| Failure::Usage(e.to_string()))?;
        let out = rsk_forward(&g.graph, &m, &sigma)?;
        let back = rsk_inverse(&g.graph, &m, &out.colored, &out.plain)?;
        let value = json!({
            "perm": sigma.perm, "colors": sigma.colors,
            "P": out.colored.names(&g.graph), "c": out.colored.edge_colors,
            "Q": out.plain.names(&g.graph), "shape": g.graph.name(out.shape()),
            "round_trip": back == sigma,
        });
        let text = format!(
            "P: {}\nc: {:?}\nQ: {}\nshape: {}",
            out.colored.names(&g.graph).join(" < "),
            out.colored.edge_colors.clone().unwrap_or_default(),
            out.plain.names(&g.graph).join(" < "),
            g.graph.name(out.shape())
        );
        return Ok(Outcome { holds: back == sigma, value, text });
    }
    let mut rows = Vec::new();
    let mut holds = true;
    for size in 0..=n {
        let inputs = all_colored_permutations(size, m.degree());
        let results: Vec<Result<_, fomin_core::growth::GrowthError>> = inputs
            .par_iter()
            .map(|s| {
                let out = rsk_forward(&g.graph, &m, s)?;
                let back = rsk_inverse(&g.graph, &m, &out.colored, &out.plain)?;
                Ok((out, &back == s))
            })
            .collect();
        let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
        let distinct: std::collections::BTreeSet<_> = results.iter().map(|(o, _)| o.clone()).collect();
        let round_trips = results.iter().all(|(_, ok)| *ok);
        let ok = round_trips && distinct.len() == inputs.len();
        holds &= ok;
        rows.push(json!({"n": size, "inputs": inputs.len(), "distinct_outputs": distinct.len(), "round_trip": round_trips}));
    }
    let text = rows
        .iter()
        .map(|r| format!("n = {}: {} inputs, {} distinct outputs, round trip {}", r["n"], r["inputs"], r["distinct_outputs"], r["round_trip"]))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { holds, value: json!({"family": family, "sweep": rows}), text })
}

fn run_identity(family: &str, n: usize) -> Result<Outcome, Failure> {
    let spec = family_spec("family", family, n as u32)?;
    let g = make_graded_graph(&spec)?;
    let report = verify_identity(&g.graph, &g.degree, n)?;
    let text = format!("n = {n}: n!·rⁿ = {}, Σ = {}, {}", rational::show(&report.lhs), rational::show(&report.rhs),
        if report.matches { "match" } else { "MISMATCH" });
    Ok(Outcome { holds: report.matches, value: serde_json::to_value(&report).expect("report serializes"), text })
}

fn run_product(families: &[String], max_size: u32) -> Result<Outcome, Failure> {
    let factors = families
        .iter()
        .map(|f| Ok(make_point_poset(&family_spec("family", f, max_size)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let prod = product(&factors);
    let report = check_global(&prod.poset, &prod.weights, max_size as usize)?;
    let degree = rational::show(prod.weights.degree());
    let text = report_text(&format!("{} with r = {degree}", families.join(" × ")), &report);
    Ok(Outcome { holds: report.holds, value: json!({"families": families, "degree": degree, "report": report}), text })
}

fn run_factor(family: &str, max_rank: u32) -> Result<Outcome, Failure> {
    let fam = make_point_poset(&family_spec("family", family, max_rank)?)?;
    let parts = factor(&fam)?;
    let rows: Vec<Value> = parts
        .iter()
        .map(|f| json!({"points": f.poset.len(), "degree": rational::show(f.degree()),
            "minimal": f.poset.minimal_points().iter().map(|&q| f.poset.name(q).to_string()).collect::<Vec<_>>()}))
        .collect();
    let text = parts
        .iter()
        .enumerate()
        .map(|(i, f)| format!("factor {i}: {} points, r = {}", f.poset.len(), rational::show(f.degree())))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { holds: true, value: json!({"family": family, "factors": rows}), text })
}

fn linear_weights(fam: &WeightedPoset, text: &str) -> Result<WeightScheme, Failure> {
    let coeffs: Vec<Q> = text
        .split(',')
        .map(|s| rational::parse(s.trim()).map_err(|e| Failure::Usage(format!("--linear: {e}"))))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = coeffs.as_slice() else {
        return Err(Failure::Usage("--linear takes three values a,b,c".into()));
    };
    let p = &fam.poset;
    let mut values = Vec::new();
    for q in p.points() {
        let coords: Vec<i64> = p.name(q).split(',').map(|s| s.parse().unwrap_or(0)).collect();
        if coords.len() != 2 {
            return Err(Failure::Usage("--linear needs a two-dimensional grid family".into()));
        }
        values.push(a + b * rational::int(coords[0]) + c * rational::int(coords[1]));
    }
    Ok(WeightScheme::new(values, a.clone()))
}

fn run_truncate(family: &str, linear: &Option<String>, weights: &Option<PathBuf>, max_size: u32) -> Result<Outcome, Failure> {
    let fam = make_point_poset(&family_spec("family", family, max_size)?)?;
    let w = match linear {
        Some(text) => linear_weights(&fam, text)?,
        None => load_weights(&fam, weights)?,
    };
    let weighted = WeightedPoset { poset: fam.poset.clone(), weights: w };
    let truncated = truncate_points(&weighted);
    let report = truncate_lattice_check(&weighted, max_size as usize)?;
    let file = truncated.weights.to_file(&truncated.poset);
    let text = format!(
        "{} of {} points kept, r = {}\n{}",
        truncated.poset.len(),
        fam.poset.len(),
        file.degree,
        report_text("truncation", &report)
    );
    let value = json!({"family": family, "kept": truncated.poset.len(), "weights": file, "report": report});
    Ok(Outcome { holds: report.holds, value, text })
}

fn run_export(family: &str, max_rank: u32, lattice: bool, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let spec = family_spec("family", family, max_rank)?;
    let dot = if is_graph_only(&spec.kind) {
        return Err(Failure::Usage(format!("--family: {family} has no point poset to draw")));
    } else {
        let p = make_window(&spec.kind, max_rank)?;
        if lattice {
            enumerate_ideals(&p, max_rank as usize)?.to_dot(&p)
        } else {
            to_dot(&p)
        }
    };
    match out {
        Some(path) => {
            std::fs::write(path, &dot)?;
            Ok(Outcome { holds: true, value: json!({"written": path}), text: format!("wrote {}", path.display()) })
        }
        None => Ok(Outcome { holds: true, value: json!({"dot": dot}), text: dot }),
    }
}

const FAMILIES: &[(&str, &str)] = &[
    ("quadrant", "ℕ×ℕ, all weights 1, r = 1 (Young's lattice)"),
    ("octant", "{(x,y): y ≤ x}, solver-derived weights 1 and 2, r = 1 (shifted shapes)"),
    ("strip:k", "{(x,y): y < k}, w = k + x − y, r = k"),
    ("chain", "a single chain, w = 1, 2, 3, …, r = 1"),
    ("orthant:d", "corner of ℕ^d, for the solver only"),
    ("trivial", "the one-element lattice, r = 0"),
    ("zchain", "the integers, w(i ⋖ i+1) = i, r = 1, no bottom"),
    ("twos:B1B2…", "stacked edges and diamonds, r = 0, no bottom"),
    ("yf1", "Young–Fibonacci lattice, w = 1, r = 1"),
    ("scaled:q:F", "F with weights and r multiplied by q"),
    ("F*G", "product: disjoint union of points, degrees added"),
    ("custom:path", "JSON file with a poset and weights"),
];

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { family, max_size, mode, weights } => run_check(family, *max_size, *mode, weights, cli.seed),
        Command::Solve { family, max_rank, profile } => run_solve(family, *max_rank, *profile),
        Command::Classify { max_rank } => {
            let report = classify(*max_rank)?;
            Ok(Outcome { holds: report.holds(), text: report.to_text(), value: serde_json::to_value(&report).expect("serializes") })
        }
        Command::Rsk { family, perm, colors, sweep, map } => run_rsk(family, perm, colors, *sweep, *map),
        Command::Identity { family, n } => run_identity(family, *n),
        Command::Product { families, max_size } => run_product(families, *max_size),
        Command::Factor { family, max_rank } => run_factor(family, *max_rank),
        Command::Truncate { family, linear, weights, max_size } => run_truncate(family, linear, weights, *max_size),
        Command::ExportDot { family, max_rank, lattice, out } => run_export(family, *max_rank, *lattice, out),
        Command::Families => Ok(Outcome {
            holds: true,
            value: json!(FAMILIES.iter().map(|(n, d)| json!({"family": n, "description": d})).collect::<Vec<_>>()),
            text: FAMILIES.iter().map(|(n, d)| format!("{n:14} {d}")).collect::<Vec<_>>().join("\n"),
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("thread pool: {e}");
    }
    match run(&cli) {
        Ok(outcome) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&outcome.value).expect("JSON output")
            } else {
                outcome.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
