//! Point posets of the distributive families and their canonical weights.

use super::{FamilyError, FamilyKind, FamilySpec};
use crate::poset::{PointId, PointPosetWindow, WindowBuilder};
use crate::rational::{self, Q};
use crate::solve::{build_constraints, positivity_witness, solve};
use crate::weights::{WeightFile, WeightScheme};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

/// A point poset window with a weighting.
#[derive(Clone, Debug)]
pub struct WeightedPoset {
    pub poset: PointPosetWindow,
    pub weights: WeightScheme,
}

/// On-disk form of `custom:<path>`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CustomFamilyFile {
    pub poset: crate::poset::PosetFile,
    pub weights: Option<WeightFile>,
}

fn coordinate_name(coords: &[u32]) -> String {
    coords.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn coordinates(name: &str) -> Option<Vec<u32>> {
    name.split(',').map(|c| c.parse().ok()).collect()
}

/// Lattice points of `ℕ^dims` with coordinate sum at most `max_rank` that satisfy
/// `keep`, covering each other by unit steps. Names are `"x,y,..."`.
pub fn grid_window(max_rank: u32, dims: usize, keep: impl Fn(&[u32]) -> bool) -> PointPosetWindow {
    fn compositions(total: u32, dims: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == dims {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            compositions(total - first, dims, prefix, out);
            prefix.pop();
        }
    }
    let mut b = WindowBuilder::new(max_rank);
    let mut ids: HashMap<Vec<u32>, PointId> = HashMap::new();
    for rank in 0..=max_rank {
        let mut level = Vec::new();
        compositions(rank, dims, &mut Vec::new(), &mut level);
        level.sort();
        for c in level.into_iter().filter(|c| keep(c)) {
            let id = b.point(coordinate_name(&c), rank).expect("coordinates are unique");
            for axis in 0..dims {
                if c[axis] > 0 {
                    let mut lower = c.clone();
                    lower[axis] -= 1;
                    if let Some(&lo) = ids.get(&lower) {
                        b.cover_ids(lo, id);
                    }
                }
            }
            ids.insert(c, id);
        }
    }
    b.build().expect("grid windows are graded")
}

/// The bare point poset of a distributive family.
pub fn make_window(kind: &FamilyKind, max_rank: u32) -> Result<PointPosetWindow, FamilyError> {
    Ok(match kind {
        FamilyKind::Quadrant => grid_window(max_rank, 2, |_| true),
        FamilyKind::Octant => grid_window(max_rank, 2, |c| c[1] <= c[0]),
        FamilyKind::Strip(k) => grid_window(max_rank, 2, |c| c[1] < *k),
        FamilyKind::Chain => grid_window(max_rank, 2, |c| c[1] == 0),
        FamilyKind::Orthant(d) => grid_window(max_rank, *d as usize, |_| true),
        FamilyKind::Trivial => PointPosetWindow::empty(max_rank),
        FamilyKind::Scaled(base, _) => make_window(base, max_rank)?,
        FamilyKind::Product(_) | FamilyKind::Custom(_) => make_point_poset(&FamilySpec::new(kind.clone(), max_rank))?.poset,
        FamilyKind::ZChain | FamilyKind::Twos(_) | FamilyKind::Yf1 => return Err(FamilyError::NotDistributive(kind.to_string())),
    })
}

/// Point poset and canonical weights of a distributive family.
pub fn make_point_poset(spec: &FamilySpec) -> Result<WeightedPoset, FamilyError> {
    let max_rank = spec.max_rank;
    let weighted = |poset: PointPosetWindow, degree: Q, f: &dyn Fn(&[u32]) -> Q| {
        let weights = WeightScheme::from_fn(&poset, degree, |q| f(&coordinates(poset.name(q)).expect("grid names")));
        WeightedPoset { poset, weights }
    };
    Ok(match &spec.kind {
        FamilyKind::Quadrant => weighted(make_window(&spec.kind, max_rank)?, Q::one(), &|_| Q::one()),
        FamilyKind::Strip(k) => {
            let k = i64::from(*k);
            weighted(make_window(&spec.kind, max_rank)?, rational::int(k), &|c| rational::int(k + c[0] as i64 - c[1] as i64))
        }
        FamilyKind::Chain => weighted(make_window(&spec.kind, max_rank)?, Q::one(), &|c| rational::int(c[0] as i64 + 1)),
        FamilyKind::Octant => {
            let poset = make_window(&spec.kind, max_rank)?;
            let derive_rank = max_rank.max(OCTANT_MIN_RANK);
            if derive_rank == max_rank {
                let weights = octant_weights(&poset)?;
                WeightedPoset { poset, weights }
            } else {
                let larger = make_window(&spec.kind, derive_rank)?;
                let full = octant_weights(&larger)?;
                let weights = WeightScheme::from_fn(&poset, full.degree().clone(), |q| {
                    full.weight(larger.require(poset.name(q)).expect("smaller window is a subset")).clone()
                });
                WeightedPoset { poset, weights }
            }
        }
        FamilyKind::Trivial => {
            let poset = PointPosetWindow::empty(max_rank);
            let weights = WeightScheme::new(Vec::new(), Q::zero());
            WeightedPoset { poset, weights }
        }
        FamilyKind::Scaled(base, factor) => {
            let inner = make_point_poset(&FamilySpec::new((**base).clone(), max_rank))?;
            super::scale(&inner, factor)
        }
        FamilyKind::Product(parts) => {
            let factors = parts
                .iter()
                .map(|k| make_point_poset(&FamilySpec::new(k.clone(), max_rank)))
                .collect::<Result<Vec<_>, _>>()?;
            super::product(&factors)
        }
        FamilyKind::Custom(path) => load_custom(path, max_rank)?,
        FamilyKind::Orthant(_) => return Err(FamilyError::NoCanonicalWeights(spec.kind.to_string())),
        FamilyKind::ZChain | FamilyKind::Twos(_) | FamilyKind::Yf1 => {
            return Err(FamilyError::NotDistributive(spec.kind.to_string()))
        }
    })
}

fn load_custom(path: &PathBuf, max_rank: u32) -> Result<WeightedPoset, FamilyError> {
    let text = std::fs::read_to_string(path).map_err(|e| FamilyError::Io(format!("{}: {e}", path.display())))?;
    let file: CustomFamilyFile = serde_json::from_str(&text).map_err(|e| FamilyError::Parse(e.to_string()))?;
    let full = PointPosetWindow::from_file(&file.poset)?;
    let weights = match &file.weights {
        Some(w) => WeightScheme::from_file(&full, w)?,
        None => return Err(FamilyError::NoCanonicalWeights(format!("custom:{}", path.display()))),
    };
    if max_rank >= full.max_rank() {
        return Ok(WeightedPoset { poset: full, weights });
    }
    let mut b = WindowBuilder::new(max_rank).complete_below(full.complete_below().min(max_rank));
    let mut map = vec![None; full.len()];
    for q in full.points().filter(|&q| full.rank(q) <= max_rank) {
        map[q.index()] = Some(b.point(full.name(q), full.rank(q))?);
    }
    for q in full.points() {
        for &u in full.up(q) {
            if let (Some(lo), Some(hi)) = (map[q.index()], map[u.index()]) {
                b.cover_ids(lo, hi);
            }
        }
    }
    let poset = b.build()?;
    let weights = WeightScheme::from_fn(&poset, weights.degree().clone(), |q| {
        weights.weight(full.require(poset.name(q)).expect("restricted point exists")).clone()
    });
    Ok(WeightedPoset { poset, weights })
}

/// Below this rank the octant window leaves the weights underdetermined.
const OCTANT_MIN_RANK: u32 = 4;

fn octant_cache() -> &'static Mutex<HashMap<u32, WeightScheme>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, WeightScheme>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn fixture_path(max_rank: u32) -> Option<PathBuf> {
    std::env::var_os("FOMIN_FIXTURE_DIR").map(|dir| PathBuf::from(dir).join(format!("octant-{max_rank}.weights.json")))
}

/// The octant's weights are derived, not tabulated: the window's solution space
/// is a single ray, and its primitive positive generator is normalized to `r = 1`.
fn octant_weights(poset: &PointPosetWindow) -> Result<WeightScheme, FamilyError> {
    let max_rank = poset.max_rank();
    if let Some(w) = octant_cache().lock().expect("cache lock").get(&max_rank) {
        return Ok(w.clone());
    }
    let from_disk = fixture_path(max_rank)
        .and_then(|path| std::fs::read_to_string(path).ok())
        .and_then(|text| WeightScheme::from_json(poset, &text).ok());
    let weights = match from_disk {
        Some(w) => w,
        None => {
            let w = derive_octant_weights(poset)?;
            if let Some(path) = fixture_path(max_rank) {
                // A failed cache write only costs a re-derivation next time.
                let _ = std::fs::create_dir_all(path.parent().expect("fixture path has a parent"))
                    .and_then(|_| std::fs::write(&path, w.to_json(poset)));
            }
            w
        }
    };
    octant_cache().lock().expect("cache lock").insert(max_rank, weights.clone());
    Ok(weights)
}

fn derive_octant_weights(poset: &PointPosetWindow) -> Result<WeightScheme, FamilyError> {
    let space = solve(&build_constraints(poset)?)?;
    if space.dimension() != 1 {
        return Err(FamilyError::Derivation(format!("octant solution space has dimension {}", space.dimension())));
    }
    let w = positivity_witness(&space, poset).map_err(|_| FamilyError::Derivation("octant has no positive weighting".into()))?;
    let degree = w.degree().clone();
    Ok(w.scaled(&(Q::one() / degree)))
}
