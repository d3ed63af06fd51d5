//! The family grammar: `name[:param[:param]]`, products joined by `*`.

use super::FamilyError;
use crate::rational::{self, Q};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// One block of a `twos` pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwosBlock {
    /// A single edge between consecutive ranks.
    Chain,
    /// A diamond: one element, two middle elements, one element.
    Diamond,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Quadrant,
    Octant,
    Strip(u32),
    Chain,
    ZChain,
    Twos(Vec<TwosBlock>),
    Yf1,
    /// The corner of ℕ^d; has no canonical weights for d ≥ 3.
    Orthant(u32),
    /// The one-element lattice.
    Trivial,
    Product(Vec<FamilyKind>),
    Scaled(Box<FamilyKind>, Q),
    Custom(PathBuf),
}

/// A family together with the window it is cut to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub max_rank: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, max_rank: u32) -> Self {
        FamilySpec { kind, max_rank }
    }

    pub fn parse(text: &str, max_rank: u32) -> Result<Self, FamilyError> {
        Ok(FamilySpec { kind: text.parse()?, max_rank })
    }
}

fn bad(text: &str, why: &str) -> FamilyError {
    FamilyError::Parse(format!("{text:?}: {why}"))
}

fn positive_int(text: &str, field: &str) -> Result<u32, FamilyError> {
    match field.parse::<u32>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(bad(text, "expected a positive integer parameter")),
    }
}

fn parse_twos(text: &str, pattern: &str) -> Result<Vec<TwosBlock>, FamilyError> {
    let mut blocks = Vec::new();
    let mut rest = pattern;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("B1") {
            blocks.push(TwosBlock::Chain);
            rest = r;
        } else if let Some(r) = rest.strip_prefix("B2") {
            blocks.push(TwosBlock::Diamond);
            rest = r;
        } else {
            return Err(bad(text, "twos pattern is a word over B1 and B2"));
        }
    }
    if blocks.is_empty() {
        return Err(bad(text, "twos pattern is empty"));
    }
    Ok(blocks)
}

impl FromStr for FamilyKind {
    type Err = FamilyError;

    fn from_str(text: &str) -> Result<Self, FamilyError> {
        let text = text.trim();
        let factors: Vec<&str> = text.split('*').collect();
        if factors.len() > 1 && !text.starts_with("custom:") && !text.starts_with("scaled:") {
            return factors.iter().map(|f| f.parse()).collect::<Result<_, _>>().map(FamilyKind::Product);
        }
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let no_params = |kind: FamilyKind| if params.is_empty() { Ok(kind) } else { Err(bad(text, "takes no parameters")) };
        match name {
            "quadrant" => no_params(FamilyKind::Quadrant),
            "octant" => no_params(FamilyKind::Octant),
            "chain" => no_params(FamilyKind::Chain),
            "zchain" | "z-chain" => no_params(FamilyKind::ZChain),
            "yf1" => no_params(FamilyKind::Yf1),
            "trivial" => no_params(FamilyKind::Trivial),
            "strip" => Ok(FamilyKind::Strip(positive_int(text, params)?)),
            "orthant" => Ok(FamilyKind::Orthant(positive_int(text, params)?)),
            "twos" => Ok(FamilyKind::Twos(parse_twos(text, params)?)),
            "scaled" => {
                let (factor, base) = params.split_once(':').ok_or_else(|| bad(text, "expected scaled:<factor>:<family>"))?;
                let factor = rational::parse(factor).map_err(|e| bad(text, &e))?;
                if !rational::is_positive(&factor) {
                    return Err(bad(text, "scale factor must be positive"));
                }
                Ok(FamilyKind::Scaled(Box::new(base.parse()?), factor))
            }
            "custom" if !params.is_empty() => Ok(FamilyKind::Custom(PathBuf::from(params))),
            _ => Err(bad(text, "unknown family")),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Quadrant => write!(f, "quadrant"),
            FamilyKind::Octant => write!(f, "octant"),
            FamilyKind::Strip(k) => write!(f, "strip:{k}"),
            FamilyKind::Chain => write!(f, "chain"),
            FamilyKind::ZChain => write!(f, "zchain"),
            FamilyKind::Twos(blocks) => {
                write!(f, "twos:")?;
                blocks.iter().try_for_each(|b| write!(f, "{}", if *b == TwosBlock::Chain { "B1" } else { "B2" }))
            }
            FamilyKind::Yf1 => write!(f, "yf1"),
            FamilyKind::Orthant(d) => write!(f, "orthant:{d}"),
            FamilyKind::Trivial => write!(f, "trivial"),
            FamilyKind::Product(parts) => {
                let shown: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", shown.join("*"))
            }
            FamilyKind::Scaled(base, k) => write!(f, "scaled:{}:{base}", rational::show(k)),
            FamilyKind::Custom(path) => write!(f, "custom:{}", path.display()),
        }
    }
}
