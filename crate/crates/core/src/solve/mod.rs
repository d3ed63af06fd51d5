//! Weights as unknowns: constraint systems, exact solving, positivity, and the
//! bottom-chain case analysis that leads to the classification.

mod cases;
mod classify;
mod extended;
mod linalg;
mod lp;
mod positivity;
mod profile;
mod propagate;
mod system;

pub use cases::{bottomless_case, enumerate_reciprocal_cases, strip_family_members, CaseRow, EliminationLemma, Verdict};
pub use classify::{classify, ClassificationReport, Survivor};
pub use extended::Extended;
pub use profile::{bottom_chain_profile, BottomChainProfile};
pub use propagate::{
    propagate, propagate_elimination, Cell, Contradiction, EliminationTrace, PropagationStart, PropagationTrace, StepEvent,
    TraceStep, ELIMINATION_LEVEL_CAP,
};
pub use linalg::{solve, AffineSolutionSpace, InfeasibilityCertificate};
pub use lp::{maximize, LpOutcome};
pub use positivity::{positive_point, positivity_witness, Positivity, PositivityCertificate};
pub use system::{build_constraints, build_partition_constraints, degree_index, LinearSystem, Row, Unknown};

use crate::poset::PosetError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("inconsistent constraints: {} rows combine to 0 = {}", .0.multipliers.len(), .0.rhs)]
    Infeasible(InfeasibilityCertificate),
    #[error("sibling {sibling} of {point} has no unique partner")]
    NonUniquePartner { point: String, sibling: String },
    #[error(transparent)]
    Poset(PosetError),
    #[error("the bottom chain fills the window; the poset is a path")]
    ChainUnbounded,
    #[error("the poset above the bottom chain is finite")]
    FiniteChain,
    #[error("no strictly positive solution exists")]
    NoPositiveSolution(PositivityCertificate),
    #[error("({row_limit}, {column_limit}) is not one of the eliminated cases")]
    NotAnEliminationCase { row_limit: String, column_limit: String },
    #[error("building a family: {0}")]
    Family(String),
    #[error(transparent)]
    Verify(#[from] crate::verify::VerifyError),
    #[error("level {level} has a single cell with free weight; the propagation is not forced")]
    AmbiguousLevel { level: u32 },
}

impl From<PosetError> for SolveError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::NonUniquePartner { point, sibling } => SolveError::NonUniquePartner { point, sibling },
            other => SolveError::Poset(other),
        }
    }
}
