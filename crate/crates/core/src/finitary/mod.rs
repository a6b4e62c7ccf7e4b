//! Finite complete sets of unifiers for PM2 and PM3.
//!
//! The pipeline: reduce the formula to rnf, collect the admissible models
//! on its disjuncts, turn each maximal one into a certified unifier, and
//! drop the redundant ones. The layered characteristic models live here
//! too; they serve as independent oracles for membership.

mod charmodel;
mod complete;
mod models;
mod rnf;

pub use charmodel::{
    all_cluster_defining_formulas, build_char_model, build_char_model_with,
    cluster_defining_formula, default_max_vars, CharCluster, CharModel, CharModelError,
};
pub use complete::{
    candidate_unifier, complete_set, complete_set_with, expanded_gamma, factor_through,
    literal_candidate, unifiability_transfer_check, Candidate, CandidateConstruction, CandidateLog,
    CompleteSet, FinitaryCaps, Rejection,
};
pub use models::{
    cocover_violation, enumerate_disjunct_models, gamma, is_admissible, maximal_disjunct_models,
    supported_core, DisjunctModel, ModelLimits,
};
pub use rnf::{to_rnf, to_rnf_with, RnfDisjunct, RnfError, RnfFormula, DEFAULT_MAX_DISJUNCTS};

use crate::decision::BudgetExceeded;
use crate::logic::Logic;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinitaryError {
    /// Only PM2 and PM3 go through this pipeline.
    Logic(Logic),
    Rnf(RnfError),
    SubsetCap {
        limit: u64,
    },
    EmptyCarrier,
    Budget(BudgetExceeded),
    /// The formula is unifiable but no model produced a certified unifier.
    NoCertifiedCandidate,
}

impl fmt::Display for FinitaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitaryError::Logic(l) => write!(
                f,
                "{l} is not handled by the finitary pipeline (use PM2 or PM3)"
            ),
            FinitaryError::Rnf(e) => e.fmt(f),
            FinitaryError::SubsetCap { limit } => {
                write!(f, "disjunct-model search exceeded {limit} carriers")
            }
            FinitaryError::EmptyCarrier => write!(f, "disjunct model has an empty carrier"),
            FinitaryError::Budget(e) => e.fmt(f),
            FinitaryError::NoCertifiedCandidate => {
                write!(
                    f,
                    "formula is unifiable but no candidate unifier could be certified"
                )
            }
        }
    }
}

impl core::error::Error for FinitaryError {}

impl From<RnfError> for FinitaryError {
    fn from(e: RnfError) -> Self {
        FinitaryError::Rnf(e)
    }
}

impl From<BudgetExceeded> for FinitaryError {
    fn from(e: BudgetExceeded) -> Self {
        FinitaryError::Budget(e)
    }
}

fn finitary_logic(logic: Logic) -> Result<(), FinitaryError> {
    match logic {
        Logic::Pm2 | Logic::Pm3 => Ok(()),
        other => Err(FinitaryError::Logic(other)),
    }
}
