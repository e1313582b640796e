//! Reduction of higher-derivative and second-order theories to the
//! first-order kinematic form.

mod dkp;
mod ostrogradsky;

pub use dkp::{
    dkp_minimal_polynomial_check, duffin_kemmer_construct, verify_dkp_algebra, BetaSet, DkpReport, Metric,
    MinimalPolynomialCheck, PrintedRelation, PrintedRelationResult, TripleResult, PSI_BAR_LAYOUT, PSI_LAYOUT,
};
pub use ostrogradsky::{
    ostrogradsky_reduce, DerivativePolynomial, EliminationCheck, MomentumCombination, ReductionResult,
};
