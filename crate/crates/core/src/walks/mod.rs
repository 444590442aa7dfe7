//! Walks along the canonical clubs, the colorings built from them, and the
//! finite realization checkers.

mod colorings;
mod realize;
mod stepup;
mod trace;
mod witness;

use thiserror::Error;

use crate::ordinals::{Ordinal, OrdinalError};

pub use colorings::{
    d1_color, d2_color, d_color, sample_tuples, sweep, sweep_row, write_sweep_csv, Branch, D1Eval, D2Part, DEval,
    SweepRow, WSet,
};
pub use realize::{
    realization_check, square_bracket_count, stg_check, ArityCount, ColoringFamily, OrdinalFamily, Realization,
    SeededColoring, StgInput, StgOutcome,
};
pub use stepup::{step_up, StepUp};
pub use trace::{eps, n_triple, walk, WalkTrace};
pub use witness::{Witness, WitnessColorings};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk needs 0 < alpha < beta, got beta = {beta}, alpha = {alpha}")]
    BadPair { beta: Ordinal, alpha: Ordinal },
    #[error("m = {m} exceeds the walk length {k}")]
    StepOutOfRange { m: usize, k: usize },
    #[error("arguments must be strictly decreasing and positive")]
    NotDecreasing,
    #[error("arity {got} is not allowed here ({expected})")]
    Arity { expected: String, got: usize },
    #[error("invalid witness specification: {0}")]
    Witness(String),
    #[error("labeling is not injective: {0} and {1} share a branch")]
    NotInjective(usize, usize),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// Check `a[0] > a[1] > ... > a[last] > 0`.
pub(crate) fn check_decreasing(a: &[Ordinal]) -> Result<(), WalkError> {
    if a.windows(2).all(|w| w[0] > w[1]) && a.last().is_some_and(|x| !x.is_zero()) {
        Ok(())
    } else {
        Err(WalkError::NotDecreasing)
    }
}
