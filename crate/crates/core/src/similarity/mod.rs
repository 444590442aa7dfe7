//! Strong similarity and similarity of node tuples, similarity types, the
//! h(n) census, and end-homogeneity / homogeneity / canonicity checkers.

mod census;
mod homogeneity;
mod order;
mod relation;

use thiserror::Error;

use crate::seqtree::TreeError;

pub use census::{census_brute, factorial, h_of_n, Census, CensusClass, SplitReading, H_MAX_N};
pub use homogeneity::{
    canonical_check, enumerate_strong_types, is_end_homogeneous, is_homogeneous, is_nice, orbit_color_counts,
    CanonicalWitness, EndHomWitness, HomMode, HomWitness, NiceWitness, OrbitCount,
};
pub use order::{OrderFamily, MAX_CUSTOM_LEVEL};
pub use relation::{shape_code, similar, similar_code, similarity_type, strongly_similar, SimilarityType};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("tuple arities differ: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("coloring arity {coloring} does not match {expected}")]
    ColoringArity { coloring: usize, expected: usize },
    #[error("bad order family: {0}")]
    BadOrder(String),
    #[error("unknown split reading {0:?} (expected meets, pairs or quadruple)")]
    BadReading(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("branch labeling is not one-to-one: {0}")]
    NotInjective(String),
    #[error("branch labeling is not order-compatible: {0}")]
    NotOrderCompatible(String),
}
