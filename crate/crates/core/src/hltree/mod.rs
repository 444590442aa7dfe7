//! Level colorings, Halpern–Läuchli certificates, homogeneous-subtree search,
//! and the trees `T*_k` with their embeddings.

mod coloring;
mod hl;
mod subtree;
mod tstar;

use serde::Serialize;
use thiserror::Error;

use crate::seqtree::{Node, TreeError};
use crate::similarity::SimilarityError;

pub use coloring::{ColoringSpec, LevelColoring, RuleSpec, TableEntry};
pub use hl::{search_hl, verify_hl, HlCertificate, HlFailure};
pub use subtree::{search_endhom_subtree, SubtreeMode, SubtreeQuery, SubtreeResult};
pub use tstar::{check_tr_emb, t_family, tr_emb, tr_emb_count, tstar, Embedding, TSTAR_MAX_K};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HlError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bad table: {0}")]
    Table(String),
    #[error("incomplete table: no entry for {missing:?}")]
    IncompleteTable { missing: Vec<Node> },
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
}

/// Environment variable overriding the default node budget.
pub const CAP_ENV: &str = "PARTLAB_CAP_NODES";

/// Search effort limit, counted in candidate nodes tried per search task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { nodes: 5_000_000 }
    }
}

impl SearchBudget {
    /// The default budget, or the value of `PARTLAB_CAP_NODES` when set.
    pub fn from_env() -> Result<Self, HlError> {
        match std::env::var(CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|nodes| SearchBudget { nodes })
                .map_err(|_| HlError::InvalidArgument(format!("{CAP_ENV}={v:?} is not a node count"))),
            Err(_) => Ok(SearchBudget::default()),
        }
    }
}

/// Result of a bounded exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole space was searched without success.
    Exhausted,
    /// The node budget ran out first; nothing is known.
    CapExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}
