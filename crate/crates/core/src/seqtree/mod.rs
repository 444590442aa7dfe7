//! Finite 0/1 sequences and depth-truncated subtrees of the full binary tree.

mod hop;
mod node;
mod thin;
mod tree;

use thiserror::Error;

pub use hop::hop_map;
pub use node::{split_point, Node, MAX_NODE_LEN};
pub use tree::{FiniteTree, TreeViolation, DEFAULT_DEPTH_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("not a 0/1 string: {0:?}")]
    BadNode(String),
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCap { depth: usize, cap: usize },
    #[error("node {node} longer than the tree depth {depth}")]
    TooLong { node: Node, depth: usize },
    #[error("the root is missing")]
    NoRoot,
    #[error("{node} is present but its parent is not")]
    NotClosed { node: Node },
    #[error("{node} has no child below depth {depth}")]
    Dead { node: Node, depth: usize },
    #[error("level {level} lists {node} of the wrong length")]
    WrongLevel { level: usize, node: Node },
    #[error("tree is not perfect: {0}")]
    NotPerfect(TreeViolation),
    #[error("tree is not Per_f: {0}")]
    NotPerF(TreeViolation),
    #[error("no nodes given")]
    Empty,
}
