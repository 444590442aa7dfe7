use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Node, TreeError, MAX_NODE_LEN};

/// Largest depth for which [`FiniteTree::full`] materializes the tree.
pub const DEFAULT_DEPTH_CAP: usize = 16;

/// First violation found by a perfectness predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    /// A node of length `< D−1` with no splitting node at or below it above depth `D`.
    NoSplitBelow { node: Node },
    /// A level where some but not all nodes split.
    MixedLevel { level: usize },
    /// A level with two splitting nodes.
    TwoSplits { level: usize, first: Node, second: Node },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::NoSplitBelow { node } => write!(f, "no splitting node at or below {node:?}"),
            TreeViolation::MixedLevel { level } => write!(f, "level {level} splits only partly"),
            TreeViolation::TwoSplits { level, first, second } => {
                write!(f, "level {level} splits at both {first:?} and {second:?}")
            }
        }
    }
}

/// A subtree `T` of the binary tree truncated at depth `D`: contains the root,
/// is closed under initial segments, and every node shorter than `D` has a child.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct FiniteTree {
    depth: usize,
    levels: Vec<Vec<Node>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    depth: usize,
    levels: Vec<Vec<Node>>,
}

impl TryFrom<TreeJson> for FiniteTree {
    type Error = TreeError;
    fn try_from(j: TreeJson) -> Result<Self, TreeError> {
        for (l, level) in j.levels.iter().enumerate() {
            if let Some(bad) = level.iter().find(|n| n.len() != l) {
                return Err(TreeError::WrongLevel { level: l, node: *bad });
            }
        }
        FiniteTree::from_nodes(j.depth, j.levels.into_iter().flatten())
    }
}

impl From<FiniteTree> for TreeJson {
    fn from(t: FiniteTree) -> Self {
        TreeJson { depth: t.depth, levels: t.levels }
    }
}

impl FiniteTree {
    /// Validate and build a tree of depth `depth` from its node set.
    pub fn from_nodes<I: IntoIterator<Item = Node>>(depth: usize, nodes: I) -> Result<Self, TreeError> {
        if depth > MAX_NODE_LEN {
            return Err(TreeError::DepthCap { depth, cap: MAX_NODE_LEN });
        }
        let mut levels = vec![Vec::new(); depth + 1];
        for n in nodes {
            if n.len() > depth {
                return Err(TreeError::TooLong { node: n, depth });
            }
            levels[n.len()].push(n);
        }
        for l in levels.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        let t = FiniteTree { depth, levels };
        t.validate()?;
        Ok(t)
    }

    /// Downward closure of `nodes`; the depth is the longest node.
    pub fn downward_closure<I: IntoIterator<Item = Node>>(nodes: I) -> Result<Self, TreeError> {
        let nodes: Vec<Node> = nodes.into_iter().collect();
        let depth = nodes.iter().map(Node::len).max().ok_or(TreeError::Empty)?;
        let mut all = Vec::new();
        for n in nodes {
            for l in 0..=n.len() {
                all.push(n.restrict(l));
            }
        }
        FiniteTree::from_nodes(depth, all)
    }

    /// The full binary tree of depth `depth ≤ DEFAULT_DEPTH_CAP`.
    pub fn full(depth: usize) -> Result<Self, TreeError> {
        if depth > DEFAULT_DEPTH_CAP {
            return Err(TreeError::DepthCap { depth, cap: DEFAULT_DEPTH_CAP });
        }
        let levels = (0..=depth)
            .map(|l| (0..1u64 << l).map(|i| Node::from_index(i, l)).collect())
            .collect();
        Ok(FiniteTree { depth, levels })
    }

    fn validate(&self) -> Result<(), TreeError> {
        if self.levels[0].is_empty() {
            return Err(TreeError::NoRoot);
        }
        for l in 1..=self.depth {
            for n in &self.levels[l] {
                if !self.contains(&n.parent().expect("nonroot")) {
                    return Err(TreeError::NotClosed { node: *n });
                }
            }
        }
        for l in 0..self.depth {
            for n in &self.levels[l] {
                if !self.contains(&n.child(0)) && !self.contains(&n.child(1)) {
                    return Err(TreeError::Dead { node: *n, depth: self.depth });
                }
            }
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Nodes of length `l`, in lexicographic order (empty past the depth).
    pub fn level(&self, l: usize) -> &[Node] {
        self.levels.get(l).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<Node>] {
        &self.levels
    }

    pub fn contains(&self, n: &Node) -> bool {
        self.levels.get(n.len()).is_some_and(|l| l.binary_search(n).is_ok())
    }

    /// All nodes, shortest first and lexicographic within a level.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.levels.iter().flatten()
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Every node of `self` is in `other`.
    pub fn is_subtree_of(&self, other: &FiniteTree) -> bool {
        self.nodes().all(|n| other.contains(n))
    }

    pub fn is_splitting(&self, n: &Node) -> bool {
        n.len() < self.depth && self.contains(&n.child(0)) && self.contains(&n.child(1))
    }

    fn raw_splitting_nodes(&self) -> Vec<Node> {
        self.nodes().filter(|n| self.is_splitting(n)).copied().collect()
    }

    fn raw_split_levels(&self) -> Vec<usize> {
        (0..self.depth).filter(|&l| self.level(l).iter().any(|n| self.is_splitting(n))).collect()
    }

    /// Truncated perfectness: every node of length `< D−1` has a splitting node
    /// at or below it.
    pub fn check_perfect(&self) -> Result<(), TreeViolation> {
        if self.depth < 2 {
            return Ok(());
        }
        // has[l][i]: the i-th node of level l has a splitting node at or below it.
        let mut has: Vec<Vec<bool>> = vec![Vec::new(); self.depth + 1];
        has[self.depth] = vec![false; self.level(self.depth).len()];
        for l in (0..self.depth).rev() {
            let next = self.level(l + 1);
            let below = &has[l + 1];
            let flag = |c: Node| next.binary_search(&c).ok().map(|i| below[i]);
            has[l] = self
                .level(l)
                .iter()
                .map(|n| {
                    let (c0, c1) = (flag(n.child(0)), flag(n.child(1)));
                    (c0.is_some() && c1.is_some()) || c0 == Some(true) || c1 == Some(true)
                })
                .collect();
        }
        for l in 0..self.depth - 1 {
            if let Some(i) = has[l].iter().position(|&h| !h) {
                return Err(TreeViolation::NoSplitBelow { node: self.level(l)[i] });
            }
        }
        Ok(())
    }

    pub fn is_perfect(&self) -> bool {
        self.check_perfect().is_ok()
    }

    /// Per_f: at every level either all nodes split or none do.
    pub fn check_per_f(&self) -> Result<(), TreeViolation> {
        for l in 0..self.depth {
            let lv = self.level(l);
            let k = lv.iter().filter(|n| self.is_splitting(n)).count();
            if k != 0 && k != lv.len() {
                return Err(TreeViolation::MixedLevel { level: l });
            }
        }
        Ok(())
    }

    pub fn is_per_f(&self) -> bool {
        self.check_per_f().is_ok()
    }

    /// Per_u: at most one splitting node per level.
    pub fn check_per_u(&self) -> Result<(), TreeViolation> {
        for l in 0..self.depth {
            let mut it = self.level(l).iter().filter(|n| self.is_splitting(n));
            if let (Some(a), Some(b)) = (it.next(), it.next()) {
                return Err(TreeViolation::TwoSplits { level: l, first: *a, second: *b });
            }
        }
        Ok(())
    }

    pub fn is_per_u(&self) -> bool {
        self.check_per_u().is_ok()
    }

    /// `sp(T)`, the nodes with both children in `T`. Requires perfectness.
    pub fn splitting_nodes(&self) -> Result<Vec<Node>, TreeError> {
        self.check_perfect().map_err(TreeError::NotPerfect)?;
        Ok(self.raw_splitting_nodes())
    }

    /// `SP(T)`, the lengths of splitting nodes. Requires perfectness.
    pub fn split_levels(&self) -> Result<Vec<usize>, TreeError> {
        self.check_perfect().map_err(TreeError::NotPerfect)?;
        Ok(self.raw_split_levels())
    }

    /// Split levels without the perfectness precondition.
    pub fn split_levels_unchecked(&self) -> Vec<usize> {
        self.raw_split_levels()
    }

    /// `⟨η(j) : j ∈ SP(T), j < lg η⟩` for any node, given the split levels.
    pub fn collapse_node(levels: &[usize], n: &Node) -> Node {
        let mut out = Node::ROOT;
        for &j in levels {
            match n.bit(j) {
                Some(b) => out = out.child(b),
                None => break,
            }
        }
        out
    }

    /// `clp_T` on `sp(T)`. Requires Per_f.
    pub fn clp_map(&self) -> Result<BTreeMap<Node, Node>, TreeError> {
        self.check_per_f().map_err(TreeError::NotPerF)?;
        let levels = self.raw_split_levels();
        Ok(self
            .raw_splitting_nodes()
            .into_iter()
            .map(|n| (n, Self::collapse_node(&levels, &n)))
            .collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trees serialize")
    }
}
