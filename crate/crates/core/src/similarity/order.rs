use std::cmp::Ordering;

use crate::seqtree::Node;

use super::SimilarityError;

/// Highest level at which a non-lexicographic order may be installed.
pub const MAX_CUSTOM_LEVEL: usize = 20;

/// A family `⟨<*_α⟩` of total orders on the levels of the full binary tree.
/// Levels without an explicit order use the lexicographic one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderFamily {
    /// `ranks[α]`: rank of each level-α node, indexed by [`Node::index`].
    ranks: Vec<Option<Vec<u32>>>,
}

impl OrderFamily {
    pub fn lexicographic() -> Self {
        OrderFamily::default()
    }

    pub fn is_lexicographic(&self) -> bool {
        self.ranks.iter().all(Option::is_none)
    }

    /// Install the order listing `order` from least to greatest at `level`.
    pub fn with_level(mut self, level: usize, order: &[Node]) -> Result<Self, SimilarityError> {
        if level > MAX_CUSTOM_LEVEL {
            return Err(SimilarityError::BadOrder(format!("custom orders stop at level {MAX_CUSTOM_LEVEL}")));
        }
        let size = 1usize << level;
        if order.len() != size {
            return Err(SimilarityError::BadOrder(format!("level {level} needs {size} nodes")));
        }
        let mut rank = vec![u32::MAX; size];
        for (r, n) in order.iter().enumerate() {
            if n.len() != level {
                return Err(SimilarityError::BadOrder(format!("{n:?} is not on level {level}")));
            }
            let slot = &mut rank[n.index() as usize];
            if *slot != u32::MAX {
                return Err(SimilarityError::BadOrder(format!("{n:?} listed twice")));
            }
            *slot = r as u32;
        }
        if self.ranks.len() <= level {
            self.ranks.resize(level + 1, None);
        }
        self.ranks[level] = Some(rank);
        Ok(self)
    }

    /// Reverse the lexicographic order at `level`.
    pub fn reversed_at(self, level: usize) -> Result<Self, SimilarityError> {
        let order: Vec<Node> = (0..1u64 << level.min(MAX_CUSTOM_LEVEL + 1))
            .rev()
            .map(|i| Node::from_index(i, level))
            .collect();
        self.with_level(level, &order)
    }

    /// Compare two level-`level` nodes under `<*_level`.
    #[inline]
    pub fn cmp_at(&self, level: usize, a: &Node, b: &Node) -> Ordering {
        debug_assert!(a.len() == level && b.len() == level);
        match self.ranks.get(level) {
            Some(Some(r)) => r[a.index() as usize].cmp(&r[b.index() as usize]),
            _ => a.cmp(b),
        }
    }

    #[inline]
    pub fn less(&self, level: usize, a: &Node, b: &Node) -> bool {
        self.cmp_at(level, a, b) == Ordering::Less
    }

    /// `x↾α <*_α y↾α`, undefined when either node is shorter than `α`.
    #[inline]
    pub fn order_fact(&self, alpha: usize, x: &Node, y: &Node) -> Option<bool> {
        if x.len() < alpha || y.len() < alpha {
            return None;
        }
        Some(self.less(alpha, &x.restrict(alpha), &y.restrict(alpha)))
    }

    /// Sort same-level nodes by `<*_level`.
    pub fn sort_level(&self, level: usize, nodes: &mut [Node]) {
        if self.ranks.get(level).is_some_and(Option::is_some) {
            nodes.sort_by(|a, b| self.cmp_at(level, a, b));
        } else {
            nodes.sort_unstable();
        }
    }
}
