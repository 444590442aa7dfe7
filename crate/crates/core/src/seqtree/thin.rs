use std::collections::HashSet;

use super::{FiniteTree, Node};

impl FiniteTree {
    /// A subtree in Per_u with exactly `m` splitting levels and all leaves at
    /// depth `D`, or `None` when no such subtree exists.
    ///
    /// The subtree is the closure of `m+1` threads descending from the root;
    /// a split replaces one thread by its two children. Search order: splits as
    /// early as possible, splitting threads in lexicographic order, idle
    /// threads preferring the left child. The first success is returned.
    pub fn thin_to_unsplit(&self, m: usize) -> Option<FiniteTree> {
        let mut failed = HashSet::new();
        let leaves = self.thin_dfs(0, vec![Node::ROOT], m, &mut failed)?;
        Some(FiniteTree::downward_closure(leaves).expect("threads reach the depth"))
    }

    fn thin_dfs(
        &self,
        level: usize,
        threads: Vec<Node>,
        left: usize,
        failed: &mut HashSet<(Vec<Node>, usize)>,
    ) -> Option<Vec<Node>> {
        if left == 0 {
            // Every node has a child, so idle threads always reach the depth.
            return Some(threads.iter().map(|t| self.leftmost_leaf(t)).collect());
        }
        if self.depth() - level < left || failed.contains(&(threads.clone(), left)) {
            return None;
        }
        let options: Vec<Vec<u8>> = threads
            .iter()
            .map(|t| (0..2).filter(|&b| self.contains(&t.child(b))).collect())
            .collect();
        let split_choices = threads
            .iter()
            .enumerate()
            .filter(|(_, t)| self.is_splitting(t))
            .map(|(i, _)| Some(i))
            .chain(std::iter::once(None));
        for split in split_choices {
            let idle: Vec<usize> = (0..threads.len()).filter(|&i| Some(i) != split).collect();
            let rest = left - usize::from(split.is_some());
            for dirs in direction_vectors(idle.iter().map(|&i| options[i].as_slice())) {
                let mut next = Vec::with_capacity(threads.len() + 1);
                if let Some(i) = split {
                    next.push(threads[i].child(0));
                    next.push(threads[i].child(1));
                }
                next.extend(idle.iter().zip(&dirs).map(|(&i, &b)| threads[i].child(b)));
                next.sort_unstable();
                if let Some(found) = self.thin_dfs(level + 1, next, rest, failed) {
                    return Some(found);
                }
            }
        }
        failed.insert((threads, left));
        None
    }

    fn leftmost_leaf(&self, t: &Node) -> Node {
        let mut cur = *t;
        while cur.len() < self.depth() {
            cur = if self.contains(&cur.child(0)) { cur.child(0) } else { cur.child(1) };
        }
        cur
    }
}

/// Cartesian product of per-thread choices, first coordinate slowest.
fn direction_vectors<'a>(options: impl Iterator<Item = &'a [u8]>) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&b| {
                    let mut v = prefix.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let full3 = FiniteTree::full(3).unwrap();
        let t = full3.thin_to_unsplit(2).unwrap();
        assert!(t.is_per_u() && t.is_subtree_of(&full3));
        assert_eq!(t.split_levels_unchecked(), vec![0, 1]);
        assert_eq!(t.level(3).len(), 3);
        let t0 = full3.thin_to_unsplit(0).unwrap();
        assert_eq!(t0.nodes().map(|n| n.to_string()).collect::<Vec<_>>(), ["", "0", "00", "000"]);
        assert!(FiniteTree::full(1).unwrap().thin_to_unsplit(2).is_none());
        assert!(full3.thin_to_unsplit(3).is_some());
        assert!(full3.thin_to_unsplit(4).is_none());
    }
}
