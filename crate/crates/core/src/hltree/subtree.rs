use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::coloring::{for_each_subset, SetColoring};
use crate::seqtree::{FiniteTree, Node};
use crate::similarity::{similar_code, similarity_type, OrderFamily, SimilarityType};

use super::{HlError, LevelColoring, SearchBudget, SearchOutcome};

/// Target property of [`search_endhom_subtree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubtreeMode {
    /// End-homogeneous.
    Eht,
    /// Almost homogeneous (strong similarity).
    Aht,
    /// Homogeneous (similarity).
    Ht,
}

#[derive(Debug, Clone)]
pub struct SubtreeQuery {
    pub depth: usize,
    pub mode: SubtreeMode,
    /// Demand every level split entirely or not at all.
    pub per_f: bool,
    /// Bounded-orbit variant: instead of homogeneity, every class of sets on
    /// split levels (taken across levels) attains fewer than this many colors.
    pub orbit_bound: Option<usize>,
    pub min_split_levels: usize,
    pub orders: OrderFamily,
}

impl SubtreeQuery {
    pub fn new(depth: usize, mode: SubtreeMode) -> Self {
        SubtreeQuery {
            depth,
            mode,
            per_f: false,
            orbit_bound: None,
            min_split_levels: 0,
            orders: OrderFamily::lexicographic(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeResult {
    pub tree: FiniteTree,
    pub orders: OrderFamily,
}

/// Depth-first search for a perfect subtree of depth `depth` with at least
/// `min_split_levels` split levels on which `d` has the requested property,
/// under the fixed order family of the query.
///
/// Trees are built level by level. Each node keeps its left child, its right
/// child, or both, in that order of preference (under Per_f: one child per
/// node in lexicographic order of choices, then the whole level splitting).
pub fn search_endhom_subtree(
    d: &LevelColoring,
    q: &SubtreeQuery,
    budget: SearchBudget,
) -> Result<SearchOutcome<SubtreeResult>, HlError> {
    if q.depth > d.depth() {
        return Err(HlError::InvalidArgument(format!("depth {} exceeds the coloring depth {}", q.depth, d.depth())));
    }
    if q.orbit_bound.is_some() && q.mode == SubtreeMode::Eht {
        return Err(HlError::InvalidArgument("the orbit bound applies to aht and ht only".into()));
    }
    let mut s = Search { d, q, steps: 0, budget: budget.nodes };
    let mut levels = vec![vec![Node::ROOT]];
    let mut splits = Vec::new();
    Ok(match s.dfs(&mut levels, &mut splits, &HashMap::new()) {
        Step::Done(tree) => SearchOutcome::Found(SubtreeResult { tree, orders: q.orders.clone() }),
        Step::Fail => SearchOutcome::Exhausted,
        Step::Cap => SearchOutcome::CapExceeded,
    })
}

type Orbits = HashMap<SimilarityType, BTreeSet<u32>>;

enum Step {
    Done(FiniteTree),
    Fail,
    Cap,
}

struct Search<'a> {
    d: &'a LevelColoring,
    q: &'a SubtreeQuery,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    fn code(&self, tuple: &[Node]) -> SimilarityType {
        match self.q.mode {
            SubtreeMode::Ht => similar_code(tuple, &self.q.orders),
            _ => similarity_type(tuple, &self.q.orders),
        }
    }

    /// Whether level `beta` may become a split level; returns the updated orbits.
    fn split_allowed(&self, level: &[Node], beta: usize, splits: &[usize], orbits: &Orbits) -> Option<Orbits> {
        let n = self.d.arity();
        let orders = &self.q.orders;
        let mut ok = true;
        let mut orbits = orbits.clone();
        let mut seen: HashMap<SimilarityType, u32> = HashMap::new();
        for_each_subset(level.len(), n, |idx| {
            let set: Vec<Node> = idx.iter().map(|&i| level[i]).collect();
            let c = self.d.color(&set);
            match self.q.mode {
                SubtreeMode::Eht => {
                    for &alpha in splits {
                        let mut restricted: Vec<Node> = set.iter().map(|x| x.restrict(alpha)).collect();
                        let distinct = restricted.iter().collect::<BTreeSet<_>>().len() == n;
                        let compatible = (0..n).all(|l| {
                            (0..n).all(|m| {
                                orders.less(beta, &set[l], &set[m])
                                    == orders.less(alpha, &restricted[l], &restricted[m])
                            })
                        });
                        restricted.sort_unstable();
                        if distinct && compatible && self.d.color(&restricted) != c {
                            ok = false;
                            return false;
                        }
                    }
                }
                SubtreeMode::Aht | SubtreeMode::Ht => {
                    let mut tuple = set.clone();
                    orders.sort_level(beta, &mut tuple);
                    let code = self.code(&tuple);
                    match self.q.orbit_bound {
                        Some(bound) => {
                            let e = orbits.entry(code).or_default();
                            e.insert(c);
                            if e.len() >= bound {
                                ok = false;
                                return false;
                            }
                        }
                        None => {
                            if *seen.entry(code).or_insert(c) != c {
                                ok = false;
                                return false;
                            }
                        }
                    }
                }
            }
            true
        });
        ok.then_some(orbits)
    }

    fn dfs(&mut self, levels: &mut Vec<Vec<Node>>, splits: &mut Vec<usize>, orbits: &Orbits) -> Step {
        let depth = self.q.depth;
        let l = levels.len() - 1;
        if l == depth {
            if splits.len() < self.q.min_split_levels {
                return Step::Fail;
            }
            let tree = FiniteTree::downward_closure(levels[depth].iter().copied()).expect("levels form a tree");
            return Step::Done(tree);
        }
        if depth - l < self.q.min_split_levels.saturating_sub(splits.len()) {
            return Step::Fail;
        }
        let cur = levels[l].clone();
        let allowed = self.split_allowed(&cur, l, splits, orbits);
        // At the last level, a node whose parent did not split must split itself.
        let must_split: Vec<bool> = cur
            .iter()
            .map(|x| {
                depth >= 2 && l == depth - 1 && x.parent().is_some_and(|p| !parent_split(levels, &p))
            })
            .collect();
        for actions in self.action_vectors(cur.len(), allowed.is_some()) {
            if actions.iter().zip(&must_split).any(|(&a, &must)| must && a != 2) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Step::Cap;
            }
            let mut next = Vec::with_capacity(cur.len() * 2);
            for (x, &a) in cur.iter().zip(&actions) {
                match a {
                    0 | 1 => next.push(x.child(a)),
                    _ => {
                        next.push(x.child(0));
                        next.push(x.child(1));
                    }
                }
            }
            next.sort_unstable();
            let split_here = actions.contains(&2);
            levels.push(next);
            if split_here {
                splits.push(l);
            }
            let out = self.dfs(levels, splits, if split_here { allowed.as_ref().expect("checked") } else { orbits });
            levels.pop();
            if split_here {
                splits.pop();
            }
            match out {
                Step::Fail => continue,
                other => return other,
            }
        }
        Step::Fail
    }

    /// Action per node: 0 left child, 1 right child, 2 both.
    fn action_vectors(&self, width: usize, may_split: bool) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        if self.q.per_f {
            for code in 0..1u64 << width {
                out.push((0..width).map(|i| ((code >> (width - 1 - i)) & 1) as u8).collect());
            }
            if may_split {
                out.push(vec![2; width]);
            }
        } else {
            let mut v = vec![0u8; width];
            loop {
                if may_split || !v.contains(&2) {
                    out.push(v.clone());
                }
                let mut k = width;
                loop {
                    if k == 0 {
                        return out;
                    }
                    k -= 1;
                    v[k] += 1;
                    if v[k] < 3 {
                        break;
                    }
                    v[k] = 0;
                }
            }
        }
        out
    }
}

/// Whether `p` (one level above the newest) has both children in the tree so far.
fn parent_split(levels: &[Vec<Node>], p: &Node) -> bool {
    let below = &levels[p.len() + 1];
    below.binary_search(&p.child(0)).is_ok() && below.binary_search(&p.child(1)).is_ok()
}
