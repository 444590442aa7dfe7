use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{for_each_subset, SetColoring, Verdict};
use crate::seqtree::{FiniteTree, Node, TreeViolation};

use super::{HlError, LevelColoring, SearchBudget, SearchOutcome};

/// Trees `T_0..T_{n−1}`, levels `k_0 < … < k_{m−1}` and a color `s` such that
/// every tuple taking one node from each tree on a common level `k_j` gets `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HlCertificate {
    pub n: usize,
    pub levels: Vec<usize>,
    pub color: u32,
    pub trees: Vec<FiniteTree>,
    pub levels_exact: bool,
}

impl HlCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, HlError> {
        serde_json::from_str(text).map_err(|e| HlError::Json(e.to_string()))
    }
}

/// First reason a well-formed certificate is rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum HlFailure {
    NotPerfect { tree: usize, node: Node },
    NotPerF { tree: usize, level: usize },
    MissingSplitLevel { tree: usize, level: usize },
    ExtraSplitLevel { tree: usize, level: usize },
    RepeatedNode { level: usize, tuple: Vec<Node> },
    WrongColor { level: usize, tuple: Vec<Node>, color: u32 },
}

fn violation_failure(tree: usize, v: TreeViolation) -> HlFailure {
    match v {
        TreeViolation::NoSplitBelow { node } => HlFailure::NotPerfect { tree, node },
        TreeViolation::MixedLevel { level } | TreeViolation::TwoSplits { level, .. } => {
            HlFailure::NotPerF { tree, level }
        }
    }
}

/// Check a certificate against `d`: each tree perfect and in Per_f with the
/// certified levels among its split levels (exactly, when `levels_exact`),
/// and every cross tuple on a certified level colored `s`.
pub fn verify_hl(d: &LevelColoring, cert: &HlCertificate) -> Result<Verdict<HlFailure>, HlError> {
    let n = d.arity();
    if cert.n != n || cert.trees.len() != n {
        return Err(HlError::Malformed(format!(
            "arity {} with {} trees against a coloring of arity {n}",
            cert.n,
            cert.trees.len()
        )));
    }
    if cert.levels.is_empty() || cert.levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HlError::Malformed("levels must be nonempty and strictly increasing".into()));
    }
    if cert.color >= d.colors() {
        return Err(HlError::Malformed(format!("color {} not below {}", cert.color, d.colors())));
    }
    if let Some(t) = cert.trees.iter().find(|t| t.depth() > d.depth()) {
        return Err(HlError::Malformed(format!("tree depth {} exceeds the coloring depth {}", t.depth(), d.depth())));
    }
    for (i, t) in cert.trees.iter().enumerate() {
        if let Err(v) = t.check_perfect() {
            return Ok(Verdict::Fails(violation_failure(i, v)));
        }
        if let Err(v) = t.check_per_f() {
            return Ok(Verdict::Fails(violation_failure(i, v)));
        }
        let sp = t.split_levels_unchecked();
        if let Some(&level) = cert.levels.iter().find(|k| !sp.contains(k)) {
            return Ok(Verdict::Fails(HlFailure::MissingSplitLevel { tree: i, level }));
        }
        if cert.levels_exact {
            if let Some(&level) = sp.iter().find(|k| !cert.levels.contains(k)) {
                return Ok(Verdict::Fails(HlFailure::ExtraSplitLevel { tree: i, level }));
            }
        }
    }
    for &level in &cert.levels {
        let rows: Vec<&[Node]> = cert.trees.iter().map(|t| t.level(level)).collect();
        let mut digits = vec![0usize; n];
        loop {
            let tuple: Vec<Node> = digits.iter().zip(&rows).map(|(&i, r)| r[i]).collect();
            let mut set = tuple.clone();
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Ok(Verdict::Fails(HlFailure::RepeatedNode { level, tuple }));
            }
            let c = d.color(&set);
            if c != cert.color {
                return Ok(Verdict::Fails(HlFailure::WrongColor { level, tuple, color: c }));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < rows[k].len() {
                    break;
                }
                digits[k] = 0;
            }
            if digits.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Exhaustive search for a levels-exact certificate of height `m`.
///
/// Candidates are ordered by level set (lexicographic, levels `≤ depth−1`),
/// then color, then the skeleton: for `j < m`, tree `ℓ < n`, and `i < 2^j`
/// the node `p_ℓ(j,i)` on level `k_j` (children of `p_ℓ(j−1,i)` extend it by
/// bit `i mod 2`), each chosen lexicographically. The least candidate wins.
/// The node budget applies to each (level set, color) task separately, and a
/// task that runs out of budget ends the scan with [`SearchOutcome::CapExceeded`].
pub fn search_hl(d: &LevelColoring, m: usize, budget: SearchBudget) -> Result<SearchOutcome<HlCertificate>, HlError> {
    if m == 0 {
        return Err(HlError::InvalidArgument("height m must be positive".into()));
    }
    let depth = d.depth();
    let mut tasks = Vec::new();
    if depth >= m {
        for_each_subset(depth, m, |levels| {
            for s in 0..d.colors() {
                tasks.push((levels.to_vec(), s));
            }
            true
        });
    }
    let found = tasks.par_iter().find_map_first(|(levels, s)| match search_task(d, levels, *s, budget) {
        SearchOutcome::Exhausted => None,
        other => Some(other),
    });
    Ok(found.unwrap_or(SearchOutcome::Exhausted))
}

struct Task<'a> {
    d: &'a LevelColoring,
    n: usize,
    levels: &'a [usize],
    color: u32,
    /// `p[j][ℓ][i]`.
    p: Vec<Vec<Vec<Node>>>,
    steps: u64,
    budget: u64,
}

enum Step {
    Done,
    Fail,
    Cap,
}

fn search_task(d: &LevelColoring, levels: &[usize], color: u32, budget: SearchBudget) -> SearchOutcome<HlCertificate> {
    let n = d.arity();
    let p = (0..levels.len()).map(|j| vec![vec![Node::ROOT; 1 << j]; n]).collect();
    let mut task = Task { d, n, levels, color, p, steps: 0, budget: budget.nodes };
    match task.assign(0) {
        Step::Done => SearchOutcome::Found(task.certificate()),
        Step::Fail => SearchOutcome::Exhausted,
        Step::Cap => SearchOutcome::CapExceeded,
    }
}

impl Task<'_> {
    /// Variable `v` in the order (j, ℓ, i).
    fn assign(&mut self, v: usize) -> Step {
        let (mut j, mut rest) = (0, v);
        while j < self.levels.len() && rest >= self.n << j {
            rest -= self.n << j;
            j += 1;
        }
        if j == self.levels.len() {
            return Step::Done;
        }
        let (l, i) = (rest >> j, rest & ((1 << j) - 1));
        let k = self.levels[j];
        let (stem, free) = if j == 0 {
            (Node::ROOT, k)
        } else {
            let parent = self.p[j - 1][l][i >> 1];
            (parent.child((i & 1) as u8), k - self.levels[j - 1] - 1)
        };
        for ext in 0..1u64 << free {
            self.steps += 1;
            if self.steps > self.budget {
                return Step::Cap;
            }
            let mut node = stem;
            for b in (0..free).rev() {
                node = node.child(((ext >> b) & 1) as u8);
            }
            self.p[j][l][i] = node;
            if l + 1 == self.n && !self.tuples_ok(j, i) {
                continue;
            }
            match self.assign(v + 1) {
                Step::Fail => continue,
                other => return other,
            }
        }
        Step::Fail
    }

    /// All tuples on level `j` ending in the last tree's node `i` get the color.
    fn tuples_ok(&self, j: usize, i: usize) -> bool {
        let n = self.n;
        let last = self.p[j][n - 1][i];
        let width = 1usize << j;
        let mut digits = vec![0usize; n - 1];
        let mut set = vec![Node::ROOT; n];
        loop {
            for (t, &dg) in digits.iter().enumerate() {
                set[t] = self.p[j][t][dg];
            }
            set[n - 1] = last;
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) || self.d.color(&set) != self.color {
                return false;
            }
            let mut k = n - 1;
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < width {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    fn certificate(&self) -> HlCertificate {
        let last = self.levels.len() - 1;
        let trees = (0..self.n)
            .map(|l| {
                let leaves = self.p[last][l].iter().flat_map(|x| [x.child(0), x.child(1)]);
                FiniteTree::downward_closure(leaves).expect("skeleton closes to a tree")
            })
            .collect();
        HlCertificate { n: self.n, levels: self.levels.to_vec(), color: self.color, trees, levels_exact: true }
    }
}
