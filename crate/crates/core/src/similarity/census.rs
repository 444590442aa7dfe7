use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{binomial, for_each_subset};
use crate::seqtree::{split_point, Node};

use super::relation::shape_code_into;
use super::{OrderFamily, SimilarityError};

/// Which branch sets count as having "distinct split levels".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitReading {
    /// Distinct meet nodes lie on distinct levels.
    #[default]
    Meets,
    /// Distinct unordered pairs have distinct split points.
    Pairs,
    /// For pairwise distinct `η₁..η₄`, `sp(η₁,η₂) ≠ sp(η₃,η₄)`.
    Quadruple,
}

impl FromStr for SplitReading {
    type Err = SimilarityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "meets" => Ok(SplitReading::Meets),
            "pairs" => Ok(SplitReading::Pairs),
            "quadruple" => Ok(SplitReading::Quadruple),
            _ => Err(SimilarityError::BadReading(s.to_string())),
        }
    }
}

impl SplitReading {
    /// Whether the branch set `u` satisfies this reading.
    pub fn admits(self, u: &[Node]) -> bool {
        let n = u.len();
        match self {
            SplitReading::Meets => {
                let mut meets: Vec<Node> = Vec::with_capacity(n * n / 2);
                for i in 0..n {
                    for j in i + 1..n {
                        meets.push(u[i].restrict(split_point(&u[i], &u[j])));
                    }
                }
                meets.sort_unstable();
                meets.dedup();
                let mut levels: Vec<usize> = meets.iter().map(Node::len).collect();
                levels.sort_unstable();
                levels.windows(2).all(|w| w[0] != w[1])
            }
            SplitReading::Pairs => {
                let mut sps = Vec::with_capacity(n * n / 2);
                for i in 0..n {
                    for j in i + 1..n {
                        sps.push(split_point(&u[i], &u[j]));
                    }
                }
                sps.sort_unstable();
                sps.windows(2).all(|w| w[0] != w[1])
            }
            SplitReading::Quadruple => {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                                if distinct && split_point(&u[a], &u[b]) == split_point(&u[c], &u[d]) {
                                    return false;
                                }
                            }
                        }
                    }
                }
                true
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub rep: Vec<Node>,
    pub size: u64,
}

/// Strong-similarity classes of admissible `n`-sets of level-`depth` nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub depth: usize,
    pub classes: Vec<CensusClass>,
    pub h: u64,
}

/// Sets enumerated by a brute-force census are capped at this many.
pub const CENSUS_SET_CAP: u64 = 1 << 32;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Brute-force census: classify every admissible `n`-set of nodes on level
/// `depth` by the level-relabelled strong code of its `<*_depth`-sorted tuple.
/// The representative of a class is its lexicographically least set.
pub fn census_brute(
    n: usize,
    depth: usize,
    orders: &OrderFamily,
    reading: SplitReading,
) -> Result<Census, SimilarityError> {
    if depth > 32 || binomial(1u64 << depth.min(63), n as u64) > CENSUS_SET_CAP {
        return Err(SimilarityError::TooLarge(format!("C(2^{depth}, {n}) sets")));
    }
    let width = 1usize << depth;
    type Classes = HashMap<Vec<u16>, CensusClass>;
    let merge = |mut a: Classes, b: Classes| {
        for (k, v) in b {
            a.entry(k)
                .and_modify(|c| {
                    c.size += v.size;
                    if v.rep < c.rep {
                        c.rep = v.rep.clone();
                    }
                })
                .or_insert(v);
        }
        a
    };
    let classes: Classes = if n == 0 {
        let mut m = Classes::new();
        m.insert(Vec::new(), CensusClass { rep: Vec::new(), size: 1 });
        m
    } else {
        (0..width)
            .into_par_iter()
            .map(|first| {
                let mut local = Classes::new();
                let mut code = Vec::new();
                let mut set = vec![Node::ROOT; n];
                let mut tuple = vec![Node::ROOT; n];
                set[0] = Node::from_index(first as u64, depth);
                for_each_subset(width - first - 1, n - 1, |rest| {
                    for (slot, &r) in set[1..].iter_mut().zip(rest) {
                        *slot = Node::from_index((first + 1 + r) as u64, depth);
                    }
                    if !reading.admits(&set) {
                        return true;
                    }
                    tuple.copy_from_slice(&set);
                    orders.sort_level(depth, &mut tuple);
                    shape_code_into(&tuple, orders, &mut code);
                    match local.get_mut(code.as_slice()) {
                        Some(c) => c.size += 1,
                        None => {
                            local.insert(code.clone(), CensusClass { rep: set.clone(), size: 1 });
                        }
                    }
                    true
                });
                local
            })
            .reduce(Classes::new, merge)
    };
    let mut classes: Vec<CensusClass> = classes.into_values().collect();
    classes.sort_by(|a, b| a.rep.cmp(&b.rep));
    let h = factorial(n) * classes.len() as u64;
    Ok(Census { n, depth, classes, h })
}

/// Largest `n` accepted by [`h_of_n`].
pub const H_MAX_N: usize = 6;

/// `h(n)`: `n!` times the number of strong-similarity classes of admissible
/// `n`-branch sets under the lexicographic family.
///
/// Evaluated on collapsed shapes: a branch set whose split levels are
/// `s₀ < … < s_{k−1}` is strongly similar, up to relabelling levels, to the set
/// of its bit strings read at those levels, so it suffices to classify sets of
/// length-`k` strings that use every level `0..k` as a split.
pub fn h_of_n(n: usize, reading: SplitReading) -> Result<u64, SimilarityError> {
    if n > H_MAX_N {
        return Err(SimilarityError::TooLarge(format!("h({n}) exceeds the supported n ≤ {H_MAX_N}")));
    }
    if n == 0 {
        return Ok(1);
    }
    let lex = OrderFamily::lexicographic();
    let mut codes = std::collections::HashSet::new();
    let mut code = Vec::new();
    for k in 0..n {
        let width = 1usize << k;
        let mut set = vec![Node::ROOT; n];
        for_each_subset(width, n, |idx| {
            for (slot, &i) in set.iter_mut().zip(idx) {
                *slot = Node::from_index(i as u64, k);
            }
            let mut used = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    used |= 1 << split_point(&set[i], &set[j]);
                }
            }
            if used == (1u64 << k) - 1 && reading.admits(&set) {
                shape_code_into(&set, &lex, &mut code);
                codes.insert(code.clone());
            }
            true
        });
    }
    Ok(factorial(n) * codes.len() as u64)
}
