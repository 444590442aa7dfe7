use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::coloring::{for_each_subset, SetColoring, Verdict};
use crate::seqtree::{FiniteTree, Node};

use super::relation::{similar_code, similarity_type};
use super::{OrderFamily, SimilarityError, SimilarityType};

/// Which relation groups tuples: strong similarity (almost homogeneous) or
/// similarity (homogeneous).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomMode {
    Almost,
    Full,
}

impl HomMode {
    pub fn code(self, tuple: &[Node], orders: &OrderFamily) -> SimilarityType {
        match self {
            HomMode::Almost => similarity_type(tuple, orders),
            HomMode::Full => similar_code(tuple, orders),
        }
    }
}

fn check_arity<T, C: SetColoring<T> + ?Sized>(d: &C, n: usize) -> Result<(), SimilarityError> {
    if d.arity() == n {
        Ok(())
    } else {
        Err(SimilarityError::ColoringArity { coloring: d.arity(), expected: n })
    }
}

fn color_of<C: SetColoring<Node> + ?Sized>(d: &C, nodes: &[Node]) -> u32 {
    let mut set = nodes.to_vec();
    set.sort_unstable();
    d.color(&set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NiceWitness {
    pub alpha: usize,
    pub beta: usize,
    pub first: Node,
    pub second: Node,
}

/// Niceness: for consecutive `α < β` in `SP(T)`, the order at `β` refines the
/// order at `α` followed by the bit at `α`.
pub fn is_nice(orders: &OrderFamily, t: &FiniteTree) -> Result<Verdict<NiceWitness>, SimilarityError> {
    let sp = t.split_levels()?;
    for w in sp.windows(2) {
        let (alpha, beta) = (w[0], w[1]);
        let level = t.level(beta);
        for e1 in level {
            for e2 in level {
                if e1 == e2 {
                    continue;
                }
                let (r1, r2) = (e1.restrict(alpha), e2.restrict(alpha));
                let before = orders.less(alpha, &r1, &r2) || (r1 == r2 && e1.bit(alpha) < e2.bit(alpha));
                if before && !orders.less(beta, e1, e2) {
                    return Ok(Verdict::Fails(NiceWitness { alpha, beta, first: *e1, second: *e2 }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndHomWitness {
    pub alpha: usize,
    pub beta: usize,
    pub set: Vec<Node>,
    pub color: u32,
    pub restricted_color: u32,
}

/// End-homogeneity on `T`: for `α < β` in `SP(T)` and every `n`-set on level
/// `β` whose restrictions to `α` are distinct and order-compatible, the color
/// equals the color of the restricted set.
pub fn is_end_homogeneous<C: SetColoring<Node> + ?Sized>(
    d: &C,
    t: &FiniteTree,
    orders: &OrderFamily,
) -> Result<Verdict<EndHomWitness>, SimilarityError> {
    let n = d.arity();
    let sp = t.split_levels()?;
    for (bi, &beta) in sp.iter().enumerate() {
        let level = t.level(beta);
        for &alpha in &sp[..bi] {
            let mut found = None;
            for_each_subset(level.len(), n, |idx| {
                let set: Vec<Node> = idx.iter().map(|&i| level[i]).collect();
                let restricted: Vec<Node> = set.iter().map(|x| x.restrict(alpha)).collect();
                let distinct = restricted.iter().collect::<BTreeSet<_>>().len() == n;
                let compatible = (0..n).all(|l| {
                    (0..n).all(|m| {
                        orders.less(beta, &set[l], &set[m]) == orders.less(alpha, &restricted[l], &restricted[m])
                    })
                });
                if distinct && compatible {
                    let (c, r) = (color_of(d, &set), color_of(d, &restricted));
                    if c != r {
                        found = Some(EndHomWitness { alpha, beta, set, color: c, restricted_color: r });
                        return false;
                    }
                }
                true
            });
            if let Some(w) = found {
                return Ok(Verdict::Fails(w));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// All `n`-sets on the split levels of `T`, as `<*`-sorted tuples, level by level.
fn split_level_tuples(t: &FiniteTree, n: usize, orders: &OrderFamily) -> Result<Vec<Vec<Node>>, SimilarityError> {
    let mut out = Vec::new();
    for alpha in t.split_levels()? {
        let level = t.level(alpha);
        for_each_subset(level.len(), n, |idx| {
            let mut tuple: Vec<Node> = idx.iter().map(|&i| level[i]).collect();
            orders.sort_level(alpha, &mut tuple);
            out.push(tuple);
            true
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub first: Vec<Node>,
    pub second: Vec<Node>,
    pub first_color: u32,
    pub second_color: u32,
}

/// (Almost) homogeneity on `T₁`: on each split level, related `n`-sets share a color.
pub fn is_homogeneous<C: SetColoring<Node> + ?Sized>(
    d: &C,
    t1: &FiniteTree,
    orders: &OrderFamily,
    mode: HomMode,
) -> Result<Verdict<HomWitness>, SimilarityError> {
    let n = d.arity();
    for alpha in t1.split_levels()? {
        let level = t1.level(alpha);
        let mut seen: HashMap<SimilarityType, (Vec<Node>, u32)> = HashMap::new();
        let mut found = None;
        for_each_subset(level.len(), n, |idx| {
            let mut tuple: Vec<Node> = idx.iter().map(|&i| level[i]).collect();
            orders.sort_level(alpha, &mut tuple);
            let c = color_of(d, &tuple);
            match seen.get(&mode.code(&tuple, orders)) {
                Some((first, fc)) if *fc != c => {
                    found = Some(HomWitness { first: first.clone(), second: tuple, first_color: *fc, second_color: c });
                    false
                }
                Some(_) => true,
                None => {
                    seen.insert(mode.code(&tuple, orders), (tuple, c));
                    true
                }
            }
        });
        if let Some(w) = found {
            return Ok(Verdict::Fails(w));
        }
    }
    Ok(Verdict::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    pub rep: Vec<Node>,
    pub members: u64,
    pub colors: usize,
}

/// For each class of `n`-sets on the split levels of `T₁` (classes taken across
/// levels), the number of distinct colors attained. Ordered by first member.
pub fn orbit_color_counts<C: SetColoring<Node> + ?Sized>(
    d: &C,
    t1: &FiniteTree,
    orders: &OrderFamily,
    mode: HomMode,
) -> Result<Vec<OrbitCount>, SimilarityError> {
    let tuples = split_level_tuples(t1, d.arity(), orders)?;
    let mut index: HashMap<SimilarityType, usize> = HashMap::new();
    let mut acc: Vec<(OrbitCount, BTreeSet<u32>)> = Vec::new();
    for tuple in tuples {
        let c = color_of(d, &tuple);
        let code = mode.code(&tuple, orders);
        let i = *index.entry(code).or_insert_with(|| {
            acc.push((OrbitCount { rep: tuple.clone(), members: 0, colors: 0 }, BTreeSet::new()));
            acc.len() - 1
        });
        acc[i].0.members += 1;
        acc[i].1.insert(c);
    }
    Ok(acc
        .into_iter()
        .map(|(mut o, cs)| {
            o.colors = cs.len();
            o
        })
        .collect())
}

/// Lexicographically least representative of each strong-similarity class of
/// ordered `n`-tuples of distinct nodes on level `depth`, sorted.
pub fn enumerate_strong_types(
    n: usize,
    depth: usize,
    orders: &OrderFamily,
) -> Result<Vec<Vec<Node>>, SimilarityError> {
    let width = 1u64 << depth.min(63);
    if depth >= 32 || (width as f64).powi(n as i32) > (1u64 << 26) as f64 {
        return Err(SimilarityError::TooLarge(format!("{n}-tuples on level {depth}")));
    }
    let mut reps: HashMap<SimilarityType, Vec<Node>> = HashMap::new();
    let mut digits = vec![0u64; n];
    loop {
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            let tuple: Vec<Node> = digits.iter().map(|&i| Node::from_index(i, depth)).collect();
            reps.entry(similarity_type(&tuple, orders)).or_insert(tuple);
        }
        let mut k = n;
        loop {
            if k == 0 {
                let mut out: Vec<Vec<Node>> = reps.into_values().collect();
                out.sort();
                return Ok(out);
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

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalWitness<T> {
    pub tuple: Vec<T>,
    pub colors: Vec<u32>,
}

/// `(F,σ)`-canonicity of `d` on `A`, with `F` given as `(a, F(a))` pairs: every
/// class of increasing `n`-tuples whose `F`-images are related attains at most
/// `sigma` colors. `F` must be one-to-one onto labels of a common length `L`
/// and increasing from `<` to `<*_L`.
pub fn canonical_check<T, C>(
    d: &C,
    labeling: &[(T, Node)],
    orders: &OrderFamily,
    sigma: usize,
    mode: HomMode,
) -> Result<Verdict<CanonicalWitness<T>>, SimilarityError>
where
    T: Ord + Clone + std::fmt::Debug,
    C: SetColoring<T> + ?Sized,
{
    let mut pairs = labeling.to_vec();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(SimilarityError::NotInjective("repeated argument".into()));
    }
    let labels: BTreeSet<Node> = pairs.iter().map(|p| p.1).collect();
    if labels.len() != pairs.len() {
        return Err(SimilarityError::NotInjective("two arguments share a label".into()));
    }
    let len = pairs.first().map_or(0, |p| p.1.len());
    if let Some(p) = pairs.iter().find(|p| p.1.len() != len) {
        return Err(SimilarityError::NotOrderCompatible(format!("label of {:?} has a different length", p.0)));
    }
    if let Some(w) = pairs.windows(2).find(|w| !orders.less(len, &w[0].1, &w[1].1)) {
        return Err(SimilarityError::NotOrderCompatible(format!("{:?} and {:?}", w[0].0, w[1].0)));
    }
    let n = d.arity();
    check_arity(d, n)?;
    let mut groups: HashMap<SimilarityType, (Vec<T>, BTreeSet<u32>)> = HashMap::new();
    let mut order: Vec<SimilarityType> = Vec::new();
    for_each_subset(pairs.len(), n, |idx| {
        let args: Vec<T> = idx.iter().map(|&i| pairs[i].0.clone()).collect();
        let image: Vec<Node> = idx.iter().map(|&i| pairs[i].1).collect();
        let code = mode.code(&image, orders);
        let c = d.color(&args);
        let entry = groups.entry(code.clone()).or_insert_with(|| {
            order.push(code);
            (args, BTreeSet::new())
        });
        entry.1.insert(c);
        true
    });
    for code in order {
        let (tuple, colors) = &groups[&code];
        if colors.len() > sigma {
            return Ok(Verdict::Fails(CanonicalWitness { tuple: tuple.clone(), colors: colors.iter().copied().collect() }));
        }
    }
    Ok(Verdict::Holds)
}
