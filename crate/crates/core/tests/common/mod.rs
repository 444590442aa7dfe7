//! Test-side oracles. Each one recomputes a library result from the
//! definitions by enumeration, without the closed forms the library uses.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use partlab::ordinals::{Ordinal, Otp};
use partlab::seqtree::Node;
use partlab::similarity::{strongly_similar, OrderFamily};
use partlab::walks::WitnessColorings;

pub fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

pub fn os(v: &[&str]) -> Vec<Ordinal> {
    v.iter().map(|s| o(s)).collect()
}

// ---------------------------------------------------------------- clubs, walks

fn terms(a: &Ordinal) -> Vec<(u32, u64)> {
    a.terms().iter().map(|t| (t.exp, t.coef)).collect()
}

fn from_terms(t: Vec<(u32, u64)>) -> Ordinal {
    Ordinal::from_terms(t).unwrap()
}

/// Member `m ≥ 1` of the club of a limit `i = δ + ω^e`, straight from the rule
/// `δ + ω^(e−1)·m (+1 when e ≥ 2)`.
fn limit_member(i: &Ordinal, m: u64) -> Ordinal {
    let mut t = terms(i);
    let (e, c) = t.pop().unwrap();
    if c > 1 {
        t.push((e, c - 1));
    }
    t.push((e - 1, m));
    if e >= 2 {
        t.push((0, 1));
    }
    // (e−1, m) with e = 1 is the finite part itself.
    from_terms(t)
}

fn is_successor(i: &Ordinal) -> bool {
    terms(i).last().is_some_and(|&(e, _)| e == 0)
}

fn predecessor(i: &Ordinal) -> Ordinal {
    let mut t = terms(i);
    let (e, c) = t.pop().unwrap();
    assert_eq!(e, 0);
    if c > 1 {
        t.push((0, c - 1));
    }
    from_terms(t)
}

/// The members of `C_i` below `bound`, in order; at most `cap` of them.
pub fn club_members_below(i: &Ordinal, bound: &Ordinal, cap: usize) -> Vec<Ordinal> {
    let mut out = vec![Ordinal::zero()];
    if is_successor(i) {
        let p = predecessor(i);
        if !p.is_zero() && &p < bound {
            out.push(p);
        }
    } else {
        for m in 1.. {
            if out.len() >= cap {
                break;
            }
            let x = limit_member(i, m);
            if &x >= bound || &x >= i {
                break;
            }
            out.push(x);
        }
    }
    out.retain(|x| x < bound);
    out
}

fn club_is_finite(i: &Ordinal) -> bool {
    is_successor(i)
}

/// `(max C_γ ∩ α, min C_γ ∖ α)` by scanning members.
fn club_step(gamma: &Ordinal, alpha: &Ordinal) -> (Ordinal, Ordinal) {
    if is_successor(gamma) {
        let p = predecessor(gamma);
        if p.is_zero() {
            // C_1 = {0}; α ≤ 1 = γ forces α = γ, never asked.
            unreachable!()
        }
        return if &p < alpha { (p, gamma.clone()) } else { (Ordinal::zero(), p) };
    }
    let mut below = Ordinal::zero();
    for m in 1.. {
        let x = limit_member(gamma, m);
        if &x >= alpha {
            return (below, x);
        }
        below = x;
    }
    unreachable!()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWalk {
    pub plus: Vec<Ordinal>,
    pub minus: Vec<Ordinal>,
}

impl OracleWalk {
    pub fn k(&self) -> usize {
        self.plus.len() - 1
    }

    pub fn eps(&self, m: usize) -> Ordinal {
        let mut best = Ordinal::zero();
        for g in &self.minus[..=m] {
            let s = g.succ();
            if s > best {
                best = s;
            }
        }
        best
    }
}

pub fn walk_oracle(beta: &Ordinal, alpha: &Ordinal) -> OracleWalk {
    let mut plus = vec![beta.clone()];
    let mut minus = vec![Ordinal::zero()];
    while plus.last().unwrap() != alpha {
        let (lo, hi) = club_step(plus.last().unwrap(), alpha);
        minus.push(lo);
        plus.push(hi);
        assert!(plus.len() < 1000, "oracle walk did not terminate");
    }
    OracleWalk { plus, minus }
}

// ---------------------------------------------------------------- d colorings

fn cf(a: &Ordinal) -> Otp {
    if a.is_zero() {
        Otp::Finite(0)
    } else if is_successor(a) {
        Otp::Finite(1)
    } else {
        Otp::Omega
    }
}

fn club_size(i: &Ordinal) -> Otp {
    if !club_is_finite(i) {
        Otp::Omega
    } else if predecessor(i).is_zero() {
        Otp::Finite(1)
    } else {
        Otp::Finite(2)
    }
}

/// `otp(C_i ∩ x)`.
fn otp_club(i: &Ordinal, x: &Ordinal) -> Otp {
    if !club_is_finite(i) && x >= i {
        return Otp::Omega;
    }
    Otp::Finite(club_members_below(i, x, usize::MAX).len() as u64)
}

pub fn n_oracle(w01: &OracleWalk, w02: &OracleWalk) -> usize {
    let mut n = 0;
    for l in 0..=w01.k().min(w02.k()) {
        if (0..=l).all(|j| w01.minus[j] == w02.minus[j]) {
            n = l;
        }
    }
    n
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleW {
    Finite(Vec<u64>),
    Infinite,
    Undefined,
}

/// `sup(C_a ∩ C_b)` from explicit member lists.
fn sup_meet_oracle(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let bound = if a < b { a } else { b };
    let ma: BTreeSet<Ordinal> = club_members_below(a, bound, 400).into_iter().collect();
    let mb: BTreeSet<Ordinal> = club_members_below(b, bound, 400).into_iter().collect();
    let meet: Vec<&Ordinal> = ma.intersection(&mb).collect();
    if meet.len() >= 300 {
        // Both lists run up to the cap inside the meet: it is unbounded in the common owner.
        return bound.clone();
    }
    meet.last().map(|x| (*x).clone()).unwrap_or_else(Ordinal::zero)
}

/// Class minima above `istar` of `C_p ∖ istar` under the cut by `C_a`, from
/// the first `count` members of `C_p` at or above `istar`.
fn minima_oracle(p: &Ordinal, a: &Ordinal, istar: &Ordinal, count: usize) -> Vec<Ordinal> {
    let all = club_members_below(p, p, usize::MAX.min(istar_cap(count)));
    let rest: Vec<Ordinal> = all.into_iter().filter(|x| x >= istar).take(count).collect();
    let Some(top) = rest.last() else { return vec![] };
    let cut = club_members_below(a, &top.succ(), 10_000);
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut out = Vec::new();
    for g in &rest {
        let key: Vec<bool> = cut.iter().map(|c| g < c).collect();
        if seen.insert(key) && g > istar {
            out.push(g.clone());
        }
    }
    out
}

fn istar_cap(count: usize) -> usize {
    count + 2000
}

/// `(w, color)` of `d_1` by transcription.
pub fn d1_oracle(a: &[Ordinal], wit: &WitnessColorings) -> (OracleW, u32) {
    let w01 = walk_oracle(&a[0], &a[1]);
    let w02 = walk_oracle(&a[0], &a[2]);
    let w12 = walk_oracle(&a[1], &a[2]);
    let n = n_oracle(&w01, &w02);
    if n > w12.k() {
        return (OracleW::Undefined, 0);
    }
    let p = &w01.plus[n];
    let ca = &w02.plus[n];
    let cb = &w12.plus[n];
    let istar = sup_meet_oracle(ca, cb);
    let short = minima_oracle(p, ca, &istar, 60);
    let long = minima_oracle(p, ca, &istar, 120);
    if short.len() != long.len() {
        return (OracleW::Infinite, 0);
    }
    let betas: Vec<u64> = long
        .iter()
        .map(|g| match otp_club(p, g) {
            Otp::Finite(k) => k,
            Otp::Omega => unreachable!(),
        })
        .collect();
    let color = wit.g1(club_size(p), &betas);
    (OracleW::Finite(betas), color)
}

pub fn d2_part1_oracle(a: &[Ordinal], wit: &WitnessColorings) -> u32 {
    let w01 = walk_oracle(&a[0], &a[1]);
    let w02 = walk_oracle(&a[0], &a[2]);
    let n = n_oracle(&w01, &w02);
    let g = &w01.plus[n];
    let pos: Vec<Otp> = a[1..].iter().map(|x| otp_club(g, x)).collect();
    wit.g2(cf(g), &pos)
}

pub fn d2_part2_oracle(a: &[Ordinal], wit: &WitnessColorings) -> u32 {
    let w01 = walk_oracle(&a[0], &a[1]);
    let w02 = walk_oracle(&a[0], &a[2]);
    let n = n_oracle(&w01, &w02);
    let kappa = cf(&w01.plus[n]);
    let mut pos = Vec::new();
    for pair in a.chunks(2) {
        let t = walk_oracle(&pair[0], &pair[1]);
        if n > t.k() {
            return 0;
        }
        pos.push(otp_club(&t.plus[n], &pair[1]));
    }
    wit.g2(kappa, &pos)
}

/// The CSV record of one sweep row, computed by the oracle.
pub fn sweep_record_oracle(a: &[Ordinal], wit: &WitnessColorings) -> Vec<String> {
    let w01 = walk_oracle(&a[0], &a[1]);
    let w02 = walk_oracle(&a[0], &a[2]);
    let n = n_oracle(&w01, &w02);
    let (w, c1) = d1_oracle(a, wit);
    let (size, branch, color) = match &w {
        OracleW::Finite(b) if b.len() % 2 == 1 => (b.len().to_string(), "d1", c1),
        OracleW::Finite(b) => (b.len().to_string(), "d2", d2_part1_oracle(a, wit)),
        OracleW::Infinite => ("inf".to_string(), "fallback", d2_part1_oracle(a, wit)),
        OracleW::Undefined => ("undef".to_string(), "fallback", d2_part1_oracle(a, wit)),
    };
    let mut r: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    r.extend([w01.k().to_string(), n.to_string(), size, branch.to_string(), color.to_string()]);
    r
}

// ---------------------------------------------------------------- census

/// Distinct meet nodes of a branch set sit on distinct levels.
pub fn meets_distinct(u: &[Node]) -> bool {
    let mut meets = [(0u64, 0usize); 32];
    let mut k = 0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let l = (u[i].raw_bits() ^ u[j].raw_bits()).leading_zeros() as usize;
            let m = u[i].restrict(l);
            meets[k] = (m.raw_bits(), l);
            k += 1;
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if meets[a] != meets[b] && meets[a].1 == meets[b].1 {
                return false;
            }
        }
    }
    true
}

/// Read every node at the split levels of the set only, then sort.
fn collapse(u: &[Node], out: &mut Vec<Node>) {
    let mut levels = [0usize; 32];
    let mut k = 0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let l = (u[i].raw_bits() ^ u[j].raw_bits()).leading_zeros() as usize;
            if !levels[..k].contains(&l) {
                levels[k] = l;
                k += 1;
            }
        }
    }
    levels[..k].sort_unstable();
    out.clear();
    for x in u {
        let mut c = Node::ROOT;
        for &l in &levels[..k] {
            c = c.child(x.bit(l).unwrap());
        }
        out.push(c);
    }
    out.sort_unstable();
}

/// `h(n)` by classifying every admissible `n`-set on level `depth`, collapsed
/// to its split levels, with pairwise `strongly_similar` against class
/// representatives.
pub fn h_oracle(n: usize, depth: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let orders = OrderFamily::lexicographic();
    let width = 1u64 << depth;
    let mut reps: Vec<Vec<Node>> = Vec::new();
    let mut idx: Vec<u64> = (0..n as u64).collect();
    let mut set = vec![Node::ROOT; n];
    let mut c = Vec::with_capacity(n);
    let mut seen: HashSet<Vec<Node>> = HashSet::new();
    loop {
        for (s, &i) in set.iter_mut().zip(&idx) {
            *s = Node::from_index(i, depth);
        }
        if meets_distinct(&set) {
            collapse(&set, &mut c);
            if !seen.contains(&c) {
                seen.insert(c.clone());
                if !reps.iter().any(|r| strongly_similar(r, &c, &orders).unwrap()) {
                    reps.push(c.clone());
                }
            }
        }
        // Next n-subset in lex order.
        let mut k = n;
        loop {
            if k == 0 {
                let f: u64 = (1..=n as u64).product();
                return f * reps.len() as u64;
            }
            k -= 1;
            if idx[k] < width - (n - k) as u64 {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------- T*_k

/// `T*_k` as a set of bit vectors, evaluating the recurrence on every
/// candidate extension of length up to `2^k`.
pub fn tstar_oracle(k: u32) -> BTreeSet<Vec<u8>> {
    let mut t: BTreeSet<Vec<u8>> = [vec![], vec![1]].into_iter().collect();
    for e in 0..k {
        let lo = 1usize << e;
        let bases: Vec<Vec<u8>> = t.iter().filter(|v| v.len() == lo).cloned().collect();
        let mut add = Vec::new();
        for base in &bases {
            for len in 1..=lo {
                for suffix in 0u64..1 << len {
                    let mut nu = base.clone();
                    nu.extend((0..len).map(|j| ((suffix >> (len - 1 - j)) & 1) as u8));
                    let target: u128 = lo as u128 + (0..lo).map(|m| u128::from(nu[m]) << m).sum::<u128>();
                    let ok = (lo..nu.len()).all(|i| nu[i] == 0 || i as u128 == target);
                    if ok {
                        add.push(nu);
                    }
                }
            }
        }
        t.extend(add);
    }
    t
}

// ---------------------------------------------------------------- HL brute force

/// Every downward-closed set of nodes of length `≤ depth` containing the root.
pub fn all_trees(depth: usize) -> Vec<BTreeSet<Node>> {
    let mut out = vec![[Node::ROOT].into_iter().collect::<BTreeSet<_>>()];
    // Grow level by level: each node of the current bottom level keeps any
    // subset of its two children.
    let mut frontier = out.clone();
    for l in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            let bottom: Vec<Node> = t.iter().filter(|x| x.len() == l).copied().collect();
            let choices = 1usize << (2 * bottom.len());
            for mask in 1..choices {
                let mut nt = t.clone();
                for (i, x) in bottom.iter().enumerate() {
                    if mask >> (2 * i) & 1 == 1 {
                        nt.insert(x.child(0));
                    }
                    if mask >> (2 * i + 1) & 1 == 1 {
                        nt.insert(x.child(1));
                    }
                }
                next.push(nt);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub struct TreeFacts {
    pub depth: usize,
    pub split_levels: BTreeSet<usize>,
    pub per_f: bool,
    pub perfect: bool,
}

pub fn tree_facts(t: &BTreeSet<Node>) -> TreeFacts {
    let depth = t.iter().map(|x| x.len()).max().unwrap();
    let splits: Vec<Node> = t.iter().filter(|x| t.contains(&x.child(0)) && t.contains(&x.child(1))).copied().collect();
    let split_levels = splits.iter().map(|x| x.len()).collect();
    let per_f = (0..depth).all(|l| {
        let at: Vec<&Node> = t.iter().filter(|x| x.len() == l).collect();
        let s = at.iter().filter(|x| splits.contains(x)).count();
        s == 0 || s == at.len()
    });
    let perfect = t
        .iter()
        .filter(|x| x.len() + 1 < depth)
        .all(|x| splits.iter().any(|s| x.is_prefix_of(s)));
    TreeFacts { depth, split_levels, per_f, perfect }
}

/// Least `(levels, color)` admitting trees as in a levels-exact certificate of
/// height `m`, by trying every tuple of trees; `None` when there is none.
pub fn hl_oracle<F: Fn(&[Node]) -> u32>(
    n: usize,
    colors: u32,
    depth: usize,
    m: usize,
    color: F,
) -> Option<(Vec<usize>, u32)> {
    let trees: Vec<(BTreeSet<Node>, TreeFacts)> = all_trees(depth)
        .into_iter()
        .map(|t| {
            let f = tree_facts(&t);
            (t, f)
        })
        .filter(|(_, f)| f.per_f && f.perfect && f.split_levels.len() == m)
        .collect();
    let mut best: Option<(Vec<usize>, u32)> = None;
    let mut pick = vec![0usize; n];
    if trees.is_empty() {
        return None;
    }
    loop {
        let chosen: Vec<&(BTreeSet<Node>, TreeFacts)> = pick.iter().map(|&i| &trees[i]).collect();
        let levels = &chosen[0].1.split_levels;
        if chosen.iter().all(|(_, f)| &f.split_levels == levels) {
            let lv: Vec<usize> = levels.iter().copied().collect();
            for s in 0..colors {
                let ok = lv.iter().all(|&l| {
                    let rows: Vec<Vec<Node>> =
                        chosen.iter().map(|(t, _)| t.iter().filter(|x| x.len() == l).copied().collect()).collect();
                    all_tuples(&rows).iter().all(|tuple| {
                        let set: BTreeSet<Node> = tuple.iter().copied().collect();
                        set.len() == n && color(&set.into_iter().collect::<Vec<_>>()) == s
                    })
                });
                if ok && best.as_ref().map_or(true, |b| (&lv, s) < (&b.0, b.1)) {
                    best = Some((lv.clone(), s));
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < trees.len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

fn all_tuples(rows: &[Vec<Node>]) -> Vec<Vec<Node>> {
    let mut out = vec![vec![]];
    for r in rows {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Node>| {
                r.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(*x);
                    q
                })
            })
            .collect();
    }
    out
}

/// All sets of `n` distinct nodes on a common level `≤ depth`.
pub fn level_sets(n: usize, depth: usize) -> Vec<Vec<Node>> {
    let mut out = Vec::new();
    for l in 0..=depth {
        let nodes: Vec<Node> = (0..1u64 << l).map(|i| Node::from_index(i, l)).collect();
        subsets(&nodes, n, &mut vec![], 0, &mut out);
    }
    out
}

fn subsets<T: Clone>(pool: &[T], k: usize, cur: &mut Vec<T>, from: usize, out: &mut Vec<Vec<T>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i].clone());
        subsets(pool, k, cur, i + 1, out);
        cur.pop();
    }
}

pub fn k_subsets<T: Clone>(pool: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    subsets(pool, k, &mut vec![], 0, &mut out);
    out
}

/// A coloring given by a table, for use where the library wants a closure.
pub fn table_lookup(table: &BTreeMap<Vec<Node>, u32>) -> impl Fn(&[Node]) -> u32 + '_ {
    move |s: &[Node]| table[s]
}
