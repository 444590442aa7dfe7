use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::seqtree::{FiniteTree, Node};

use super::HlError;

/// Largest supported `k`: nodes of `tstar(k)` have length up to `2^k`.
pub const TSTAR_MAX_K: u32 = 6;

/// The tree `T*_k`, of depth `2^k`.
///
/// `T*_0 = {<>, <1>}`. Era `e` adds the nodes of length in `(2^e, 2^{e+1}]`
/// whose restriction to `2^e` is in `T*_e` and which carry a 1 in
/// `[2^e, 2^{e+1})` only at `t = 2^e + sum_{m < 2^e} nu(m) 2^m`.
pub fn tstar(k: u32) -> Result<FiniteTree, HlError> {
    if k > TSTAR_MAX_K {
        return Err(HlError::InvalidArgument(format!("k = {k} exceeds {TSTAR_MAX_K}")));
    }
    let mut top = vec![Node::from_bits(&[1])];
    for e in 0..k {
        let lo = 1usize << e;
        let hi = lo << 1;
        let mut next = Vec::new();
        for nu in &top {
            let t: u128 = (1u128 << e)
                + (0..lo).filter(|&m| nu.bit(m) == Some(1)).map(|m| 1u128 << m).sum::<u128>();
            let t = if t < hi as u128 { Some(t as usize) } else { None };
            let mut frontier = vec![*nu];
            for i in lo..hi {
                let mut grown = Vec::with_capacity(frontier.len() * 2);
                for x in &frontier {
                    grown.push(x.child(0));
                    if t == Some(i) {
                        grown.push(x.child(1));
                    }
                }
                frontier = grown;
            }
            next.extend(frontier);
        }
        next.sort_unstable();
        top = next;
    }
    Ok(FiniteTree::downward_closure(top)?)
}

/// An element of `Tr Emb(k, n)`: pairs `(nu, h(nu))` sorted by `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<(Node, Node)>,
}

impl Embedding {
    pub fn image(&self, nu: &Node) -> Option<Node> {
        self.map.binary_search_by(|(a, _)| a.cmp(nu)).ok().map(|i| self.map[i].1)
    }

    /// The range, sorted.
    pub fn range(&self) -> Vec<Node> {
        let mut r: Vec<Node> = self.map.iter().map(|&(_, b)| b).collect();
        r.sort_unstable();
        r
    }
}

/// Strictly increasing level maps `L(0) < ... < L(top)` with `L(top) = n`, in lex order.
fn level_maps(top: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(l: usize, top: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if l == top {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let lo = cur.last().map_or(0, |&x| x + 1);
        // Leave room for the remaining top - l levels below n.
        let Some(hi) = n.checked_sub(top - l) else { return };
        for v in lo..=hi {
            cur.push(v);
            rec(l + 1, top, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, top, n, &mut Vec::new(), &mut out);
    out
}

fn append_bits(x: Node, bits: u64, width: usize) -> Node {
    (0..width).rev().fold(x, |acc, j| acc.child(((bits >> j) & 1) as u8))
}

/// Enumerate `Tr Emb(k, n)` in order of level map, then root bits, then gap
/// bits node by node (level order), at most `limit` results.
pub fn tr_emb(k: u32, n: usize, limit: usize) -> Result<Vec<Embedding>, HlError> {
    let t = tstar(k)?;
    if n > crate::seqtree::MAX_NODE_LEN {
        return Err(HlError::InvalidArgument(format!("n = {n} is too large")));
    }
    let top = t.depth();
    // Level order, so a parent is placed before its children.
    let nodes: Vec<Node> = t.nodes().copied().collect();
    let mut out = Vec::new();
    for lm in level_maps(top, n) {
        if lm[0] >= 64 || lm.windows(2).any(|w| w[1] - w[0] - 1 >= 64) {
            return Err(HlError::InvalidArgument("embedding space too large to enumerate".into()));
        }
        // Nodes by level, each with its free-bit width.
        let widths: Vec<usize> = nodes
            .iter()
            .map(|x| if x.is_empty() { lm[0] } else { lm[x.len()] - lm[x.len() - 1] - 1 })
            .collect();
        let mut choice = vec![0u64; nodes.len()];
        'outer: loop {
            if out.len() >= limit {
                return Ok(out);
            }
            let mut images: HashMap<Node, Node> = HashMap::with_capacity(nodes.len());
            for (i, x) in nodes.iter().enumerate() {
                let img = match x.parent() {
                    None => append_bits(Node::ROOT, choice[i], widths[i]),
                    Some(p) => {
                        let b = x.bit(x.len() - 1).expect("nonroot");
                        append_bits(images[&p].child(b), choice[i], widths[i])
                    }
                };
                images.insert(*x, img);
            }
            let mut map: Vec<(Node, Node)> = images.into_iter().collect();
            map.sort_unstable();
            out.push(Embedding { map });
            let mut i = nodes.len();
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if widths[i] > 0 && choice[i] + 1 < 1u64 << widths[i] {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
            }
        }
    }
    Ok(out)
}

/// `|Tr Emb(k, n)|`, or `None` on `u128` overflow.
pub fn tr_emb_count(k: u32, n: usize) -> Result<Option<u128>, HlError> {
    let t = tstar(k)?;
    let top = t.depth();
    let width: Vec<u32> = (0..=top).map(|l| t.level(l).len() as u32).collect();
    if n < top {
        return Ok(Some(0));
    }
    // ways[v]: weighted count of partial maps with the current level at v.
    let mut ways: Vec<Option<u128>> = (0..=n).map(|v| pow2(v as u32)).collect();
    for l in 1..=top {
        let mut next = vec![Some(0u128); n + 1];
        for (v, slot) in next.iter_mut().enumerate() {
            let mut acc = Some(0u128);
            for (u, w) in ways.iter().enumerate().take(v) {
                let term = w.and_then(|w| pow2(width[l] * (v - u - 1) as u32).and_then(|p| w.checked_mul(p)));
                acc = match (acc, term) {
                    (Some(a), Some(b)) => a.checked_add(b),
                    (Some(a), None) if *w == Some(0) => Some(a),
                    _ => None,
                };
            }
            *slot = acc;
        }
        ways = next;
    }
    Ok(ways[n])
}

fn pow2(e: u32) -> Option<u128> {
    1u128.checked_shl(e).filter(|_| e < 128)
}

/// `T(k, n)`: the distinct ranges of `Tr Emb(k, n)`, at most `limit` embeddings examined.
pub fn t_family(k: u32, n: usize, limit: usize) -> Result<Vec<Vec<Node>>, HlError> {
    let set: BTreeSet<Vec<Node>> = tr_emb(k, n, limit)?.iter().map(Embedding::range).collect();
    Ok(set.into_iter().collect())
}

/// Check the defining clauses of `Tr Emb(k, n)` for `h` pair by pair.
/// Returns a description of the first violated clause.
pub fn check_tr_emb(k: u32, n: usize, h: &Embedding) -> Result<Result<(), String>, HlError> {
    let t = tstar(k)?;
    let mut dom: Vec<Node> = t.nodes().copied().collect();
    dom.sort_unstable();
    let src: Vec<Node> = h.map.iter().map(|&(a, _)| a).collect();
    if src != dom {
        return Ok(Err("domain differs from T*_k".into()));
    }
    for &(eta, he) in &h.map {
        if he.len() > n {
            return Ok(Err(format!("h({eta}) longer than {n}")));
        }
        if eta.len() == t.depth() && he.len() != n {
            return Ok(Err(format!("h({eta}) is not of length {n}")));
        }
        for &(nu, hn) in &h.map {
            if (eta == nu) != (he == hn) {
                return Ok(Err(format!("injectivity fails at {eta}, {nu}")));
            }
            if eta.is_strict_prefix_of(&nu) != he.is_strict_prefix_of(&hn) {
                return Ok(Err(format!("prefix relation differs at {eta}, {nu}")));
            }
            if eta.len() == nu.len() && he.len() != hn.len() {
                return Ok(Err(format!("level equality fails at {eta}, {nu}")));
            }
            if nu.len() == eta.len() + 1 && eta.is_prefix_of(&nu) && hn.bit(he.len()) != nu.bit(eta.len()) {
                return Ok(Err(format!("successor bit fails at {eta}, {nu}")));
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[Node]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn small_trees() {
        let t0 = tstar(0).unwrap();
        assert_eq!(strs(&t0.nodes().copied().collect::<Vec<_>>()), ["", "1"]);
        assert_eq!(strs(tstar(1).unwrap().level(2)), ["10"]);
        let t2 = tstar(2).unwrap();
        assert_eq!(strs(t2.level(4)), ["1000", "1001"]);
        assert_eq!(t2.split_levels_unchecked(), vec![3]);
    }

    #[test]
    fn tr_emb_examples() {
        let e = tr_emb(0, 1, usize::MAX).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].image(&Node::ROOT), Some(Node::ROOT));
        assert!(tr_emb(2, 3, usize::MAX).unwrap().is_empty());
        for n in 0..6 {
            for k in 0..3 {
                let all = tr_emb(k, n, usize::MAX).unwrap();
                assert_eq!(Some(all.len() as u128), tr_emb_count(k, n).unwrap(), "k={k} n={n}");
                for h in &all {
                    assert_eq!(check_tr_emb(k, n, h).unwrap(), Ok(()));
                }
            }
        }
        let size = tstar(2).unwrap().node_count();
        for r in t_family(2, 5, usize::MAX).unwrap() {
            assert_eq!(r.len(), size);
        }
    }
}
