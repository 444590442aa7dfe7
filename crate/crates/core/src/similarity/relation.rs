use serde::Serialize;
use smallvec::SmallVec;

use crate::seqtree::{split_point, Node};

use super::{OrderFamily, SimilarityError};

fn same_arity(a: &[Node], b: &[Node]) -> Result<(), SimilarityError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(SimilarityError::ArityMismatch { left: a.len(), right: b.len() })
    }
}

/// Strong similarity of two tuples: equal lengths, equal split points, and at
/// every pair split `α` the same `<*_α` facts and the same bits at `α`.
pub fn strongly_similar(nu: &[Node], eta: &[Node], orders: &OrderFamily) -> Result<bool, SimilarityError> {
    same_arity(nu, eta)?;
    Ok(strongly_similar_unchecked(nu, eta, orders))
}

fn strongly_similar_unchecked(nu: &[Node], eta: &[Node], orders: &OrderFamily) -> bool {
    let n = nu.len();
    if (0..n).any(|l| nu[l].len() != eta[l].len()) {
        return false;
    }
    for l in 0..n {
        for m in l + 1..n {
            if split_point(&nu[l], &nu[m]) != split_point(&eta[l], &eta[m]) {
                return false;
            }
        }
    }
    for l1 in 0..n {
        for l2 in l1..n {
            let alpha = split_point(&nu[l1], &nu[l2]);
            for l3 in 0..n {
                if nu[l3].bit(alpha) != eta[l3].bit(alpha) {
                    return false;
                }
                for l4 in 0..n {
                    if orders.order_fact(alpha, &nu[l3], &nu[l4]) != orders.order_fact(alpha, &eta[l3], &eta[l4]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `ν(α) = 0` as a truth value (false when `ν(α)` is undefined).
#[inline]
fn zero_bit(x: &Node, alpha: usize) -> bool {
    x.bit(alpha) == Some(0)
}

/// Similarity: the truth values of the length comparison, the split-point
/// comparison, and the order and zero-bit facts at each pair split coincide.
pub fn similar(a: &[Node], b: &[Node], orders: &OrderFamily) -> Result<bool, SimilarityError> {
    same_arity(a, b)?;
    Ok(similar_unchecked(a, b, orders))
}

fn similar_unchecked(a: &[Node], b: &[Node], orders: &OrderFamily) -> bool {
    let n = a.len();
    for l1 in 0..n {
        for l2 in 0..n {
            if (a[l1].len() < a[l2].len()) != (b[l1].len() < b[l2].len()) {
                return false;
            }
        }
    }
    // sp is symmetric, so the pairs l ≤ m carry every split point (l = m gives the length).
    let mut spa: SmallVec<[u8; 36]> = SmallVec::new();
    let mut spb: SmallVec<[u8; 36]> = SmallVec::new();
    for l in 0..n {
        for m in l..n {
            let (x, y) = (split_point(&a[l], &a[m]) as u8, split_point(&b[l], &b[m]) as u8);
            // Compare against every earlier split point as soon as this one is known.
            for (&px, &py) in spa.iter().zip(&spb) {
                if px.cmp(&x) != py.cmp(&y) {
                    return false;
                }
            }
            spa.push(x);
            spb.push(y);
        }
    }
    let k = spa.len();
    for p in 0..k {
        let (alpha, beta) = (spa[p] as usize, spb[p] as usize);
        // Equal split points were matched above, so a repeated one adds no facts.
        if spa[..p].contains(&spa[p]) {
            continue;
        }
        for l3 in 0..n {
            if zero_bit(&a[l3], alpha) != zero_bit(&b[l3], beta) {
                return false;
            }
            for l4 in 0..n {
                if l4 != l3 && orders.order_fact(alpha, &a[l3], &a[l4]) != orders.order_fact(beta, &b[l3], &b[l4]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical invariant vector; equal codes iff the tuples are related.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimilarityType(pub Vec<u16>);

const UNDEF: u16 = 2;

fn fact_code(f: Option<bool>) -> u16 {
    match f {
        None => UNDEF,
        Some(b) => b as u16,
    }
}

fn bit_code(b: Option<u8>) -> u16 {
    b.map_or(UNDEF, u16::from)
}

/// Strong-similarity code: lengths, the split-point matrix, then for each
/// distinct pair split `α` (ascending) the bits at `α` and the `<*_α` facts.
pub fn similarity_type(nu: &[Node], orders: &OrderFamily) -> SimilarityType {
    let n = nu.len();
    let mut code = Vec::with_capacity(2 + n + n * n + 4 * (n + n * n));
    code.push(n as u16);
    let mut alphas: SmallVec<[usize; 16]> = SmallVec::new();
    for l in 0..n {
        for m in 0..n {
            let s = split_point(&nu[l], &nu[m]);
            code.push(s as u16);
            alphas.push(s);
        }
    }
    alphas.sort_unstable();
    alphas.dedup();
    for &alpha in &alphas {
        push_level_facts(&mut code, nu, alpha, orders);
    }
    SimilarityType(code)
}

fn push_level_facts(code: &mut Vec<u16>, nu: &[Node], alpha: usize, orders: &OrderFamily) {
    for x in nu {
        code.push(bit_code(x.bit(alpha)));
    }
    for x in nu {
        for y in nu {
            code.push(fact_code(orders.order_fact(alpha, x, y)));
        }
    }
}

/// Similarity code: the full vector of truth values compared by [`similar`].
pub fn similar_code(a: &[Node], orders: &OrderFamily) -> SimilarityType {
    let n = a.len();
    let sp: Vec<usize> = (0..n * n).map(|p| split_point(&a[p / n], &a[p % n])).collect();
    let mut code = vec![n as u16];
    for l1 in 0..n {
        for l2 in 0..n {
            code.push((a[l1].len() < a[l2].len()) as u16);
        }
    }
    for p in 0..n * n {
        for q in 0..n * n {
            code.push((sp[p] < sp[q]) as u16);
        }
    }
    for &alpha in &sp {
        for l3 in 0..n {
            code.push(zero_bit(&a[l3], alpha) as u16);
            for l4 in 0..n {
                code.push(fact_code(orders.order_fact(alpha, &a[l3], &a[l4])));
            }
        }
    }
    SimilarityType(code)
}

/// Level-relabelled strong code: as [`similarity_type`] but every length and
/// split point is replaced by its rank among the distinct levels occurring.
/// Tuples with equal shape codes differ only by a monotone relabelling of levels.
pub fn shape_code(nu: &[Node], orders: &OrderFamily) -> SimilarityType {
    let mut out = Vec::new();
    shape_code_into(nu, orders, &mut out);
    SimilarityType(out)
}

pub(crate) fn shape_code_into(nu: &[Node], orders: &OrderFamily, code: &mut Vec<u16>) {
    let n = nu.len();
    code.clear();
    code.push(n as u16);
    let mut sp: SmallVec<[usize; 16]> = SmallVec::new();
    for l in 0..n {
        for m in 0..n {
            sp.push(split_point(&nu[l], &nu[m]));
        }
    }
    let mut alphas = sp.clone();
    alphas.sort_unstable();
    alphas.dedup();
    for s in &sp {
        code.push(alphas.binary_search(s).expect("present") as u16);
    }
    for &alpha in &alphas {
        push_level_facts(code, nu, alpha, orders);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &[&str]) -> Vec<Node> {
        s.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn spec_examples() {
        let lex = OrderFamily::lexicographic();
        let a = t(&["00", "01"]);
        assert!(strongly_similar(&a, &a, &lex).unwrap());
        assert!(strongly_similar(&a, &t(&["10", "11"]), &lex).unwrap());
        assert!(!strongly_similar(&a, &t(&["01", "00"]), &lex).unwrap());
        assert!(similar(&a, &t(&["10", "11"]), &lex).unwrap());
        assert!(!similar(&t(&["0", "11"]), &t(&["11", "0"]), &lex).unwrap());
        assert!(strongly_similar(&a, &t(&["0"]), &lex).is_err());
    }

    #[test]
    fn codes_track_relations() {
        let lex = OrderFamily::lexicographic();
        let a = t(&["000", "011", "100"]);
        let b = t(&["100", "111", "110"]);
        assert_eq!(
            similarity_type(&a, &lex) == similarity_type(&b, &lex),
            strongly_similar(&a, &b, &lex).unwrap()
        );
        assert_eq!(similar_code(&a, &lex) == similar_code(&b, &lex), similar(&a, &b, &lex).unwrap());
        // Same shape at different levels.
        assert_eq!(shape_code(&t(&["0", "1"]), &lex), shape_code(&t(&["00", "01"]), &lex));
        assert_ne!(similarity_type(&t(&["0", "1"]), &lex), similarity_type(&t(&["00", "01"]), &lex));
    }
}
