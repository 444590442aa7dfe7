use std::collections::BTreeMap;

/// `H^OP_{A,B}`: the maximal order-preserving bijection between initial
/// segments of `A` and `B`, pairing the `i`-th members for `i < min(|A|,|B|)`.
pub fn hop_map<T: Ord + Clone>(a: &[T], b: &[T]) -> BTreeMap<T, T> {
    let mut a: Vec<T> = a.to_vec();
    let mut b: Vec<T> = b.to_vec();
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    a.into_iter().zip(b).collect()
}
