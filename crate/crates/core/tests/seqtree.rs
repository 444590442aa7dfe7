use std::collections::BTreeSet;

use partlab::seqtree::{hop_map, split_point, FiniteTree, Node, TreeError};
use partlab::hltree::tstar;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn n(s: &str) -> Node {
    s.parse().unwrap()
}

fn chain() -> FiniteTree {
    FiniteTree::from_nodes(3, ["", "0", "00", "000"].map(n)).unwrap()
}

#[test]
fn split_point_examples() {
    assert_eq!(split_point(&n("0110"), &n("0101")), 2);
    assert_eq!(split_point(&n("0110"), &n("0110")), 4);
    assert_eq!(split_point(&n("01"), &n("0110")), 2);
}

#[test]
fn hop_examples() {
    let m = hop_map(&[3, 7, 9], &[2, 5]);
    assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![(3, 2), (7, 5)]);
    let id = hop_map(&[1, 4, 6], &[1, 4, 6]);
    assert!(id.iter().all(|(a, b)| a == b) && id.len() == 3);
    assert!(hop_map::<u32>(&[1], &[]).is_empty());
}

#[test]
fn perfectness_examples() {
    let full = FiniteTree::full(3).unwrap();
    assert!(full.is_perfect() && full.is_per_f() && !full.is_per_u());
    assert!(!chain().is_perfect());
    assert!(tstar(2).unwrap().is_per_u());
}

#[test]
fn splitting_examples() {
    let full = FiniteTree::full(2).unwrap();
    assert_eq!(full.splitting_nodes().unwrap(), vec![n(""), n("0"), n("1")]);
    assert_eq!(full.split_levels().unwrap(), vec![0, 1]);
    let t2 = tstar(2).unwrap();
    assert_eq!(t2.splitting_nodes().unwrap(), vec![n("100")]);
    assert_eq!(t2.split_levels().unwrap(), vec![3]);
    assert!(matches!(chain().splitting_nodes(), Err(TreeError::NotPerfect(_))));
}

#[test]
fn collapse_examples() {
    let full = FiniteTree::full(2).unwrap();
    assert!(full.clp_map().unwrap().iter().all(|(a, b)| a == b));
    assert_eq!(tstar(2).unwrap().clp_map().unwrap().into_iter().collect::<Vec<_>>(), vec![(n("100"), n(""))]);
    // SP = {1, 3}: the root has one child, level 1 splits, level 2 does not, level 3 splits.
    let t = FiniteTree::downward_closure(["0000", "0001", "0110", "0111"].map(n)).unwrap();
    assert_eq!(t.split_levels_unchecked(), vec![1, 3]);
    for (eta, c) in t.clp_map().unwrap() {
        if eta.len() > 3 {
            assert_eq!(c.bits(), vec![eta.bit(1).unwrap(), eta.bit(3).unwrap()]);
        }
    }
}

#[test]
fn thinning_examples() {
    let t = FiniteTree::full(3).unwrap().thin_to_unsplit(2).unwrap();
    assert!(t.is_per_u() && t.is_subtree_of(&FiniteTree::full(3).unwrap()));
    assert_eq!(t.split_levels_unchecked().len(), 2);
    let t0 = FiniteTree::full(3).unwrap().thin_to_unsplit(0).unwrap();
    assert!(t0.is_per_u() && t0.nodes().all(|x| x.bits().iter().all(|&b| b == 0)));
    assert!(FiniteTree::full(1).unwrap().thin_to_unsplit(2).is_none());
}

#[test]
fn tree_json_shape() {
    let j = FiniteTree::full(1).unwrap().to_json();
    assert_eq!(j, r#"{"depth":1,"levels":[[""],["0","1"]]}"#);
}

/// A random Per_f tree: every node splits on the chosen levels and keeps one
/// random child elsewhere.
fn random_per_f(rng: &mut ChaCha8Rng) -> FiniteTree {
    let depth = rng.gen_range(1..=8);
    let splits: BTreeSet<usize> = (0..depth).filter(|_| rng.gen_bool(0.4)).collect();
    let mut level = vec![Node::ROOT];
    let mut all = level.clone();
    for l in 0..depth {
        let mut next = Vec::new();
        for x in &level {
            if splits.contains(&l) {
                next.extend([x.child(0), x.child(1)]);
            } else {
                next.push(x.child(rng.gen_range(0..2)));
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    FiniteTree::from_nodes(depth, all).unwrap()
}

#[test]
fn collapse_is_an_isomorphism_onto_a_full_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let t = random_per_f(&mut rng);
        let clp = t.clp_map().unwrap();
        let sp = t.split_levels_unchecked().len();
        let image: BTreeSet<Node> = clp.values().copied().collect();
        assert_eq!(image.len(), clp.len(), "one-to-one");
        let full: BTreeSet<Node> = (0..sp).flat_map(|l| (0..1u64 << l).map(move |i| Node::from_index(i, l))).collect();
        assert_eq!(image, full, "onto the full tree of height {sp}");
        for (a, ca) in &clp {
            for (b, cb) in &clp {
                assert_eq!(a.is_strict_prefix_of(b), ca.is_strict_prefix_of(cb));
                assert_eq!(a < b, ca < cb);
            }
        }
    }
}

#[test]
fn thinning_gives_unsplit_subtrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let t = random_per_f(&mut rng);
        if !t.is_perfect() {
            continue;
        }
        for m in 0..=3 {
            if let Some(s) = t.thin_to_unsplit(m) {
                assert!(s.is_per_u() && s.is_subtree_of(&t));
                assert_eq!(s.split_levels_unchecked().len(), m);
                assert_eq!(s.depth(), t.depth());
            }
        }
    }
}

fn node(max_len: usize) -> impl Strategy<Value = Node> {
    (0..=max_len).prop_flat_map(|l| (0..1u64 << l).prop_map(move |i| Node::from_index(i, l)))
}

proptest! {
    #[test]
    fn split_point_laws(a in node(12), b in node(12)) {
        let s = split_point(&a, &b);
        prop_assert_eq!(s, split_point(&b, &a));
        prop_assert!(s <= a.len().min(b.len()));
        for i in 0..s {
            prop_assert_eq!(a.bit(i), b.bit(i));
        }
        if s < a.len().min(b.len()) {
            prop_assert_ne!(a.bit(s), b.bit(s));
        }
    }

    #[test]
    fn hop_round_trip(a in prop::collection::btree_set(0u32..50, 0..10), b in prop::collection::btree_set(0u32..50, 0..10)) {
        let a: Vec<u32> = a.into_iter().collect();
        let b: Vec<u32> = b.into_iter().collect();
        let h = hop_map(&a, &b);
        let back = hop_map(&b, &a);
        prop_assert_eq!(h.len(), a.len().min(b.len()));
        for (x, y) in &h {
            prop_assert_eq!(back.get(y), Some(x));
        }
    }

    #[test]
    fn node_text_round_trips(a in node(20)) {
        prop_assert_eq!(a.to_string().parse::<Node>().unwrap(), a);
    }
}
