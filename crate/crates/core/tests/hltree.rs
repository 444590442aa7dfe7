mod common;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use common::{hl_oracle, level_sets, table_lookup};
use partlab::coloring::SetColoring;
use partlab::hltree::{
    check_tr_emb, search_endhom_subtree, search_hl, t_family, tr_emb, tr_emb_count, tstar, verify_hl, Embedding,
    HlCertificate, HlError, HlFailure, LevelColoring, SearchBudget, SearchOutcome, SubtreeMode, SubtreeQuery,
};
use partlab::seqtree::{FiniteTree, Node};
use partlab::similarity::{is_end_homogeneous, is_homogeneous, similarity_type, HomMode, OrderFamily};

fn n(s: &str) -> Node {
    s.parse().unwrap()
}

#[test]
fn coloring_construction() {
    let zeros = level_sets(2, 3).into_iter().map(|s| (s, 0));
    let d = LevelColoring::from_table(2, 3, 3, zeros).unwrap();
    assert!(level_sets(2, 3).iter().all(|s| d.color(s) == 0));

    let a = LevelColoring::from_seed(42, 2, 3, 4).unwrap();
    let b = LevelColoring::from_seed(42, 2, 3, 4).unwrap();
    assert_eq!(a.to_table(), b.to_table());
    assert_eq!(a.color_of(&[n("0110"), n("0001")]), a.color_of(&[n("0001"), n("0110")]));

    let mut partial = level_sets(1, 2);
    partial.pop();
    let err = LevelColoring::from_table(1, 2, 2, partial.into_iter().map(|s| (s, 1))).unwrap_err();
    assert!(matches!(err, HlError::IncompleteTable { .. }));

    let back = LevelColoring::from_json(&a.to_json()).unwrap();
    assert_eq!(back.to_table(), a.to_table());
}

#[test]
fn verify_examples() {
    let d = LevelColoring::from_fn(1, 2, 2, |_| 1).unwrap();
    let cert = HlCertificate {
        n: 1,
        levels: vec![0, 1],
        color: 1,
        trees: vec![FiniteTree::full(2).unwrap()],
        levels_exact: true,
    };
    assert!(verify_hl(&d, &cert).unwrap().holds());
    let bad = LevelColoring::from_fn(1, 2, 2, |s| u32::from(s[0] != n("1"))).unwrap();
    assert_eq!(
        verify_hl(&bad, &cert).unwrap().witness(),
        Some(&HlFailure::WrongColor { level: 1, tuple: vec![n("1")], color: 0 })
    );
    let round = HlCertificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(round, cert);
}

#[test]
fn search_examples() {
    let d = LevelColoring::from_fn(1, 3, 4, |_| 2).unwrap();
    let cert = search_hl(&d, 2, SearchBudget::default()).unwrap().found().unwrap();
    assert_eq!((cert.levels.clone(), cert.color), (vec![0, 1], 2));

    let parity = LevelColoring::from_fn(1, 2, 6, |s| (s[0].len() % 2) as u32).unwrap();
    let cert = search_hl(&parity, 2, SearchBudget::default()).unwrap().found().unwrap();
    assert_eq!(cert.levels[0] % 2, cert.levels[1] % 2);
    assert!(verify_hl(&parity, &cert).unwrap().holds());

    let d = LevelColoring::from_seed(1, 2, 3, 6).unwrap();
    assert_eq!(search_hl(&d, 2, SearchBudget { nodes: 2 }).unwrap(), SearchOutcome::CapExceeded);
    assert!(search_hl(&d, 0, SearchBudget::default()).is_err());
}

#[test]
fn searches_round_trip_and_match_the_oracle() {
    for seed in 0..100 {
        let d = LevelColoring::from_seed(seed, 2, 2, 5).unwrap();
        if let SearchOutcome::Found(c) = search_hl(&d, 2, SearchBudget::default()).unwrap() {
            assert!(verify_hl(&d, &c).unwrap().holds(), "seed {seed}");
        }
    }
    let dom = level_sets(1, 2);
    for mask in 0u32..1 << dom.len() {
        let table: BTreeMap<Vec<Node>, u32> =
            dom.iter().enumerate().map(|(i, s)| (s.clone(), mask >> i & 1)).collect();
        let d = LevelColoring::from_table(1, 2, 2, table.clone()).unwrap();
        let got = search_hl(&d, 1, SearchBudget::default()).unwrap().found().map(|c| (c.levels, c.color));
        assert_eq!(got, hl_oracle(1, 2, 2, 1, table_lookup(&table)), "coloring {mask:#b}");
    }
}

#[test]
fn worker_count_does_not_change_certificates() {
    let pool = |k| rayon::ThreadPoolBuilder::new().num_threads(k).build().unwrap();
    let (one, four) = (pool(1), pool(4));
    for seed in 0..20 {
        let d = LevelColoring::from_seed(seed, 2, 3, 5).unwrap();
        let a = one.install(|| search_hl(&d, 2, SearchBudget::default()).unwrap());
        let b = four.install(|| search_hl(&d, 2, SearchBudget::default()).unwrap());
        assert_eq!(a, b, "seed {seed}");
    }
}

#[test]
fn subtree_search_examples() {
    let constant = LevelColoring::from_fn(2, 2, 4, |_| 0).unwrap();
    for mode in [SubtreeMode::Eht, SubtreeMode::Aht, SubtreeMode::Ht] {
        let mut q = SubtreeQuery::new(4, mode);
        q.min_split_levels = 4;
        q.per_f = true;
        let r = search_endhom_subtree(&constant, &q, SearchBudget::default()).unwrap().found().unwrap();
        assert_eq!(r.tree, FiniteTree::full(4).unwrap());
    }

    let ids: Mutex<HashMap<Vec<u16>, u32>> = Mutex::new(HashMap::new());
    let by_type = LevelColoring::from_fn(2, 1 << 16, 4, move |s| {
        let code = similarity_type(s, &OrderFamily::lexicographic()).0;
        let mut ids = ids.lock().unwrap();
        let next = ids.len() as u32;
        *ids.entry(code).or_insert(next)
    })
    .unwrap();
    let mut q = SubtreeQuery::new(4, SubtreeMode::Aht);
    q.min_split_levels = 2;
    let r = search_endhom_subtree(&by_type, &q, SearchBudget::default()).unwrap().found().unwrap();
    assert!(is_homogeneous(&by_type, &r.tree, &r.orders, HomMode::Almost).unwrap().holds());

    for seed in 0..10 {
        let d = LevelColoring::from_seed(seed, 2, 2, 5).unwrap();
        let mut q = SubtreeQuery::new(5, SubtreeMode::Eht);
        q.min_split_levels = 2;
        match search_endhom_subtree(&d, &q, SearchBudget::default()).unwrap() {
            SearchOutcome::Found(r) => {
                assert!(r.tree.split_levels().unwrap().len() >= 2);
                assert!(is_end_homogeneous(&d, &r.tree, &r.orders).unwrap().holds(), "seed {seed}");
            }
            SearchOutcome::Exhausted => {}
            SearchOutcome::CapExceeded => panic!("cap at seed {seed}"),
        }
    }

    let mut q = SubtreeQuery::new(3, SubtreeMode::Eht);
    q.orbit_bound = Some(2);
    assert!(search_endhom_subtree(&constant, &q, SearchBudget::default()).is_err());
}

#[test]
fn tstar_examples() {
    let bits = |t: &FiniteTree, l: usize| t.level(l).iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let t0 = tstar(0).unwrap();
    assert_eq!(t0.nodes().count(), 2);
    assert_eq!(bits(&t0, 1), vec!["1"]);
    assert_eq!(bits(&tstar(1).unwrap(), 2), vec!["10"]);
    assert_eq!(bits(&tstar(2).unwrap(), 4), vec!["1000", "1001"]);
    assert!(tstar(7).is_err());
}

/// The five clauses, evaluated directly on the pairs of `h`.
fn clauses_hold(k: u32, n: usize, h: &Embedding) -> bool {
    let t = tstar(k).unwrap();
    let top = t.depth();
    let map: BTreeMap<Node, Node> = h.map.iter().copied().collect();
    if map.len() != t.node_count() || !t.nodes().all(|x| map.contains_key(x)) {
        return false;
    }
    for (a, ha) in &map {
        for (b, hb) in &map {
            if (a == b) != (ha == hb) {
                return false;
            }
            if a.is_strict_prefix_of(b) != ha.is_strict_prefix_of(hb) {
                return false;
            }
            if a.len() == b.len() && ha.len() != hb.len() {
                return false;
            }
            if b.len() == a.len() + 1 && a.is_prefix_of(b) && hb.bit(ha.len()) != b.bit(a.len()) {
                return false;
            }
        }
        if a.len() == top && ha.len() != n {
            return false;
        }
    }
    true
}

#[test]
fn embedding_examples() {
    let e = tr_emb(0, 1, 100).unwrap();
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].map, vec![(n(""), n("")), (n("1"), n("1"))]);
    // T*_2 has nodes of five lengths, so n must be at least 4.
    assert!(tr_emb(2, 3, 100).unwrap().is_empty());
    let size = tstar(2).unwrap().node_count();
    let fam = t_family(2, 4, 1000).unwrap();
    assert!(!fam.is_empty());
    assert!(fam.iter().all(|r| r.len() == size));
}

#[test]
fn embeddings_pass_the_clauses() {
    for k in 0..=2 {
        for len in 0..=6 {
            let all = tr_emb(k, len, 100_000).unwrap();
            for h in &all {
                assert!(clauses_hold(k, len, h), "k {k} n {len} {h:?}");
                assert_eq!(check_tr_emb(k, len, h).unwrap(), Ok(()));
            }
            if let Some(c) = tr_emb_count(k, len).unwrap() {
                assert_eq!(c, all.len() as u128, "k {k} n {len}");
            }
        }
    }
    let mut h = tr_emb(1, 3, 1).unwrap().remove(0);
    h.map[1].1 = h.map[0].1;
    assert!(!clauses_hold(1, 3, &h));
    assert!(check_tr_emb(1, 3, &h).unwrap().is_err());
}
