use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsr_core::colouring::EdgeColouring;
use zsr_core::embed::{
    achievable_weights, embed_tree_min_degree, find_embedding_with_weight, find_zero_sum_embedding, is_graph_embedding,
    weight_of, Embedding,
};
use zsr_core::treegen::{gen_min_degree_hosts, trees};
use zsr_core::Graph;

/// Weights of all injective maps of `g` into the host, optionally pinned.
fn brute_weights(c: &EdgeColouring, g: &Graph, pin: Option<(usize, usize)>) -> Vec<u8> {
    let (n, m, k) = (c.n(), g.n(), c.k() as usize);
    let edges = g.edges();
    let mut seen = vec![false; k];
    let mut map = vec![0usize; m];
    fn rec(
        i: usize,
        used: u32,
        map: &mut Vec<usize>,
        n: usize,
        pin: Option<(usize, usize)>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if i == map.len() {
            f(map);
            return;
        }
        for h in 0..n {
            if used >> h & 1 == 1 {
                continue;
            }
            if let Some((t, ph)) = pin {
                if (t == i) != (h == ph) {
                    continue;
                }
            }
            map[i] = h;
            rec(i + 1, used | 1 << h, map, n, pin, f);
        }
    }
    rec(0, 0, &mut map, n, pin, &mut |map| {
        let w: usize = edges.iter().map(|&(a, b)| c.get(map[a], map[b]) as usize).sum();
        seen[w % k] = true;
    });
    (0..k as u8).filter(|&w| seen[w as usize]).collect()
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn zero_sum_search_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let host = rng.gen_range(3..=7);
        let m = rng.gen_range(2..=host.min(5));
        let k = rng.gen_range(2..=3u8);
        let c = EdgeColouring::random(host, k, &mut rng);
        let g = random_graph(m, &mut rng);
        let brute = brute_weights(&c, &g, None);
        let found = find_zero_sum_embedding(&c, &g, None);
        assert_eq!(found.is_some(), brute.contains(&0), "{c} {}", g.to_graph6());
        if let Some(e) = found {
            assert!(e.is_valid(&c, &g));
            assert_eq!(e.weight, 0);
        }
        assert_eq!(achievable_weights(&c, &g, None).unwrap(), brute);
    }
}

#[test]
fn pinned_search_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let host = rng.gen_range(4..=7);
        let tree_n = rng.gen_range(2..=host.min(6));
        let ts = trees(tree_n).unwrap();
        let t = &ts[rng.gen_range(0..ts.len())];
        let c = EdgeColouring::random(host, 3, &mut rng);
        let pin = (rng.gen_range(0..tree_n), rng.gen_range(0..host));
        let brute = brute_weights(&c, t, Some(pin));
        assert_eq!(achievable_weights(&c, t, Some(pin)).unwrap(), brute);
        for w in 0..3 {
            let e = find_embedding_with_weight(&c, t, Some(pin), w);
            assert_eq!(e.is_some(), brute.contains(&w));
            if let Some(e) = e {
                assert!(e.is_valid(&c, t));
                assert_eq!(e.map[pin.0], pin.1);
                assert_eq!(e.weight, w);
            }
        }
    }
}

#[test]
fn larger_hosts_find_only_valid_copies() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let c = EdgeColouring::random(10, 3, &mut rng);
        for t in trees(7).unwrap() {
            if let Some(e) = find_zero_sum_embedding(&c, &t, None) {
                assert!(e.is_valid(&c, &t));
                assert_eq!(e.weight, 0);
            }
        }
    }
}

#[test]
fn min_degree_embeddings_are_graph_embeddings() {
    for n in 6..=10 {
        let hosts: Vec<Graph> = gen_min_degree_hosts(n).unwrap().collect();
        for m in 1..=n {
            for t in trees(m).unwrap() {
                for h in &hosts {
                    let r = embed_tree_min_degree(h, &t);
                    if m == n && t.is_star() {
                        assert!(r.is_err());
                    } else {
                        assert!(is_graph_embedding(h, &t, &r.unwrap()));
                    }
                }
            }
        }
    }
    // a star on n vertices does not fit once a perfect matching is removed
    let h = gen_min_degree_hosts(6).unwrap().last().unwrap();
    assert_eq!(h.min_degree(), 4);
}

#[test]
fn embedding_preconditions() {
    let host = Graph::complete(5);
    assert!(embed_tree_min_degree(&host, &Graph::path(3)).is_err());
    let sparse = Graph::path(7);
    assert!(embed_tree_min_degree(&sparse, &Graph::path(3)).is_err());
    assert!(embed_tree_min_degree(&Graph::complete(6), &Graph::complete(3)).is_err());
    assert!(achievable_weights(&EdgeColouring::constant(12, 3, 0), &Graph::path(3), None).is_err());
}

proptest! {
    #[test]
    fn weight_is_edge_colour_sum(seed in any::<u64>(), host in 2usize..=9, k in 2u8..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = EdgeColouring::random(host, k, &mut rng);
        let m = rng.gen_range(1..=host);
        let g = random_graph(m, &mut rng);
        let mut map: Vec<usize> = (0..host).collect();
        for i in (1..host).rev() {
            map.swap(i, rng.gen_range(0..=i));
        }
        map.truncate(m);
        let sum: usize = g.edges().iter().map(|&(a, b)| c.get(map[a], map[b]) as usize).sum();
        prop_assert_eq!(weight_of(&c, &g, &map) as usize, sum % k as usize);
        let e = Embedding::from_map(&c, &g, map.clone());
        prop_assert!(e.is_valid(&c, &g));
        let bad = Embedding { map, weight: (e.weight + 1) % k };
        prop_assert!(!bad.is_valid(&c, &g));
    }

    #[test]
    fn recolouring_unused_edges_keeps_copy(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = EdgeColouring::random(8, 3, &mut rng);
        let t = Graph::path(4);
        if let Some(e) = find_zero_sum_embedding(&c, &t, None) {
            let used: Vec<(usize, usize)> = t.edges().iter().map(|&(a, b)| (e.map[a].min(e.map[b]), e.map[a].max(e.map[b]))).collect();
            for u in 0..8 {
                for v in u + 1..8 {
                    if !used.contains(&(u, v)) {
                        c.set(u, v, rng.gen_range(0..3));
                    }
                }
            }
            prop_assert!(e.is_valid(&c, &t));
            prop_assert!(find_zero_sum_embedding(&c, &t, None).is_some());
        }
    }
}
