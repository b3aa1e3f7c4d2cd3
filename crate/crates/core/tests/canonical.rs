use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsr_core::canon::{automorphism_orbits, canonical_form, is_automorphism, is_isomorphic};
use zsr_core::colouring::{burnside_class_count, enumerate_colourings_canonical, EdgeColouring};
use zsr_core::treegen::{gen_trees, trees};
use zsr_core::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(i: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(i + 1, p, out);
            p.swap(i, j);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Lexicographically least upper triangle over all relabellings.
fn brute_graph_key(g: &Graph, perms: &[Vec<usize>]) -> Vec<bool> {
    let n = g.n();
    perms
        .iter()
        .map(|p| {
            let mut key = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    key.push(g.has_edge(p[u], p[v]));
                }
            }
            key
        })
        .min()
        .unwrap()
}

fn brute_colouring_key(c: &EdgeColouring, perms: &[Vec<usize>]) -> Vec<u8> {
    let n = c.n();
    perms
        .iter()
        .map(|p| {
            let mut key = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    key.push(c.get(p[u], p[v]));
                }
            }
            key
        })
        .min()
        .unwrap()
}

fn random_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

#[test]
fn graph_canonical_form_matches_factorial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=7 {
        let perms = permutations(n);
        let graphs: Vec<Graph> = (0..30)
            .map(|i| random_graph(n, [0.2, 0.5, 0.8][i % 3], &mut rng))
            .collect();
        for (i, g) in graphs.iter().enumerate() {
            let h = g.permuted(&random_perm(n, &mut rng));
            assert_eq!(canonical_form(g).as_str(), canonical_form(&h).as_str());
            for g2 in &graphs[i + 1..] {
                let same = brute_graph_key(g, &perms) == brute_graph_key(g2, &perms);
                assert_eq!(is_isomorphic(g, g2), same, "{} vs {}", g.to_graph6(), g2.to_graph6());
            }
        }
    }
}

#[test]
fn orbits_match_factorial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=7 {
        let perms = permutations(n);
        for i in 0..20 {
            let g = random_graph(n, [0.3, 0.5][i % 2], &mut rng);
            let autos: Vec<&Vec<usize>> = perms.iter().filter(|p| is_automorphism(&g, p)).collect();
            let orbits = automorphism_orbits(&g).unwrap();
            for u in 0..n {
                for v in 0..n {
                    let brute = autos.iter().any(|p| p[u] == v);
                    assert_eq!(orbits.same_orbit(u, v), brute, "{} {u} {v}", g.to_graph6());
                    if brute {
                        let w = orbits.witness(u, v).unwrap();
                        assert!(is_automorphism(&g, &w));
                        assert_eq!(w[u], v);
                    }
                }
            }
        }
    }
}

#[test]
fn colouring_canonical_form_matches_factorial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=6 {
        let perms = permutations(n);
        for k in 2..=3u8 {
            let cs: Vec<EdgeColouring> = (0..25).map(|_| EdgeColouring::random(n, k, &mut rng)).collect();
            for (i, c) in cs.iter().enumerate() {
                let d = c.permuted(&random_perm(n, &mut rng));
                assert_eq!(c.canonical_form(), d.canonical_form());
                for c2 in &cs[i + 1..] {
                    let same = brute_colouring_key(c, &perms) == brute_colouring_key(c2, &perms);
                    assert_eq!(c.is_isomorphic(c2), same, "{c} vs {c2}");
                }
            }
        }
    }
}

#[test]
fn class_counts_match_burnside() {
    for k in 2..=3u8 {
        for n in 1..=5 {
            let count = enumerate_colourings_canonical(n, k, f64::INFINITY).unwrap().count() as u128;
            assert_eq!(count, burnside_class_count(n, k), "n={n} k={k}");
        }
    }
    // known values: 2-colourings of K_n are graphs on n vertices
    assert_eq!(burnside_class_count(4, 2), 11);
    assert_eq!(burnside_class_count(6, 2), 156);
    assert_eq!(burnside_class_count(4, 3), 66);
}

#[test]
fn enumeration_classes_are_distinct_and_complete() {
    let perms = permutations(5);
    let listed: BTreeSet<Vec<u8>> = enumerate_colourings_canonical(5, 3, f64::INFINITY)
        .unwrap()
        .map(|c| brute_colouring_key(&c, &perms))
        .collect();
    assert_eq!(listed.len() as u128, burnside_class_count(5, 3));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let c = EdgeColouring::random(5, 3, &mut rng);
        assert!(listed.contains(&brute_colouring_key(&c, &perms)));
    }
}

fn from_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, s);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

#[test]
fn tree_generation_matches_prufer_oracle() {
    for n in 3usize..=8 {
        let mut classes = BTreeSet::new();
        let total = n.pow(n as u32 - 2);
        for mut code in 0..total {
            let mut seq = vec![0; n - 2];
            for s in seq.iter_mut() {
                *s = code % n;
                code /= n;
            }
            let t = from_prufer(&seq);
            assert!(t.is_tree());
            classes.insert(canonical_form(&t).as_str().to_string());
        }
        let generated: BTreeSet<String> = trees(n)
            .unwrap()
            .iter()
            .map(|t| canonical_form(t).as_str().to_string())
            .collect();
        assert_eq!(generated, classes, "n={n}");
        assert_eq!(gen_trees(n).unwrap().count(), classes.len());
    }
}

#[test]
fn forest_canonical_form_agrees_with_general_refinement() {
    let perms = permutations(7);
    let ts = trees(7).unwrap();
    for (i, a) in ts.iter().enumerate() {
        for b in &ts[i..] {
            let same = brute_graph_key(a, &perms) == brute_graph_key(b, &perms);
            assert_eq!(is_isomorphic(a, b), same);
        }
    }
}

proptest! {
    #[test]
    fn canonical_form_is_relabelling_invariant(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, 0.4, &mut rng);
        let h = g.permuted(&random_perm(n, &mut rng));
        let cf = canonical_form(&g);
        let ch = canonical_form(&h);
        prop_assert_eq!(cf.as_str(), ch.as_str());
        prop_assert!(is_isomorphic(&cf.graph(), &g));
        prop_assert_eq!(g.permuted(&cf.relabeling).to_graph6(), cf.as_str());
    }

    #[test]
    fn colouring_canonical_form_is_relabelling_invariant(seed in any::<u64>(), n in 1usize..=9, k in 2u8..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = EdgeColouring::random(n, k, &mut rng);
        let d = c.permuted(&random_perm(n, &mut rng));
        prop_assert_eq!(c.canonical_form(), d.canonical_form());
    }
}
