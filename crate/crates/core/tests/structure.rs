use zsr_core::canon::automorphism_orbits;
use zsr_core::ramsey::ramsey_bounds_via_theorems;
use zsr_core::structure::{
    asp_from, asp_witnesses_at, conjecture_prediction, degree_class, find_pendant_asp, find_separated_asps,
    has_leaf_adjacent_degree2, is_2_good, DegreeClass,
};
use zsr_core::treegen::trees;
use zsr_core::verify::{verify_leaf_pairs, verify_min_degree_embeddings};
use zsr_core::{Graph, RootedTree};

/// Is there an automorphism of `g` sending `x` to `y`? Plain backtracking.
fn automorphism_maps(g: &Graph, x: usize, y: usize) -> bool {
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut order: Vec<usize> = vec![x];
    order.extend((0..n).filter(|&v| v != x));
    fn rec(i: usize, order: &[usize], map: &mut Vec<usize>, used: u32, g: &Graph) -> bool {
        if i == order.len() {
            return true;
        }
        let a = order[i];
        for h in 0..g.n() {
            if used >> h & 1 == 1 || g.degree(h) != g.degree(a) {
                continue;
            }
            if order[..i].iter().all(|&b| g.has_edge(a, b) == g.has_edge(h, map[b])) {
                map[a] = h;
                if rec(i + 1, order, map, used | 1 << h, g) {
                    return true;
                }
            }
        }
        map[a] = usize::MAX;
        false
    }
    map[x] = y;
    if g.degree(x) != g.degree(y) {
        return false;
    }
    rec(1, &order, &mut map, 1 << y, g)
}

/// Some vertex `z` of the rooted tree and child `x` such that the subtree at
/// `x` has an automorphism moving `x`.
fn brute_asp_from(rt: &RootedTree) -> bool {
    let n = rt.tree.n();
    (0..n).any(|z| {
        rt.children(z).into_iter().any(|x| {
            let dom = rt.subtree(x);
            let sub = rt.tree.induced(&dom);
            (1..dom.len()).any(|j| automorphism_maps(&sub, 0, j))
        })
    })
}

/// Global ASP at `z`: an automorphism of `T - z` moving a neighbour of `z`
/// to a non-neighbour.
fn brute_asp_at(t: &Graph, z: usize) -> bool {
    let keep: Vec<usize> = (0..t.n()).filter(|&v| v != z).collect();
    let f = t.induced(&keep);
    keep.iter().enumerate().any(|(i, &x)| {
        t.has_edge(z, x)
            && keep
                .iter()
                .enumerate()
                .any(|(j, &y)| !t.has_edge(z, y) && automorphism_maps(&f, i, j))
    })
}

#[test]
fn asp_from_matches_brute_force() {
    for n in 2..=9 {
        for t in trees(n).unwrap() {
            for r in 0..n {
                let rt = RootedTree::new(t, r).unwrap();
                let w = asp_from(&rt);
                assert_eq!(w.is_some(), brute_asp_from(&rt), "{} root {r}", t.to_graph6());
                if let Some(w) = w {
                    assert!(w.verify(&t, Some(&rt)));
                }
            }
        }
    }
}

#[test]
fn asp_at_matches_brute_force() {
    for n in 3..=8 {
        for t in trees(n).unwrap() {
            for z in 0..n {
                let ws = asp_witnesses_at(&t, z);
                assert_eq!(!ws.is_empty(), brute_asp_at(&t, z), "{} z={z}", t.to_graph6());
                for w in ws {
                    assert!(w.verify(&t, None));
                }
            }
        }
    }
}

#[test]
fn double_star_picture() {
    // T - v is a double star; its leaf x next to v can be swapped with a
    // leaf that is not next to v
    let mut t = Graph::double_star(2, 2);
    t = t.disjoint_union(&Graph::empty(1));
    t.add_edge(6, 2);
    assert!(t.is_tree());
    assert!(!asp_witnesses_at(&t, 6).is_empty());
}

#[test]
fn leaf_pairs_exhaustive() {
    for n in 6..=12 {
        let r = verify_leaf_pairs(n).unwrap();
        assert!(r.passed(), "n={n}: {:?}", r.failures);
    }
}

#[test]
fn min_degree_embeddings_exhaustive() {
    for n in 6..=9 {
        let r = verify_min_degree_embeddings(n).unwrap();
        assert!(r.passed(), "n={n}: {:?}", r.failures);
    }
}

#[test]
fn two_good_means_distant_leaves() {
    for n in 2..=10 {
        for t in trees(n).unwrap() {
            let leaves = t.leaves();
            let brute = leaves
                .iter()
                .any(|&a| leaves.iter().any(|&b| a != b && t.distance(a, b).unwrap_or(0) >= 3));
            match is_2_good(&t) {
                Some((a, b)) => {
                    assert!(brute);
                    assert!(t.degree(a) == 1 && t.degree(b) == 1);
                }
                None => assert!(!brute, "{}", t.to_graph6()),
            }
        }
    }
}

#[test]
fn degree_classes_partition_trees() {
    for n in [4, 7, 10] {
        for t in trees(n).unwrap() {
            let zero = (0..n).find(|&v| t.degree(v) % 3 == 0);
            let class = degree_class(&t);
            match class {
                DegreeClass::Star { centre } => assert_eq!(t.degree(centre), n - 1),
                DegreeClass::HasVertexZeroMod3 { vertex } => assert_eq!(t.degree(vertex) % 3, 0),
                DegreeClass::NoVertexZeroMod3 => assert!(zero.is_none()),
                DegreeClass::AllDegreesOneMod3 => panic!("tree with all degrees 1 mod 3"),
            }
            let p = conjecture_prediction(&t).unwrap();
            assert!((n..=n + 2).contains(&p));
        }
    }
    assert!(conjecture_prediction(&Graph::path(5)).is_err());
}

/// A leaf next to a degree-2 vertex gives an ASP from some non-leaf vertex
/// with a pendant leaf, so the upper bound drops to n + 1.
#[test]
fn leaf_next_to_degree_two_gives_upper_bound() {
    for n in [7, 10, 13] {
        for t in trees(n).unwrap() {
            if t.is_star() || has_leaf_adjacent_degree2(&t).is_none() {
                continue;
            }
            let p = find_pendant_asp(&t).unwrap_or_else(|| panic!("{}", t.to_graph6()));
            assert!(t.degree(p.leaf) == 1 && t.has_edge(p.v, p.leaf));
            let b = ramsey_bounds_via_theorems(&t).unwrap();
            assert!(b.upper <= n + 1);
            if degree_class(&t) == DegreeClass::NoVertexZeroMod3 {
                assert_eq!(b.exact(), Some(n + 1));
            }
        }
    }
}

#[test]
fn separated_witnesses_lie_in_distinct_branches() {
    for t in trees(10).unwrap() {
        if let Some((v, a, b)) = find_separated_asps(&t) {
            let rt = RootedTree::new(t, v).unwrap();
            let branch = |z: usize, x: usize| {
                let mut w = if z == v { x } else { z };
                while rt.parent(w) != Some(v) {
                    w = rt.parent(w).unwrap();
                }
                w
            };
            assert_ne!(branch(a.z, a.x), branch(b.z, b.x), "{}", t.to_graph6());
        }
    }
}

#[test]
fn orbit_reps_cover_all_roots() {
    for t in trees(8).unwrap() {
        let orbits = automorphism_orbits(&t).unwrap();
        for class in &orbits.classes {
            let rep = RootedTree::new(t, class[0]).unwrap();
            for &r in class {
                let other = RootedTree::new(t, r).unwrap();
                assert_eq!(asp_from(&rep).is_some(), asp_from(&other).is_some());
            }
        }
    }
}

#[test]
fn adjacent_star_centres_have_no_asp() {
    // two K_1,4 joined by P_2, i.e. the double star D(4,4)
    let t = Graph::joined_stars(4, 2);
    assert!(t.is_tree() && t.n() == 10);
    for z in 0..10 {
        assert!(!brute_asp_at(&t, z), "z={z}");
        assert!(!brute_asp_from(&RootedTree::new(t, z).unwrap()));
    }
    assert!(find_pendant_asp(&t).is_none());
    let b = ramsey_bounds_via_theorems(&t).unwrap();
    assert_eq!((b.lower, b.upper), (11, 12));
    // with the middle vertex of P_3 the pendant ASP appears
    assert!(find_pendant_asp(&Graph::joined_stars(2, 3)).is_some());
}
