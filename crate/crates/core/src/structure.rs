//! Structural predicates on trees and forests, each with a checkable witness.

use serde::{Deserialize, Serialize};

use crate::canon::{automorphism_orbits, forest_vertex_codes, forest_witness};
use crate::error::{Result, ZsrError};
use crate::graph::{bits, Graph, RootedTree};

/// Two leaves at distance at least three (or in different components), if
/// the graph is 2-good. The pair returned is the lexicographically first.
pub fn is_2_good(g: &Graph) -> Option<(usize, usize)> {
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    for (i, &a) in leaves.iter().enumerate() {
        let dist = g.bfs_distances(a);
        for &b in &leaves[i + 1..] {
            if dist[b].is_none_or(|d| d >= 3) {
                return Some((a, b));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum DegreeClass {
    Star { centre: usize },
    AllDegreesOneMod3,
    NoVertexZeroMod3,
    HasVertexZeroMod3 { vertex: usize },
}

impl DegreeClass {
    pub fn name(&self) -> &'static str {
        match self {
            DegreeClass::Star { .. } => "Star",
            DegreeClass::AllDegreesOneMod3 => "AllDegreesOneMod3",
            DegreeClass::NoVertexZeroMod3 => "NoVertexZeroMod3",
            DegreeClass::HasVertexZeroMod3 { .. } => "HasVertexZeroMod3",
        }
    }
}

/// Degree class of a forest. Isolated vertices have degree 0 and so count as
/// `0 mod 3`.
pub fn degree_class(t: &Graph) -> DegreeClass {
    if t.is_star() {
        let centre = (0..t.n()).find(|&v| t.degree(v) + 1 == t.n()).unwrap();
        return DegreeClass::Star { centre };
    }
    if let Some(vertex) = (0..t.n()).find(|&v| t.degree(v) % 3 == 0) {
        return DegreeClass::HasVertexZeroMod3 { vertex };
    }
    if (0..t.n()).all(|v| t.degree(v) % 3 == 1) {
        return DegreeClass::AllDegreesOneMod3;
    }
    DegreeClass::NoVertexZeroMod3
}

/// The conjectured value of `R(T, Z_3)` for a tree on `n = 1 mod 3` vertices.
pub fn conjecture_prediction(t: &Graph) -> Result<usize> {
    let n = t.n();
    if n % 3 != 1 {
        return Err(ZsrError::ResidueMismatch { n });
    }
    if !t.is_tree() {
        return Err(ZsrError::PreconditionViolated("prediction is defined for trees".into()));
    }
    Ok(match degree_class(t) {
        DegreeClass::Star { .. } => n + 2,
        DegreeClass::NoVertexZeroMod3 => n + 1,
        DegreeClass::HasVertexZeroMod3 { .. } => n,
        DegreeClass::AllDegreesOneMod3 => unreachable!("no tree has all degrees 1 mod 3"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AspKind {
    /// `sigma` is an automorphism of `T - z`.
    Global,
    /// `x` is a child of `z` in a rooted view and `sigma` is an automorphism
    /// of the subtree `T_x`.
    RootedSubtree,
}

/// Witness `(z, x, y, sigma)` for an automorphism switchable pendant.
/// `sigma` is a permutation of all vertices of the tree; it fixes `z` and
/// everything outside its domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AspWitness {
    pub z: usize,
    pub x: usize,
    pub y: usize,
    pub kind: AspKind,
    pub sigma: Vec<usize>,
    /// Rooted witnesses only: `z` is the root of the rooted view.
    pub at_root: bool,
}

impl AspWitness {
    /// Checks the defining conditions against `t` (and the rooted view for
    /// rooted witnesses).
    pub fn verify(&self, t: &Graph, rooted: Option<&RootedTree>) -> bool {
        let n = t.n();
        if self.sigma.len() != n || !is_permutation(&self.sigma) {
            return false;
        }
        if !t.has_edge(self.z, self.x) || t.has_edge(self.z, self.y) || self.y == self.z {
            return false;
        }
        if self.sigma[self.x] != self.y || self.x == self.y {
            return false;
        }
        match self.kind {
            AspKind::Global => {
                let keep: Vec<usize> = (0..n).filter(|&v| v != self.z).collect();
                self.sigma[self.z] == self.z && preserves_edges(t, &self.sigma, &keep)
            }
            AspKind::RootedSubtree => {
                let Some(rt) = rooted else { return false };
                if rt.parent(self.x) != Some(self.z) || self.at_root != (self.z == rt.root) {
                    return false;
                }
                let dom = rt.subtree(self.x);
                let inside = |v: usize| dom.contains(&v);
                (0..n).all(|v| if inside(v) { inside(self.sigma[v]) } else { self.sigma[v] == v })
                    && preserves_edges(t, &self.sigma, &dom)
            }
        }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

/// `sigma` maps `dom` onto itself and preserves adjacency and non-adjacency
/// inside it.
fn preserves_edges(t: &Graph, sigma: &[usize], dom: &[usize]) -> bool {
    dom.iter().all(|&a| dom.contains(&sigma[a]))
        && dom
            .iter()
            .all(|&a| dom.iter().all(|&b| a == b || t.has_edge(a, b) == t.has_edge(sigma[a], sigma[b])))
}

/// One global witness per neighbour `x` of `z` whose orbit under `Aut(T - z)`
/// leaves `N(z)`. Empty iff there is no ASP at `z`.
pub fn asp_witnesses_at(t: &Graph, z: usize) -> Vec<AspWitness> {
    let n = t.n();
    let keep: Vec<usize> = (0..n).filter(|&v| v != z).collect();
    let forest = t.induced(&keep);
    let orbits = automorphism_orbits(&forest).expect("forests always have orbits");
    let local = |v: usize| if v < z { v } else { v - 1 };
    let mut out = Vec::new();
    for x in bits(t.neighbours(z)) {
        let class = orbits.class_of(local(x));
        let Some(&y_local) = class.iter().find(|&&w| !t.has_edge(z, keep[w])) else {
            continue;
        };
        let tau = orbits.witness(local(x), y_local).expect("same orbit");
        let mut sigma: Vec<usize> = (0..n).collect();
        for (i, &a) in keep.iter().enumerate() {
            sigma[a] = keep[tau[i]];
        }
        out.push(AspWitness {
            z,
            x,
            y: keep[y_local],
            kind: AspKind::Global,
            sigma,
            at_root: false,
        });
    }
    out
}

/// Rooted witness with `x` a given child of `z`, if `Aut(T_x)` moves `x`.
fn rooted_witness_at(rt: &RootedTree, z: usize, x: usize) -> Option<AspWitness> {
    let dom = rt.subtree(x);
    let sub = rt.tree.induced(&dom);
    let codes = forest_vertex_codes(&sub);
    let j = (1..dom.len()).find(|&j| codes[j] == codes[0])?;
    let tau = forest_witness(&sub, 0, j).expect("equal codes");
    let mut sigma: Vec<usize> = (0..rt.tree.n()).collect();
    for (i, &a) in dom.iter().enumerate() {
        sigma[a] = dom[tau[i]];
    }
    Some(AspWitness {
        z,
        x,
        y: dom[j],
        kind: AspKind::RootedSubtree,
        sigma,
        at_root: z == rt.root,
    })
}

/// All rooted witnesses, one per (z, child x) pair that admits one, with `z`
/// in breadth-first order from the root.
pub fn asp_witnesses_from(rt: &RootedTree) -> Vec<AspWitness> {
    rt.bfs_order()
        .into_iter()
        .flat_map(|z| rt.children(z).into_iter().filter_map(move |x| rooted_witness_at(rt, z, x)))
        .collect()
}

/// First rooted witness in breadth-first order: `z` is the root or any vertex
/// below it, `x` a child of `z`, and `sigma` an automorphism of `T_x` with
/// `sigma(x) != x`.
pub fn asp_from(rt: &RootedTree) -> Option<AspWitness> {
    rt.bfs_order()
        .into_iter()
        .find_map(|z| rt.children(z).into_iter().find_map(|x| rooted_witness_at(rt, z, x)))
}

/// The piece `{v} + (subtree of c)` of `t` rooted at `v`, relabelled with `v`
/// as vertex 0, plus the map back to `t`'s labels.
pub fn branch_at(t: &Graph, v: usize, c: usize) -> (RootedTree, Vec<usize>) {
    let rt = RootedTree::new(*t, v).expect("tree");
    let mut verts = vec![v];
    verts.extend(rt.subtree(c));
    let piece = RootedTree::new(t.induced(&verts), 0).expect("branch is a tree");
    (piece, verts)
}

fn lift(w: AspWitness, map: &[usize], n: usize) -> AspWitness {
    let mut sigma: Vec<usize> = (0..n).collect();
    for (i, &a) in map.iter().enumerate() {
        sigma[a] = map[w.sigma[i]];
    }
    AspWitness {
        z: map[w.z],
        x: map[w.x],
        y: map[w.y],
        kind: w.kind,
        sigma,
        at_root: w.at_root,
    }
}

/// Rooted witness inside the branch through child `c` of `v`, in `t`'s labels.
pub fn branch_asp(t: &Graph, v: usize, c: usize) -> Option<AspWitness> {
    let (piece, map) = branch_at(t, v, c);
    asp_from(&piece).map(|w| lift(w, &map, t.n()))
}

/// Two ASPs from `v` lying in distinct branches at `v`. Each witness is either
/// at `v` itself (with `x` the branch's first vertex) or at a vertex inside its
/// branch.
pub fn separated_asps(t: &Graph, v: usize) -> Option<(AspWitness, AspWitness)> {
    let mut found = bits(t.neighbours(v)).filter_map(|c| branch_asp(t, v, c));
    let a = found.next()?;
    let b = found.next()?;
    Some((a, b))
}

/// Vertex with two separated ASPs, the smallest such.
pub fn find_separated_asps(t: &Graph) -> Option<(usize, AspWitness, AspWitness)> {
    (0..t.n()).find_map(|v| separated_asps(t, v).map(|(a, b)| (v, a, b)))
}

/// A non-leaf `v`, a leaf `leaf` adjacent to `v`, and an ASP from `v` in a
/// branch at `v` other than `{leaf}`. This is the configuration the upper
/// bound argument actually embeds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantAsp {
    pub v: usize,
    pub leaf: usize,
    pub witness: AspWitness,
}

pub fn find_pendant_asp(t: &Graph) -> Option<PendantAsp> {
    (0..t.n()).filter(|&v| t.degree(v) >= 2).find_map(|v| {
        let leaf = bits(t.neighbours(v)).find(|&u| t.degree(u) == 1)?;
        bits(t.neighbours(v))
            .filter(|&c| c != leaf)
            .find_map(|c| branch_asp(t, v, c))
            .map(|witness| PendantAsp { v, leaf, witness })
    })
}

/// Some leaf whose neighbour has degree 2, as `(leaf, neighbour)`.
pub fn has_leaf_adjacent_degree2(t: &Graph) -> Option<(usize, usize)> {
    (0..t.n()).find_map(|u| {
        if t.degree(u) != 1 {
            return None;
        }
        let w = bits(t.neighbours(u)).next()?;
        (t.degree(w) == 2).then_some((u, w))
    })
}

fn longest_path(t: &Graph) -> Vec<usize> {
    let far = |s: usize| {
        let d = t.bfs_distances(s);
        (0..t.n()).max_by_key(|&v| (d[v].unwrap_or(0), std::cmp::Reverse(v))).unwrap()
    };
    let a = far(0);
    let b = far(a);
    let parents = t.bfs_parents(a);
    let mut path = vec![b];
    let mut cur = b;
    while let Some(p) = parents[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

fn remainder_ok(t: &Graph, a: usize, b: usize) -> bool {
    if a == b || t.degree(a) != 1 || t.degree(b) != 1 {
        return false;
    }
    let keep: Vec<usize> = (0..t.n()).filter(|&v| v != a && v != b).collect();
    let r = t.induced(&keep);
    r.is_tree() && !r.is_star()
}

/// The longest-path case analysis. `None` when a case does not produce a
/// valid pair.
fn leaf_pair_by_cases(t: &Graph) -> Option<(usize, usize)> {
    let path = longest_path(t);
    let d = path.len() - 1;
    if d < 3 {
        return None;
    }
    let (u, z) = (path[0], path[1]);
    let (v, w) = (path[d], path[d - 1]);
    let leaves_at = |a: usize, end: usize| {
        // path end last so removals prefer off-path leaves
        let mut l: Vec<usize> = bits(t.neighbours(a)).filter(|&b| t.degree(b) == 1 && b != end).collect();
        l.push(end);
        l
    };
    let lw = leaves_at(w, v);
    let lz = leaves_at(z, u);
    let pick = if lw.len() >= 3 {
        (lw[0], lw[1])
    } else if lz.len() >= 3 {
        (lz[0], lz[1])
    } else if lw.len() + lz.len() >= 3 {
        (lw[0], lz[0])
    } else {
        // w and z each carry only the path ends; look for a branch between.
        let interior = &path[2..d - 1];
        let branch = interior.iter().find(|&&x| t.degree(x) >= 3).map(|&x| {
            let on_path = |y: usize| path.contains(&y);
            let rt = RootedTree::new(*t, x).expect("tree");
            let off = bits(t.neighbours(x)).find(|&c| !on_path(c)).expect("branching vertex");
            *rt.subtree(off).iter().find(|&&y| t.degree(y) == 1).expect("subtree has a leaf")
        });
        match branch {
            Some(y) => (y, v),
            None if d >= 5 => (u, v),
            None => return None,
        }
    };
    remainder_ok(t, pick.0, pick.1).then_some(pick)
}

/// Two leaves whose removal leaves a tree that is not a star. Follows the
/// longest-path case analysis; scans all leaf pairs if that ever fails.
pub fn find_removable_leaf_pair(t: &Graph) -> Result<(usize, usize)> {
    find_removable_leaf_pair_traced(t).map(|(p, _)| p)
}

/// As [`find_removable_leaf_pair`], also reporting whether the exhaustive
/// scan was needed.
pub fn find_removable_leaf_pair_traced(t: &Graph) -> Result<((usize, usize), bool)> {
    if !t.is_tree() || t.n() < 6 {
        return Err(ZsrError::PreconditionViolated("leaf pair needs a tree on at least 6 vertices".into()));
    }
    if t.is_star() {
        return Err(ZsrError::PreconditionViolated("leaf pair undefined for a star".into()));
    }
    if let Some(p) = leaf_pair_by_cases(t) {
        return Ok((p, false));
    }
    let leaves = t.leaves();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            if remainder_ok(t, a, b) {
                return Ok(((a, b), true));
            }
        }
    }
    Err(ZsrError::PreconditionViolated("no removable leaf pair exists".into()))
}
