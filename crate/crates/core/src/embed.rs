//! Embedding searches: zero-sum copies in coloured complete graphs, tree
//! packing into dense hosts, and pairs of root-pinned embeddings with
//! different weights.

use serde::{Deserialize, Serialize};

use crate::colouring::EdgeColouring;
use crate::error::{Result, ZsrError};
use crate::graph::{bits, full_mask, Graph, RootedTree};
use crate::structure::{asp_from, find_removable_leaf_pair, AspWitness};

/// Injective map from target vertices to host vertices with its weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
    pub weight: u8,
}

impl Embedding {
    pub fn from_map(c: &EdgeColouring, g: &Graph, map: Vec<usize>) -> Self {
        let weight = weight_of(c, g, &map);
        Embedding { map, weight }
    }

    /// Injective, in range, and the stored weight matches the colouring.
    pub fn is_valid(&self, c: &EdgeColouring, g: &Graph) -> bool {
        self.map.len() == g.n() && is_injective(&self.map, c.n()) && self.weight == weight_of(c, g, &self.map)
    }
}

pub fn weight_of(c: &EdgeColouring, g: &Graph, map: &[usize]) -> u8 {
    let k = c.k() as usize;
    (g.edges().iter().map(|&(a, b)| c.get(map[a], map[b]) as usize).sum::<usize>() % k) as u8
}

fn is_injective(map: &[usize], n: usize) -> bool {
    let mut seen = 0u64;
    map.iter().all(|&h| {
        let ok = h < n && seen & (1 << h) == 0;
        seen |= 1 << h;
        ok
    })
}

/// Search plan for a fixed target, reusable across colourings.
///
/// Target vertices with edges are visited breadth-first within components,
/// largest degree first; isolated vertices are placed afterwards without
/// search. Vertices with equal neighbourhoods (twins) are interchangeable, so
/// their host images are forced to increase along the order.
#[derive(Clone, Debug)]
pub struct ZeroSumPlan {
    n: usize,
    k: u8,
    /// Target vertex at each search position (non-isolated ones only).
    order: Vec<usize>,
    /// Positions of earlier neighbours, per position.
    back: Vec<Vec<usize>>,
    /// Earlier twin position whose image must be smaller, per position.
    twin_before: Vec<Option<usize>>,
    isolated: Vec<usize>,
    pinned: Option<usize>,
}

impl ZeroSumPlan {
    /// `pinned` names a target vertex whose host image will be fixed at
    /// search time.
    pub fn new(g: &Graph, k: u8, pinned: Option<usize>) -> Self {
        let n = g.n();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut starts: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
        starts.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        if let Some(p) = pinned {
            starts.retain(|&v| v != p);
            starts.insert(0, p);
        }
        for s in starts {
            if placed[s] || (g.degree(s) == 0 && Some(s) != pinned) {
                continue;
            }
            placed[s] = true;
            let mut queue = vec![s];
            let mut i = 0;
            while i < queue.len() {
                let u = queue[i];
                order.push(u);
                let mut nb: Vec<usize> = bits(g.neighbours(u)).filter(|&w| !placed[w]).collect();
                nb.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
                for w in nb {
                    placed[w] = true;
                    queue.push(w);
                }
                i += 1;
            }
        }
        let isolated: Vec<usize> = (0..n).filter(|&v| !placed[v]).collect();
        let pos_of = {
            let mut p = vec![usize::MAX; n];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(g.neighbours(v)).map(|w| pos_of[w]).filter(|&j| j < i).collect())
            .collect();
        let twin_key = |v: usize| g.neighbours(v) & !(1u32 << v);
        let twin_before = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if Some(v) == pinned {
                    return None;
                }
                (0..i).rev().find(|&j| {
                    let u = order[j];
                    Some(u) != pinned && twin_key(u) & !(1u32 << v) == twin_key(v) & !(1u32 << u)
                })
            })
            .collect();
        ZeroSumPlan {
            n,
            k,
            order,
            back,
            twin_before,
            isolated,
            pinned,
        }
    }

    pub fn target_size(&self) -> usize {
        self.n
    }

    fn complete(&self, images: &[usize], used: u32, allowed: u32) -> Option<Vec<usize>> {
        let mut map = vec![0; self.n];
        for (i, &v) in self.order.iter().enumerate() {
            map[v] = images[i];
        }
        let mut free = bits(allowed & !used);
        for &v in &self.isolated {
            map[v] = free.next()?;
        }
        Some(map)
    }

    /// Searches `matrix` (an `host_n x host_n` colour table) for an embedding
    /// whose weight is in `targets` (bit `w` set for weight `w`), using only
    /// hosts in `allowed`. `pin_host` is the image of the pinned vertex.
    pub fn search(
        &self,
        matrix: &[u8],
        host_n: usize,
        allowed: u32,
        pin_host: Option<usize>,
        targets: u8,
    ) -> Option<(Vec<usize>, u8)> {
        if (allowed.count_ones() as usize) < self.n {
            return None;
        }
        if let (Some(_), Some(h)) = (self.pinned, pin_host) {
            if allowed & (1 << h) == 0 {
                return None;
            }
        }
        let mut images = vec![0usize; self.order.len()];
        let mut found = None;
        self.dfs(0, 0, 0, matrix, host_n, allowed, pin_host, targets, &mut images, &mut found);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        pos: usize,
        used: u32,
        weight: usize,
        matrix: &[u8],
        host_n: usize,
        allowed: u32,
        pin_host: Option<usize>,
        targets: u8,
        images: &mut [usize],
        found: &mut Option<(Vec<usize>, u8)>,
    ) -> bool {
        if pos == self.order.len() {
            let w = (weight % self.k as usize) as u8;
            if targets & (1 << w) != 0 {
                if let Some(map) = self.complete(images, used, allowed) {
                    *found = Some((map, w));
                    return true;
                }
            }
            return false;
        }
        let v = self.order[pos];
        let mut cands = allowed & !used;
        if pos == 0 && self.pinned == Some(v) {
            if let Some(h) = pin_host {
                cands &= 1 << h;
            }
        }
        if let Some(j) = self.twin_before[pos] {
            cands &= !full_mask(images[j] + 1);
        }
        for h in bits(cands) {
            let row = &matrix[h * host_n..(h + 1) * host_n];
            let add: usize = self.back[pos].iter().map(|&j| row[images[j]] as usize).sum();
            images[pos] = h;
            if self.dfs(pos + 1, used | 1 << h, weight + add, matrix, host_n, allowed, pin_host, targets, images, found) {
                return true;
            }
        }
        false
    }

    /// Set of weights reachable (bit mask), stopping once all are seen.
    pub fn weights(&self, matrix: &[u8], host_n: usize, allowed: u32, pin_host: Option<usize>) -> u8 {
        let all = ((1u16 << self.k) - 1) as u8;
        let mut seen = 0u8;
        while seen != all {
            match self.search(matrix, host_n, allowed, pin_host, all & !seen) {
                Some((_, w)) => seen |= 1 << w,
                None => break,
            }
        }
        seen
    }
}

fn check_sizes(c: &EdgeColouring, g: &Graph, pin: Option<(usize, usize)>) -> bool {
    if g.n() > c.n() {
        return false;
    }
    match pin {
        Some((t, h)) => t < g.n() && h < c.n(),
        None => true,
    }
}

/// A zero-sum copy of `g` in `c`, honouring `pin = (target vertex, host
/// vertex)`. `None` iff no such copy exists.
pub fn find_zero_sum_embedding(c: &EdgeColouring, g: &Graph, pin: Option<(usize, usize)>) -> Option<Embedding> {
    find_embedding_with_weight(c, g, pin, 0)
}

pub fn find_embedding_with_weight(c: &EdgeColouring, g: &Graph, pin: Option<(usize, usize)>, weight: u8) -> Option<Embedding> {
    if !check_sizes(c, g, pin) {
        return None;
    }
    let plan = ZeroSumPlan::new(g, c.k(), pin.map(|p| p.0));
    let matrix = c.matrix();
    plan.search(&matrix, c.n(), full_mask(c.n()), pin.map(|p| p.1), 1 << weight)
        .map(|(map, weight)| Embedding { map, weight })
}

pub const MAX_WEIGHT_HOST: usize = 10;

/// Every weight attained by some embedding of `g` in `c` (sorted).
pub fn achievable_weights(c: &EdgeColouring, g: &Graph, pin: Option<(usize, usize)>) -> Result<Vec<u8>> {
    if c.n() > MAX_WEIGHT_HOST {
        return Err(ZsrError::SizeUnsupported(format!(
            "achievable weights on K_{} (limit {MAX_WEIGHT_HOST})",
            c.n()
        )));
    }
    if !check_sizes(c, g, pin) {
        return Ok(vec![]);
    }
    let plan = ZeroSumPlan::new(g, c.k(), pin.map(|p| p.0));
    let mask = plan.weights(&c.matrix(), c.n(), full_mask(c.n()), pin.map(|p| p.1));
    Ok((0..c.k()).filter(|&w| mask & (1 << w) != 0).collect())
}

// ---------------------------------------------------------------------------
// Tree packing into hosts of minimum degree n - 2.

/// Any embedding of `t` into `host` restricted to `hosts`, by backtracking.
fn subgraph_embedding(host: &Graph, hosts: &[usize], t: &Graph) -> Option<Vec<usize>> {
    let order = {
        let plan = ZeroSumPlan::new(t, 2, None);
        let mut o = plan.order.clone();
        o.extend(plan.isolated.iter().copied());
        o
    };
    let allowed: u32 = hosts.iter().fold(0, |m, &h| m | 1 << h);
    let mut map = vec![usize::MAX; t.n()];
    fn rec(i: usize, order: &[usize], host: &Graph, t: &Graph, allowed: u32, used: u32, map: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut cands = allowed & !used;
        for w in bits(t.neighbours(v)) {
            if map[w] != usize::MAX {
                cands &= host.neighbours(map[w]);
            }
        }
        for h in bits(cands) {
            map[v] = h;
            if rec(i + 1, order, host, t, allowed, used | 1 << h, map) {
                return true;
            }
        }
        map[v] = usize::MAX;
        false
    }
    rec(0, &order, host, t, allowed, 0, &mut map).then_some(map)
}

fn remove_vertices(t: &Graph, gone: &[usize]) -> (Graph, Vec<usize>) {
    let keep: Vec<usize> = (0..t.n()).filter(|v| !gone.contains(v)).collect();
    (t.induced(&keep), keep)
}

fn embed_rec(host: &Graph, hosts: &[usize], t: &Graph) -> Option<Vec<usize>> {
    let m = hosts.len();
    debug_assert_eq!(t.n(), m);
    if m <= 6 {
        return subgraph_embedding(host, hosts, t);
    }
    let local_deg = |x: usize| hosts.iter().filter(|&&h| h != x && host.has_edge(x, h)).count();
    if let Some(&x) = hosts.iter().find(|&&x| local_deg(x) == m - 1) {
        // full-degree host vertex takes a leaf whose removal keeps a non-star
        let u = t.leaves().into_iter().find(|&u| !remove_vertices(t, &[u]).0.is_star())?;
        let (rest, keep) = remove_vertices(t, &[u]);
        let sub_hosts: Vec<usize> = hosts.iter().copied().filter(|&h| h != x).collect();
        let sub = embed_rec(host, &sub_hosts, &rest)?;
        let mut map = vec![0; m];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = sub[i];
        }
        map[u] = x;
        Some(map)
    } else {
        // complement of a perfect matching: a non-adjacent pair takes two leaves
        let x = hosts[0];
        let y = *hosts.iter().find(|&&y| y != x && !host.has_edge(x, y))?;
        let (u, w) = find_removable_leaf_pair(t).ok()?;
        let (rest, keep) = remove_vertices(t, &[u, w]);
        let sub_hosts: Vec<usize> = hosts.iter().copied().filter(|&h| h != x && h != y).collect();
        let sub = embed_rec(host, &sub_hosts, &rest)?;
        let mut map = vec![0; m];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = sub[i];
        }
        map[u] = x;
        map[w] = y;
        Some(map)
    }
}

/// Embeds a tree on at most `n` vertices into a host on `n >= 6` vertices with
/// minimum degree at least `n - 2`, by induction on `n`: a full-degree host
/// vertex absorbs a leaf, otherwise a non-adjacent host pair absorbs a
/// removable leaf pair. Smaller trees are first grown to `n` vertices by
/// hanging new leaves off leaves, which never yields a star.
pub fn embed_tree_min_degree(host: &Graph, t: &Graph) -> Result<Vec<usize>> {
    let n = host.n();
    if n < 6 {
        return Err(ZsrError::PreconditionViolated(format!("host has {n} < 6 vertices")));
    }
    if host.min_degree() + 2 < n {
        return Err(ZsrError::PreconditionViolated(format!(
            "host minimum degree {} < n - 2 = {}",
            host.min_degree(),
            n - 2
        )));
    }
    if !t.is_tree() || t.n() > n {
        return Err(ZsrError::PreconditionViolated(format!("target must be a tree on at most {n} vertices")));
    }
    if t.n() == n && t.is_star() {
        return Err(ZsrError::PreconditionViolated("target is the star K_{1,n-1}".into()));
    }
    let m = t.n();
    let mut grown = t.disjoint_union(&Graph::empty(n - m));
    for new in m..n {
        let anchor = if new == 1 { 0 } else { (0..new).find(|&v| grown.degree(v) == 1).unwrap() };
        grown.add_edge(anchor, new);
    }
    let hosts: Vec<usize> = (0..n).collect();
    let map = embed_rec(host, &hosts, &grown)
        .ok_or_else(|| ZsrError::PreconditionViolated("embedding induction failed".into()))?;
    Ok(map[..m].to_vec())
}

/// `map` realises `t` inside `host`: injective and edge-preserving.
pub fn is_graph_embedding(host: &Graph, t: &Graph, map: &[usize]) -> bool {
    map.len() == t.n() && is_injective(map, host.n()) && t.edges().iter().all(|&(a, b)| host.has_edge(map[a], map[b]))
}

// ---------------------------------------------------------------------------
// Two root-pinned embeddings with different weights.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistinctWeightCase {
    /// The witness sits at the root: swap the images of `x` and `sigma(x)`.
    WitnessAtRoot,
    /// Every candidate side clique is monochromatic: move the branch root.
    MonochromaticSide,
    /// A non-monochromatic side clique: swap inside it at a two-coloured vertex.
    MixedSide,
    /// Constructive cases did not apply; exhaustive pinned search.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctWeightPair {
    pub first: Embedding,
    pub second: Embedding,
    pub case: DistinctWeightCase,
    pub witness: AspWitness,
}

pub fn two_distinct_weight_embeddings(c: &EdgeColouring, t: &RootedTree, v: usize) -> Result<(Embedding, Embedding)> {
    two_distinct_weight_embeddings_traced(c, t, v).map(|p| (p.first, p.second))
}

pub fn two_distinct_weight_embeddings_traced(c: &EdgeColouring, t: &RootedTree, v: usize) -> Result<DistinctWeightPair> {
    let n = c.n();
    if t.tree.n() != n {
        return Err(ZsrError::PreconditionViolated(format!(
            "tree has {} vertices, host has {n}",
            t.tree.n()
        )));
    }
    if v >= n {
        return Err(ZsrError::PreconditionViolated(format!("host vertex {v} out of range")));
    }
    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let v1 = *others
        .first()
        .ok_or_else(|| ZsrError::PreconditionViolated("host too small".into()))?;
    let v2 = *others
        .iter()
        .find(|&&u| c.get(v, u) != c.get(v, v1))
        .ok_or_else(|| ZsrError::PreconditionViolated(format!("edges at host vertex {v} are monochromatic")))?;
    let witness = asp_from(t).ok_or_else(|| ZsrError::PreconditionViolated("no ASP from the root".into()))?;

    let tree = &t.tree;
    let r = t.root;
    let (z, x, y) = (witness.z, witness.x, witness.y);
    let rx = {
        let mut a = x;
        while t.parent(a) != Some(r) {
            a = t.parent(a).expect("x lies below the root");
        }
        a
    };
    let side: Vec<usize> = t.subtree(rx);
    let s = side.len();
    let rest: Vec<usize> = (0..n).filter(|u| !side.contains(u)).collect();

    // fill the side hosts: required ones first, then the smallest others
    let side_hosts = |required: &[usize]| -> Vec<usize> {
        let mut h = required.to_vec();
        h.extend(others.iter().copied().filter(|u| !required.contains(u)).take(s - required.len()));
        h
    };
    // assign `verts` to `hosts` with some vertices fixed
    let assign = |map: &mut Vec<usize>, verts: &[usize], hosts: &[usize], fixed: &[(usize, usize)]| {
        for &(a, h) in fixed {
            map[a] = h;
        }
        let mut free = hosts.iter().copied().filter(|h| !fixed.iter().any(|f| f.1 == *h));
        for &a in verts {
            if !fixed.iter().any(|f| f.0 == a) {
                map[a] = free.next().expect("enough hosts");
            }
        }
    };
    let finish_rest = |map: &mut Vec<usize>, used: &[usize]| {
        let hosts: Vec<usize> = std::iter::once(v)
            .chain(others.iter().copied().filter(|u| !used.contains(u)))
            .collect();
        let verts: Vec<usize> = std::iter::once(r).chain(rest.iter().copied().filter(|&a| a != r)).collect();
        for (a, h) in verts.into_iter().zip(hosts) {
            map[a] = h;
        }
    };
    let with_sigma = |map: &[usize]| -> Vec<usize> {
        let sub = t.subtree(x);
        let mut m2 = map.to_vec();
        for &a in &sub {
            m2[a] = map[witness.sigma[a]];
        }
        m2
    };

    let mut constructed: Option<(Vec<usize>, Vec<usize>, DistinctWeightCase)> = None;
    if s >= 2 {
        let mut map = vec![usize::MAX; n];
        if z == r {
            let hosts = side_hosts(&[v1, v2]);
            assign(&mut map, &side, &hosts, &[(x, v1), (y, v2)]);
            finish_rest(&mut map, &hosts);
            let second = with_sigma(&map);
            constructed = Some((map, second, DistinctWeightCase::WitnessAtRoot));
        } else {
            let base = c.get(v1, v2);
            let mixed = others.iter().enumerate().find_map(|(i, &a)| {
                others[i + 1..].iter().find_map(|&b| {
                    let req: Vec<usize> = {
                        let mut q = vec![v1, v2];
                        for e in [a, b] {
                            if !q.contains(&e) {
                                q.push(e);
                            }
                        }
                        q
                    };
                    (c.get(a, b) != base && req.len() <= s).then_some(req)
                })
            });
            match mixed {
                None => {
                    let hosts = side_hosts(&[v1, v2]);
                    let mut second = vec![usize::MAX; n];
                    assign(&mut map, &side, &hosts, &[(rx, v1)]);
                    assign(&mut second, &side, &hosts, &[(rx, v2)]);
                    finish_rest(&mut map, &hosts);
                    finish_rest(&mut second, &hosts);
                    constructed = Some((map, second, DistinctWeightCase::MonochromaticSide));
                }
                Some(req) => {
                    let hosts = side_hosts(&req);
                    let two_coloured = hosts.iter().find_map(|&u| {
                        let u1 = *hosts.iter().find(|&&w| w != u)?;
                        let u2 = *hosts.iter().find(|&&w| w != u && c.get(u, w) != c.get(u, u1))?;
                        Some((u, u1, u2))
                    });
                    if let Some((u, u1, u2)) = two_coloured {
                        assign(&mut map, &side, &hosts, &[(z, u), (x, u1), (y, u2)]);
                        finish_rest(&mut map, &hosts);
                        let second = with_sigma(&map);
                        constructed = Some((map, second, DistinctWeightCase::MixedSide));
                    }
                }
            }
        }
    }
    if let Some((m1, m2, case)) = constructed {
        let e1 = Embedding::from_map(c, tree, m1);
        let e2 = Embedding::from_map(c, tree, m2);
        if e1.weight != e2.weight && e1.map[r] == v && e2.map[r] == v && e1.is_valid(c, tree) && e2.is_valid(c, tree) {
            return Ok(DistinctWeightPair {
                first: e1,
                second: e2,
                case,
                witness,
            });
        }
    }
    let plan = ZeroSumPlan::new(tree, c.k(), Some(r));
    let matrix = c.matrix();
    let all = full_mask(n);
    let (m1, w1) = plan
        .search(&matrix, n, all, Some(v), ((1u16 << c.k()) - 1) as u8)
        .ok_or_else(|| ZsrError::PreconditionViolated("no pinned embedding".into()))?;
    let (m2, w2) = plan
        .search(&matrix, n, all, Some(v), ((1u16 << c.k()) - 1) as u8 & !(1 << w1))
        .ok_or_else(|| ZsrError::PreconditionViolated("all pinned embeddings have equal weight".into()))?;
    Ok(DistinctWeightPair {
        first: Embedding { map: m1, weight: w1 },
        second: Embedding { map: m2, weight: w2 },
        case: DistinctWeightCase::Search,
        witness,
    })
}
