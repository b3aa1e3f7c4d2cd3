//! Canonical labelling and automorphism orbits.
//!
//! General graphs and edge-coloured complete graphs go through an
//! individualisation-refinement search over a symmetric value matrix. Forests
//! use rooted tree codes (AHU), which stay exact and fast regardless of how
//! large the automorphism group is.

use crate::error::{Result, ZsrError};
use crate::graph::{bits, Graph};

/// Symmetric `n x n` matrix of small values (`< 8`); the diagonal is ignored.
#[derive(Clone, Debug)]
pub struct ValueMatrix {
    n: usize,
    vals: Vec<u8>,
}

impl ValueMatrix {
    pub fn new(n: usize) -> Self {
        ValueMatrix {
            n,
            vals: vec![0; n * n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut m = ValueMatrix::new(g.n());
        for (u, v) in g.edges() {
            m.set(u, v, 1);
        }
        m
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, x: u8) {
        debug_assert!(x < 8);
        self.vals[u * self.n + v] = x;
        self.vals[v * self.n + u] = x;
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.vals[u * self.n + v]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Outcome of a canonical-labelling search.
#[derive(Clone, Debug)]
pub struct Canonical {
    /// `labeling[i]` is the vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Upper triangle (row-major) of the matrix read in canonical order.
    pub certificate: Vec<u8>,
    /// Automorphisms discovered during the search; they generate the
    /// automorphism group of the (initially coloured) matrix.
    pub generators: Vec<Vec<usize>>,
}

impl Canonical {
    /// `perm[v]` = canonical position of vertex `v`.
    pub fn relabeling(&self) -> Vec<usize> {
        invert(&self.labeling)
    }

    pub fn orbits(&self, n: usize) -> Vec<Vec<usize>> {
        orbits_from_generators(n, &self.generators)
    }
}

pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

pub fn orbits_from_generators(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for g in gens {
        for (v, &w) in g.iter().enumerate() {
            let (a, b) = (find(&mut uf, v), find(&mut uf, w));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut uf, v);
        if index[r] == usize::MAX {
            index[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[index[r]].push(v);
    }
    classes
}

/// Closes a set of generators into the full permutation group (small groups only).
pub fn group_closure(n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for g in gens {
            let next: Vec<usize> = cur.iter().map(|&x| g[x]).collect();
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

fn refine(m: &ValueMatrix, cells: &mut Vec<Vec<usize>>) {
    let mut s = 0;
    while s < cells.len() {
        let splitter = cells[s].clone();
        let mut split_any = false;
        let mut i = 0;
        while i < cells.len() {
            if cells[i].len() == 1 {
                i += 1;
                continue;
            }
            let mut keyed: Vec<(u64, usize)> = cells[i]
                .iter()
                .map(|&v| {
                    let key = splitter
                        .iter()
                        .filter(|&&w| w != v)
                        .map(|&w| 1u64 << (8 * m.get(v, w) as u64))
                        .sum();
                    (key, v)
                })
                .collect();
            if keyed.iter().all(|&(k, _)| k == keyed[0].0) {
                i += 1;
                continue;
            }
            keyed.sort_unstable();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            let mut last = None;
            for (k, v) in keyed {
                if last != Some(k) {
                    groups.push(Vec::new());
                    last = Some(k);
                }
                groups.last_mut().unwrap().push(v);
            }
            let added = groups.len() - 1;
            cells.splice(i..=i, groups);
            i += added + 1;
            split_any = true;
        }
        // A split may refine cells that earlier splitters already processed.
        s = if split_any { 0 } else { s + 1 };
    }
}

struct Search<'a> {
    m: &'a ValueMatrix,
    first: Option<(Vec<usize>, Vec<u8>, Vec<usize>)>,
    best: Option<(Vec<usize>, Vec<u8>)>,
    gens: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, lab: &[usize]) -> Vec<u8> {
        let n = lab.len();
        let mut c = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                c.push(self.m.get(lab[i], lab[j]));
            }
        }
        c
    }

    fn automorphism(lab: &[usize], target: &[usize]) -> Vec<usize> {
        let mut g = vec![0; lab.len()];
        for (i, &v) in lab.iter().enumerate() {
            g[v] = target[i];
        }
        g
    }

    /// Returns `Some(level)` when the caller should unwind to the node at
    /// depth `level` of the search tree.
    fn run(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.m, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cert = self.certificate(&lab);
            let Some((first_lab, first_cert, first_prefix)) = &self.first else {
                self.first = Some((lab.clone(), cert.clone(), prefix.clone()));
                self.best = Some((lab, cert));
                return None;
            };
            if &cert == first_cert {
                let g = Self::automorphism(&lab, first_lab);
                let common = prefix.iter().zip(first_prefix).take_while(|(a, b)| a == b).count();
                if g.iter().enumerate().any(|(i, &x)| i != x) {
                    self.gens.push(g);
                }
                return Some(common);
            }
            let (best_lab, best_cert) = self.best.as_ref().unwrap();
            match cert.cmp(best_cert) {
                std::cmp::Ordering::Equal => {
                    let g = Self::automorphism(&lab, best_lab);
                    if g.iter().enumerate().any(|(i, &x)| i != x) {
                        self.gens.push(g);
                    }
                }
                std::cmp::Ordering::Less => self.best = Some((lab, cert)),
                std::cmp::Ordering::Greater => {}
            }
            return None;
        };
        let depth = prefix.len();
        let mut children = cells[target].clone();
        children.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &children {
            if !explored.is_empty() {
                let fixing: Vec<Vec<usize>> = self
                    .gens
                    .iter()
                    .filter(|g| prefix.iter().all(|&p| g[p] == p))
                    .cloned()
                    .collect();
                if !fixing.is_empty() {
                    let orbits = orbits_from_generators(self.m.n, &fixing);
                    let orbit = orbits.iter().find(|o| o.contains(&v)).unwrap();
                    if explored.iter().any(|u| orbit.contains(u)) {
                        continue;
                    }
                }
            }
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&w| w != v).collect();
            next.splice(target..=target, [vec![v], rest]);
            prefix.push(v);
            let jump = self.run(next, prefix);
            prefix.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical labelling of a value matrix whose vertices start in the given
/// ordered partition (cells must cover `0..n` exactly once).
pub fn canonical_matrix(m: &ValueMatrix, initial: Vec<Vec<usize>>) -> Canonical {
    let n = m.n();
    if n == 0 {
        return Canonical {
            labeling: vec![],
            certificate: vec![],
            generators: vec![],
        };
    }
    let mut s = Search {
        m,
        first: None,
        best: None,
        gens: Vec::new(),
    };
    s.run(initial, &mut Vec::new());
    let (labeling, certificate) = s.best.unwrap();
    Canonical {
        labeling,
        certificate,
        generators: s.gens,
    }
}

pub fn canonical_matrix_plain(m: &ValueMatrix) -> Canonical {
    canonical_matrix(m, vec![(0..m.n()).collect()])
}

// ---------------------------------------------------------------------------
// Forests via rooted codes.

pub(crate) fn rooted_code(g: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut codes: Vec<String> = bits(g.neighbours(v))
        .filter(|&w| Some(w) != parent)
        .map(|w| rooted_code(g, w, Some(v)))
        .collect();
    codes.sort_unstable();
    let mut s = String::with_capacity(2 + codes.iter().map(String::len).sum::<usize>());
    s.push('(');
    for c in codes {
        s.push_str(&c);
    }
    s.push(')');
    s
}

fn centres(g: &Graph, comp: &[usize]) -> Vec<usize> {
    let ecc: Vec<usize> = comp
        .iter()
        .map(|&v| g.bfs_distances(v).iter().filter_map(|d| *d).max().unwrap_or(0))
        .collect();
    let best = *ecc.iter().min().unwrap();
    comp.iter()
        .zip(&ecc)
        .filter(|(_, &e)| e == best)
        .map(|(&v, _)| v)
        .collect()
}

fn component_root_and_code(g: &Graph, comp: &[usize]) -> (usize, String) {
    centres(g, comp)
        .into_iter()
        .map(|c| (c, rooted_code(g, c, None)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap()
}

fn preorder(g: &Graph, v: usize, parent: Option<usize>, out: &mut Vec<usize>) {
    out.push(v);
    let mut kids: Vec<(String, usize)> = bits(g.neighbours(v))
        .filter(|&w| Some(w) != parent)
        .map(|w| (rooted_code(g, w, Some(v)), w))
        .collect();
    kids.sort();
    for (_, w) in kids {
        preorder(g, w, Some(v), out);
    }
}

/// Canonical labelling of a forest: components ordered by code, vertices in
/// preorder from the (code-minimal) centre with children ordered by code.
pub fn forest_labeling(g: &Graph) -> Vec<usize> {
    debug_assert!(g.is_forest());
    let mut comps: Vec<(String, usize)> = g
        .components()
        .iter()
        .map(|c| {
            let (r, code) = component_root_and_code(g, c);
            (code, r)
        })
        .collect();
    comps.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let mut lab = Vec::with_capacity(g.n());
    for (_, r) in comps {
        preorder(g, r, None, &mut lab);
    }
    lab
}

/// Rooted code of each vertex's component with that vertex as root; two
/// vertices of a forest share an orbit exactly when these codes agree.
pub fn forest_vertex_codes(g: &Graph) -> Vec<String> {
    (0..g.n()).map(|v| rooted_code(g, v, None)).collect()
}

fn rooted_iso(g: &Graph, a: usize, pa: Option<usize>, b: usize, pb: Option<usize>, map: &mut [usize]) {
    map[a] = b;
    let kids = |v: usize, p: Option<usize>| {
        let mut k: Vec<(String, usize)> = bits(g.neighbours(v))
            .filter(|&w| Some(w) != p)
            .map(|w| (rooted_code(g, w, Some(v)), w))
            .collect();
        k.sort();
        k
    };
    let (ka, kb) = (kids(a, pa), kids(b, pb));
    debug_assert_eq!(ka.len(), kb.len());
    for ((ca, x), (cb, y)) in ka.into_iter().zip(kb) {
        debug_assert_eq!(ca, cb);
        rooted_iso(g, x, Some(a), y, Some(b), map);
    }
}

/// Automorphism of a forest sending `u` to `v`, if one exists.
pub fn forest_witness(g: &Graph, u: usize, v: usize) -> Option<Vec<usize>> {
    if rooted_code(g, u, None) != rooted_code(g, v, None) {
        return None;
    }
    let mut map: Vec<usize> = (0..g.n()).collect();
    let comps = g.components();
    let cu = comps.iter().find(|c| c.contains(&u)).unwrap();
    let same = cu.contains(&v);
    rooted_iso(g, u, None, v, None, &mut map);
    if !same {
        let mut back: Vec<usize> = (0..g.n()).collect();
        rooted_iso(g, v, None, u, None, &mut back);
        let cv = comps.iter().find(|c| c.contains(&v)).unwrap();
        for &w in cv {
            map[w] = back[w];
        }
    }
    Some(map)
}

// ---------------------------------------------------------------------------
// Graph-level API.

/// Canonical certificate plus the relabelling that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// graph6 bytes of the canonically relabelled graph.
    pub certificate: Vec<u8>,
    /// `relabeling[v]` = canonical label of vertex `v`.
    pub relabeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.certificate).expect("graph6 is ASCII")
    }

    pub fn graph(&self) -> Graph {
        Graph::from_graph6(self.as_str()).expect("certificate is valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let labeling = if g.is_forest() {
        forest_labeling(g)
    } else {
        canonical_matrix_plain(&ValueMatrix::from_graph(g)).labeling
    };
    let relabeling = invert(&labeling);
    let certificate = g.permuted(&relabeling).to_graph6().into_bytes();
    CanonicalForm {
        certificate,
        relabeling,
    }
}

pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_form(g).relabeling)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && canonical_form(g).certificate == canonical_form(h).certificate
}

/// Largest non-forest graph whose orbits are computed exactly.
pub const MAX_GENERAL_ORBIT_VERTICES: usize = 16;

/// Partition of the vertices into automorphism orbits.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub classes: Vec<Vec<usize>>,
    graph: Graph,
}

impl OrbitPartition {
    pub fn class_of(&self, v: usize) -> &[usize] {
        self.classes.iter().find(|c| c.contains(&v)).unwrap()
    }

    pub fn same_orbit(&self, u: usize, v: usize) -> bool {
        self.class_of(u).contains(&v)
    }

    /// An automorphism mapping `u` to `v`, materialised on demand.
    pub fn witness(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if !self.same_orbit(u, v) {
            return None;
        }
        let g = &self.graph;
        if g.is_forest() {
            return forest_witness(g, u, v);
        }
        let m = ValueMatrix::from_graph(g);
        let split = |x: usize| vec![vec![x], (0..g.n()).filter(|&w| w != x).collect()];
        let cu = canonical_matrix(&m, split(u));
        let cv = canonical_matrix(&m, split(v));
        if cu.certificate != cv.certificate {
            return None;
        }
        let mut sigma = vec![0; g.n()];
        for (i, &a) in cu.labeling.iter().enumerate() {
            sigma[a] = cv.labeling[i];
        }
        Some(sigma)
    }
}

pub fn automorphism_orbits(g: &Graph) -> Result<OrbitPartition> {
    let classes = if g.is_forest() {
        let codes = forest_vertex_codes(g);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..g.n() {
            match classes.iter_mut().find(|c| codes[c[0]] == codes[v]) {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
    } else if g.n() <= MAX_GENERAL_ORBIT_VERTICES {
        canonical_matrix_plain(&ValueMatrix::from_graph(g)).orbits(g.n())
    } else {
        return Err(ZsrError::SizeUnsupported(format!(
            "orbits of a non-forest on {} vertices (limit {MAX_GENERAL_ORBIT_VERTICES})",
            g.n()
        )));
    };
    Ok(OrbitPartition { classes, graph: *g })
}

pub fn is_automorphism(g: &Graph, sigma: &[usize]) -> bool {
    let mut seen = 0u64;
    for &s in sigma {
        if s >= g.n() || seen >> s & 1 == 1 {
            return false;
        }
        seen |= 1 << s;
    }
    g.edges().iter().all(|&(u, v)| g.has_edge(sigma[u], sigma[v]))
}
