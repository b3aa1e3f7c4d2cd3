//! `Z_k` edge-colourings of complete graphs.
//!
//! Isomorphism of colourings is vertex relabelling only: colour values are
//! never permuted, since permuting residues changes embedding weights.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_matrix_plain, group_closure, Canonical, ValueMatrix};
use crate::error::{Result, ZsrError};
use crate::graph::Graph;

/// Colouring of `K_n`; `colours` holds the upper triangle in row-major order
/// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct EdgeColouring {
    n: usize,
    k: u8,
    colours: Vec<u8>,
}

#[inline]
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl EdgeColouring {
    pub fn constant(n: usize, k: u8, colour: u8) -> Self {
        assert!(colour < k);
        EdgeColouring {
            n,
            k,
            colours: vec![colour; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn from_triangle(n: usize, k: u8, colours: Vec<u8>) -> Result<Self> {
        if !(2..=3).contains(&k) {
            return Err(ZsrError::PreconditionViolated(format!("modulus {k} not in {{2,3}}")));
        }
        if colours.len() != n * n.saturating_sub(1) / 2 {
            return Err(ZsrError::Parse(format!(
                "{} colours given, K_{n} has {} edges",
                colours.len(),
                n * n.saturating_sub(1) / 2
            )));
        }
        if let Some(c) = colours.iter().find(|&&c| c >= k) {
            return Err(ZsrError::Parse(format!("colour {c} out of range for Z_{k}")));
        }
        Ok(EdgeColouring { n, k, colours })
    }

    pub fn random<R: Rng>(n: usize, k: u8, rng: &mut R) -> Self {
        let colours = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(0..k)).collect();
        EdgeColouring { n, k, colours }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn triangle(&self) -> &[u8] {
        &self.colours
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.colours[edge_index(self.n, u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, c: u8) {
        assert!(c < self.k && u != v);
        let i = edge_index(self.n, u, v);
        self.colours[i] = c;
    }

    /// Full `n x n` lookup table (diagonal 0).
    pub fn matrix(&self) -> Vec<u8> {
        let n = self.n;
        let mut m = vec![0u8; n * n];
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                m[u * n + v] = self.colours[i];
                m[v * n + u] = self.colours[i];
                i += 1;
            }
        }
        m
    }

    /// Colour counts at `v`, indexed by colour.
    pub fn colour_counts(&self, v: usize) -> [usize; 3] {
        let mut c = [0; 3];
        for u in (0..self.n).filter(|&u| u != v) {
            c[self.get(u, v) as usize] += 1;
        }
        c
    }

    /// Relabelling where old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.set(perm[u], perm[v], self.get(u, v));
            }
        }
        out
    }

    /// Colouring induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut colours = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                colours.push(self.get(vertices[i], vertices[j]));
            }
        }
        EdgeColouring { n: m, k: self.k, colours }
    }

    /// Spanning subgraph of the edges with colour `c`.
    pub fn colour_class(&self, c: u8) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.get(u, v) == c {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn value_matrix(&self) -> ValueMatrix {
        let mut m = ValueMatrix::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                m.set(u, v, self.get(u, v));
            }
        }
        m
    }

    pub fn canonical(&self) -> Canonical {
        canonical_matrix_plain(&self.value_matrix())
    }

    /// Canonically relabelled copy.
    pub fn canonical_form(&self) -> EdgeColouring {
        let c = self.canonical();
        EdgeColouring {
            n: self.n,
            k: self.k,
            colours: c.certificate,
        }
    }

    pub fn is_isomorphic(&self, other: &EdgeColouring) -> bool {
        self.n == other.n && self.k == other.k && self.canonical().certificate == other.canonical().certificate
    }

    /// Every vertex has at least `n - 2` incident edges of a single colour.
    pub fn is_restrictive(&self) -> bool {
        (0..self.n).all(|v| self.colour_counts(v).iter().any(|&c| c + 2 >= self.n))
    }
}

impl fmt::Display for EdgeColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ", self.n, self.k)?;
        for &c in &self.colours {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for EdgeColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColouring({self})")
    }
}

impl FromStr for EdgeColouring {
    type Err = ZsrError;

    /// Parses `"n k digits"`; an empty digit string is allowed for `n <= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| ZsrError::Parse("missing n".into()))?
            .parse()
            .map_err(|e| ZsrError::Parse(format!("bad n: {e}")))?;
        let k: u8 = parts
            .next()
            .ok_or_else(|| ZsrError::Parse("missing k".into()))?
            .parse()
            .map_err(|e| ZsrError::Parse(format!("bad k: {e}")))?;
        let digits = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(ZsrError::Parse("trailing tokens after colour digits".into()));
        }
        if n > 32 {
            return Err(ZsrError::SizeUnsupported(format!("K_{n}")));
        }
        let colours = digits
            .bytes()
            .map(|b| match b {
                b'0'..=b'9' => Ok(b - b'0'),
                _ => Err(ZsrError::Parse(format!("bad colour digit {:?}", b as char))),
            })
            .collect::<Result<Vec<u8>>>()?;
        EdgeColouring::from_triangle(n, k, colours)
    }
}

impl From<EdgeColouring> for String {
    fn from(c: EdgeColouring) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for EdgeColouring {
    type Error = ZsrError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

// ---------------------------------------------------------------------------
// Lower-bound constructions.

/// Edges at vertex 0 coloured 1, all others 0.
pub fn construct_one_vertex_lb(n: usize, k: u8) -> Result<EdgeColouring> {
    if n < 2 {
        return Err(ZsrError::PreconditionViolated("one-vertex construction needs n >= 2".into()));
    }
    let mut c = EdgeColouring::constant(n, k, 0);
    for v in 1..n {
        c.set(0, v, 1);
    }
    Ok(c)
}

/// Edges meeting vertex 0 or vertex 1 coloured 1, all others 0.
pub fn construct_two_vertex_lb(n: usize, k: u8) -> Result<EdgeColouring> {
    if n < 3 {
        return Err(ZsrError::PreconditionViolated("two-vertex construction needs n >= 3".into()));
    }
    let mut c = construct_one_vertex_lb(n, k)?;
    for v in 2..n {
        c.set(1, v, 1);
    }
    Ok(c)
}

/// Base colour `base` with a matching `(0,1), (2,3), ...` recoloured by
/// `matching_colours`.
pub fn matching_colouring(n: usize, k: u8, base: u8, matching_colours: &[u8]) -> EdgeColouring {
    assert!(2 * matching_colours.len() <= n);
    let mut c = EdgeColouring::constant(n, k, base);
    for (i, &col) in matching_colours.iter().enumerate() {
        c.set(2 * i, 2 * i + 1, col);
    }
    c
}

/// Clique on `1..n` in colour `base`; vertex 0 joined to `2..n` in colour
/// `spoke` and to vertex 1 in colour `odd`.
pub fn special_vertex_colouring(n: usize, k: u8, base: u8, spoke: u8, odd: u8) -> EdgeColouring {
    let mut c = EdgeColouring::constant(n, k, base);
    for v in 2..n {
        c.set(0, v, spoke);
    }
    c.set(0, 1, odd);
    c
}

// ---------------------------------------------------------------------------
// Restrictive colourings.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResidueClass {
    /// Bad edges removed: connected, monochromatic, minimum degree >= n - 2.
    MonoMinDegree,
    /// Bad edges removed: an isolated vertex plus a monochromatic `K_{n-1}`.
    K1PlusClique { isolated: usize },
    NotRestrictive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictiveAnalysis {
    pub restrictive: bool,
    /// The uniquely coloured edge owned by each vertex, if any.
    pub bad_edge_at: Vec<Option<(usize, usize)>>,
    /// Union of all owned bad edges, sorted, as `(u, v)` with `u < v`.
    pub bad_edges: Vec<(usize, usize)>,
    pub residue_class: ResidueClass,
    pub base_colour: Option<u8>,
}

pub fn analyze_restrictive(c: &EdgeColouring) -> Result<RestrictiveAnalysis> {
    let n = c.n();
    if n < 4 {
        return Err(ZsrError::PreconditionViolated(format!("restrictive analysis needs n >= 4, got {n}")));
    }
    let mut majority = Vec::with_capacity(n);
    for v in 0..n {
        let counts = c.colour_counts(v);
        match (0..c.k()).find(|&col| counts[col as usize] + 2 >= n) {
            Some(col) => majority.push(col),
            None => {
                return Ok(RestrictiveAnalysis {
                    restrictive: false,
                    bad_edge_at: vec![None; n],
                    bad_edges: vec![],
                    residue_class: ResidueClass::NotRestrictive,
                    base_colour: None,
                })
            }
        }
    }
    let mut bad_edge_at = vec![None; n];
    let mut bad: HashSet<(usize, usize)> = HashSet::new();
    for v in 0..n {
        for u in (0..n).filter(|&u| u != v) {
            if c.get(u, v) != majority[v] {
                let e = (u.min(v), u.max(v));
                debug_assert!(bad_edge_at[v].is_none());
                bad_edge_at[v] = Some(e);
                bad.insert(e);
            }
        }
    }
    let mut bad_edges: Vec<(usize, usize)> = bad.into_iter().collect();
    bad_edges.sort_unstable();

    let mut remainder = Graph::complete(n);
    for &(u, v) in &bad_edges {
        remainder.remove_edge(u, v);
    }
    let remaining_colours: HashSet<u8> = remainder.edges().iter().map(|&(u, v)| c.get(u, v)).collect();
    if remaining_colours.len() != 1 {
        return Err(ZsrError::ClassificationFailure(format!(
            "{c}: remainder after deleting bad edges {bad_edges:?} uses colours {remaining_colours:?}"
        )));
    }
    let base = *remaining_colours.iter().next().unwrap();
    let residue_class = if remainder.is_connected() && remainder.min_degree() + 2 >= n {
        ResidueClass::MonoMinDegree
    } else if let Some(x) = (0..n).find(|&x| remainder.degree(x) == 0) {
        let rest: Vec<usize> = (0..n).filter(|&v| v != x).collect();
        if remainder.induced(&rest).is_complete() {
            ResidueClass::K1PlusClique { isolated: x }
        } else {
            return Err(ZsrError::ClassificationFailure(format!(
                "{c}: isolated vertex {x} but the rest is not a clique"
            )));
        }
    } else {
        return Err(ZsrError::ClassificationFailure(format!(
            "{c}: remainder neither connected with min degree >= n-2 nor K_1 + K_(n-1)"
        )));
    };
    Ok(RestrictiveAnalysis {
        restrictive: true,
        bad_edge_at,
        bad_edges,
        residue_class,
        base_colour: Some(base),
    })
}

/// Smallest `n` for which restrictive colourings follow the structure used by
/// [`enumerate_restrictive_colourings`]; below it the stream falls back to
/// filtering the full canonical enumeration.
pub const RESTRICTIVE_STRUCTURE_MIN_N: usize = 5;

/// All restrictive colourings of `K_n` up to relabelling, canonical form,
/// deterministic order.
///
/// Parameterised by base colour plus either a matching of recoloured edges
/// (counts per non-base colour) or a special vertex whose spokes carry one
/// colour except a single odd edge. Every candidate is checked against the
/// restrictive predicate before emission.
pub fn enumerate_restrictive_colourings(n: usize, k: u8) -> Result<Vec<EdgeColouring>> {
    if !(4..=12).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("restrictive enumeration for n={n} (4..=12)")));
    }
    if !(2..=3).contains(&k) {
        return Err(ZsrError::PreconditionViolated(format!("modulus {k} not in {{2,3}}")));
    }
    if n < RESTRICTIVE_STRUCTURE_MIN_N {
        return Ok(enumerate_colourings_canonical(n, k, f64::INFINITY)?
            .filter(|c| c.is_restrictive())
            .collect());
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |c: EdgeColouring| {
        assert!(c.is_restrictive(), "parameterised colouring {c} is not restrictive");
        let canon = c.canonical_form();
        if seen.insert(canon.colours.clone()) {
            out.push(canon);
        }
    };
    for base in 0..k {
        let others: Vec<u8> = (0..k).filter(|&x| x != base).collect();
        for total in 0..=n / 2 {
            // counts of the (one or two) non-base colours summing to `total`
            let splits: Vec<Vec<usize>> = if others.len() == 1 {
                vec![vec![total]]
            } else {
                (0..=total).rev().map(|a| vec![a, total - a]).collect()
            };
            for split in splits {
                let cols: Vec<u8> = others
                    .iter()
                    .zip(&split)
                    .flat_map(|(&col, &cnt)| std::iter::repeat_n(col, cnt))
                    .collect();
                push(matching_colouring(n, k, base, &cols));
            }
        }
        for &spoke in &others {
            for odd in 0..k {
                push(special_vertex_colouring(n, k, base, spoke, odd));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical enumeration.

/// Estimated number of isomorphism classes, `k^(n(n-1)/2) / n!`.
pub fn estimated_class_count(n: usize, k: u8) -> f64 {
    let edges = (n * n.saturating_sub(1) / 2) as f64;
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    (k as f64).powf(edges) / fact
}

/// Default budget on estimated class counts for exhaustive enumeration.
pub const DEFAULT_CLASS_BUDGET: f64 = 5.0e6;

pub fn check_budget(n: usize, k: u8, budget: f64) -> Result<()> {
    let estimate = estimated_class_count(n, k);
    if estimate > budget {
        return Err(ZsrError::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

fn extend(parent: &EdgeColouring, ext: &[u8]) -> EdgeColouring {
    let m = parent.n;
    let n = m + 1;
    let mut colours = Vec::with_capacity(n * m / 2);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if v == m {
                colours.push(ext[u]);
            } else {
                colours.push(parent.colours[i]);
                i += 1;
            }
        }
    }
    EdgeColouring {
        n,
        k: parent.k,
        colours,
    }
}

/// Parent class with its automorphism group, ready for augmentation.
#[derive(Clone, Debug)]
pub struct ParentClass {
    pub colouring: EdgeColouring,
    automorphisms: Vec<Vec<usize>>,
}

impl ParentClass {
    pub fn new(colouring: EdgeColouring) -> Self {
        let gens = colouring.canonical().generators;
        let automorphisms = group_closure(colouring.n(), &gens);
        ParentClass {
            colouring,
            automorphisms,
        }
    }

    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len()
    }

    /// Extension vectors (colours from a new vertex to each existing vertex)
    /// that are lexicographically least in their orbit under the parent's
    /// automorphisms. Together they reach every one-vertex extension up to
    /// isomorphism.
    pub fn minimal_extensions(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        let m = self.colouring.n;
        let k = self.colouring.k;
        let total = (k as usize).pow(m as u32);
        (0..total).filter_map(move |mut code| {
            let mut ext = vec![0u8; m];
            for slot in ext.iter_mut().rev() {
                *slot = (code % k as usize) as u8;
                code /= k as usize;
            }
            let mut image = vec![0u8; m];
            for g in self.automorphisms.iter().skip(1) {
                for (i, &gi) in g.iter().enumerate() {
                    image[gi] = ext[i];
                }
                if image < ext {
                    return None;
                }
            }
            Some(ext)
        })
    }

    pub fn extend(&self, ext: &[u8]) -> EdgeColouring {
        extend(&self.colouring, ext)
    }

    /// Canonical children: one representative per isomorphism class of
    /// one-vertex extensions whose canonical deletion returns to this parent.
    pub fn canonical_children(&self) -> impl Iterator<Item = EdgeColouring> + '_ {
        self.minimal_extensions().filter_map(move |ext| self.canonical_child(&ext))
    }

    /// The canonical form of the extension by `ext`, if its canonical
    /// deletion returns to this parent.
    pub fn canonical_child(&self, ext: &[u8]) -> Option<EdgeColouring> {
        let m = self.colouring.n;
        let child = self.extend(ext);
        let canon = child.canonical();
        let last = canon.labeling[m];
        let accept = last == m || canon.orbits(m + 1).iter().any(|o| o.contains(&last) && o.contains(&m));
        accept.then(|| EdgeColouring {
            n: m + 1,
            k: child.k,
            colours: canon.certificate,
        })
    }
}

/// One canonical representative per isomorphism class of colourings of
/// `K_n`, computed level by level; fine for the sizes used as parents.
pub fn canonical_classes(n: usize, k: u8, budget: f64) -> Result<Vec<EdgeColouring>> {
    check_budget(n, k, budget)?;
    let mut level = vec![EdgeColouring::constant(1.min(n), k, 0)];
    if n == 0 {
        return Ok(vec![EdgeColouring::constant(0, k, 0)]);
    }
    for _ in 1..n {
        level = level
            .into_iter()
            .flat_map(|p| ParentClass::new(p).canonical_children().collect::<Vec<_>>())
            .collect();
    }
    Ok(level)
}

/// Stream of canonical class representatives for `K_n`. The last level is
/// generated lazily per parent class, so memory stays at the `K_{n-1}` level.
pub fn enumerate_colourings_canonical(n: usize, k: u8, budget: f64) -> Result<impl Iterator<Item = EdgeColouring>> {
    if !(2..=3).contains(&k) {
        return Err(ZsrError::PreconditionViolated(format!("modulus {k} not in {{2,3}}")));
    }
    check_budget(n, k, budget)?;
    let parents = if n <= 1 {
        Vec::new()
    } else {
        canonical_classes(n - 1, k, f64::INFINITY)?
    };
    let base: Vec<EdgeColouring> = if n <= 1 {
        vec![EdgeColouring::constant(n, k, 0)]
    } else {
        Vec::new()
    };
    Ok(base.into_iter().chain(
        parents
            .into_iter()
            .flat_map(|p| ParentClass::new(p).canonical_children().collect::<Vec<_>>()),
    ))
}

/// Number of colourings of `K_n` fixed by each permutation, summed and
/// divided by `n!` (Burnside). Independent oracle for class counts.
pub fn burnside_class_count(n: usize, k: u8) -> u128 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: u128 = 0;
    let mut count: u128 = 0;
    loop {
        // cycles of the induced action on unordered pairs
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut seen = vec![false; edges.len()];
        let mut cycles = 0u32;
        for s in 0..edges.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                let (u, v) = edges[e];
                let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
                e = edge_index(n, a, b);
            }
        }
        total += (k as u128).pow(cycles);
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total / count
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format_round_trip() {
        let c = construct_one_vertex_lb(4, 3).unwrap();
        assert_eq!(c.to_string(), "4 3 111000");
        assert_eq!("4 3 111000".parse::<EdgeColouring>().unwrap(), c);
        assert!("4 3 11100".parse::<EdgeColouring>().is_err());
        assert!("4 3 111003".parse::<EdgeColouring>().is_err());
        assert!("4 5 111000".parse::<EdgeColouring>().is_err());
        assert_eq!(construct_two_vertex_lb(4, 3).unwrap().to_string(), "4 3 111110");
    }

    #[test]
    fn edge_index_is_row_major() {
        let n = 5;
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(edge_index(n, u, v), i);
                assert_eq!(edge_index(n, v, u), i);
                i += 1;
            }
        }
    }

    #[test]
    fn monochromatic_analysis() {
        let a = analyze_restrictive(&EdgeColouring::constant(6, 3, 2)).unwrap();
        assert!(a.restrictive);
        assert!(a.bad_edges.is_empty());
        assert_eq!(a.residue_class, ResidueClass::MonoMinDegree);
        assert_eq!(a.base_colour, Some(2));
    }

    #[test]
    fn one_vertex_construction_analysis() {
        let c = construct_one_vertex_lb(7, 3).unwrap();
        let a = analyze_restrictive(&c).unwrap();
        assert!(a.restrictive);
        assert_eq!(a.residue_class, ResidueClass::K1PlusClique { isolated: 0 });
        assert_eq!(a.base_colour, Some(0));
        for v in 1..7 {
            assert_eq!(a.bad_edge_at[v], Some((0, v)));
        }
        assert_eq!(a.bad_edge_at[0], None);
    }

    #[test]
    fn special_vertex_is_k1_plus_clique() {
        let c = special_vertex_colouring(7, 3, 0, 1, 2);
        let a = analyze_restrictive(&c).unwrap();
        assert_eq!(a.residue_class, ResidueClass::K1PlusClique { isolated: 0 });
    }

    #[test]
    fn non_restrictive_detected() {
        let mut c = EdgeColouring::constant(5, 3, 0);
        c.set(0, 1, 1);
        c.set(0, 2, 2);
        let a = analyze_restrictive(&c).unwrap();
        assert!(!a.restrictive);
        assert_eq!(a.residue_class, ResidueClass::NotRestrictive);
        assert!(analyze_restrictive(&EdgeColouring::constant(3, 3, 0)).is_err());
    }

    #[test]
    fn burnside_small() {
        assert_eq!(burnside_class_count(3, 2), 4);
        assert_eq!(burnside_class_count(3, 3), 10);
        assert_eq!(burnside_class_count(4, 2), 11);
    }

    #[test]
    fn enumeration_counts_match_burnside() {
        for k in 2..=3u8 {
            for n in 1..=5 {
                let got = enumerate_colourings_canonical(n, k, f64::INFINITY).unwrap().count() as u128;
                assert_eq!(got, burnside_class_count(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_colourings_canonical(9, 3, DEFAULT_CLASS_BUDGET),
            Err(ZsrError::BudgetExceeded { .. })
        ));
    }
}
