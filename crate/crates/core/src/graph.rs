//! Small simple graphs stored as one `u32` neighbour mask per vertex.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZsrError};

/// Largest supported vertex count; one adjacency row fits in a `u32`.
pub const MAX_VERTICES: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

/// Shortest-path length, `None` meaning the vertices are disconnected.
pub type Distance = Option<usize>;

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph on {n} vertices exceeds {MAX_VERTICES}");
        Graph {
            n,
            adj: [0; MAX_VERTICES],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.adj[u] = full_mask(n) & !(1 << u);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// Double-star: adjacent centres 0 and 1 carrying `a` and `b` pendant leaves.
    pub fn double_star(a: usize, b: usize) -> Self {
        let mut edges = vec![(0, 1)];
        edges.extend((0..a).map(|i| (0, 2 + i)));
        edges.extend((0..b).map(|i| (1, 2 + a + i)));
        Graph::from_edges(a + b + 2, &edges)
    }

    /// Spider: a centre (vertex 0) with the given leg lengths.
    pub fn spider(legs: &[usize]) -> Self {
        let n = 1 + legs.iter().sum::<usize>();
        let mut g = Graph::empty(n);
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                g.add_edge(prev, next);
                prev = next;
                next += 1;
            }
        }
        g
    }

    /// Two stars `K_{1,leaves}` whose centres are the ends of a path on
    /// `path_vertices` vertices (centres included).
    pub fn joined_stars(leaves: usize, path_vertices: usize) -> Self {
        assert!(path_vertices >= 2);
        let n = 2 * leaves + path_vertices;
        let mut g = Graph::path(path_vertices);
        g.n = n;
        let right = path_vertices - 1;
        for i in 0..leaves {
            g.add_edge(0, path_vertices + i);
            g.add_edge(right, path_vertices + leaves + i);
        }
        g
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = *self;
        g.n = self.n + other.n;
        assert!(g.n <= MAX_VERTICES);
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v}) for n={}", self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] & !mask_upto(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn neighbour_list(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        for u in 0..self.n {
            g.adj[u] = !self.adj[u] & full_mask(self.n) & !(1 << u);
        }
        g
    }

    /// Relabelling where old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Removes vertex `v`, shifting higher labels down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in bits(self.adj[u]) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Distance {
        self.bfs_distances(u)[v]
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 0u32;
            let mut frontier = 1u32 << s;
            while frontier != 0 {
                comp |= frontier;
                let mut next = 0;
                for u in bits(frontier) {
                    next |= self.adj[u];
                }
                frontier = next & !comp;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_connected()
    }

    /// `K_{1,n-1}` on at least three vertices.
    pub fn is_star(&self) -> bool {
        self.n >= 3 && self.is_tree() && (0..self.n).any(|v| self.degree(v) == self.n - 1)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn diameter(&self) -> Distance {
        let mut best = 0;
        for u in 0..self.n {
            for d in self.bfs_distances(u) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Parent array of a breadth-first traversal from `root` (`None` for the
    /// root and for unreachable vertices).
    pub fn bfs_parents(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        let mut seen = 1u32 << root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in bits(self.adj[u] & !seen) {
                seen |= 1 << w;
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
        parent
    }

    pub fn to_graph6(&self) -> String {
        crate::graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        crate::graph6::decode(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Graph::from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

/// Rooted view of a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub tree: Graph,
    pub root: usize,
    parent: Vec<Option<usize>>,
}

impl RootedTree {
    pub fn new(tree: Graph, root: usize) -> Result<Self> {
        if !tree.is_tree() {
            return Err(ZsrError::PreconditionViolated("rooted tree requires a tree".into()));
        }
        if root >= tree.n() {
            return Err(ZsrError::PreconditionViolated(format!("root {root} out of range")));
        }
        let parent = tree.bfs_parents(root);
        Ok(RootedTree { tree, root, parent })
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        bits(self.tree.neighbours(v))
            .filter(|&w| self.parent[v] != Some(w))
            .collect()
    }

    /// `v` and all its descendants, `v` first then in breadth-first order.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            out.extend(self.children(u));
            i += 1;
        }
        out
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> Vec<usize> {
        self.subtree(self.root)
    }

    pub fn depth(&self, mut v: usize) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub(crate) fn mask_upto(n: usize) -> u32 {
    full_mask(n)
}

/// Iterator over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}
