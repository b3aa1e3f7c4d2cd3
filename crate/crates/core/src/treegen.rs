//! Exhaustive generators: free trees, forests with an edge-count residue, and
//! hosts of minimum degree `n - 2`.

use crate::canon::canonical_graph;
use crate::error::{Result, ZsrError};
use crate::graph::Graph;

pub const MAX_TREE_VERTICES: usize = 16;
pub const MAX_FOREST_VERTICES: usize = 12;

/// Iterator over the free trees on `n` vertices, one per isomorphism class,
/// each in canonical labelling. The order is deterministic.
///
/// Internally walks canonical level sequences (root at level 0) in the
/// order of the constant-amortised-time free tree algorithm of Wright,
/// Richmond, Odlyzko and McKay.
pub struct TreeStream {
    n: usize,
    layout: Option<Vec<usize>>,
    small: Option<std::vec::IntoIter<Graph>>,
}

pub fn gen_trees(n: usize) -> Result<TreeStream> {
    if n == 0 || n > MAX_TREE_VERTICES {
        return Err(ZsrError::SizeUnsupported(format!(
            "tree generation for n={n} (supported 1..={MAX_TREE_VERTICES})"
        )));
    }
    if n <= 2 {
        return Ok(TreeStream {
            n,
            layout: None,
            small: Some(vec![canonical_graph(&Graph::path(n))].into_iter()),
        });
    }
    let mut layout: Vec<usize> = (0..=n / 2).collect();
    layout.extend(1..n.div_ceil(2));
    Ok(TreeStream {
        n,
        layout: Some(layout),
        small: None,
    })
}

impl TreeStream {
    pub fn n(&self) -> usize {
        self.n
    }
}

impl Iterator for TreeStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if let Some(small) = &mut self.small {
            return small.next();
        }
        let layout = self.layout.take()?;
        let valid = next_tree(layout)?;
        let g = layout_to_graph(&valid);
        self.layout = next_rooted_tree(&valid, None);
        Some(canonical_graph(&g))
    }
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a level sequence into the first subtree of the root (levels
/// shifted down by one) and the rest.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut one_found = false;
    let mut m = layout.len();
    for (i, &l) in layout.iter().enumerate() {
        if l == 1 {
            if one_found {
                m = i;
                break;
            }
            one_found = true;
        }
    }
    let left: Vec<usize> = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Advances `candidate` to the next level sequence that is the canonical
/// rooting (at a centre) of a free tree.
fn next_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        let left_height = left.iter().copied().max().unwrap_or(0);
        let rest_height = rest.iter().copied().max().unwrap_or(0);
        let mut valid = rest_height >= left_height;
        if valid && rest_height == left_height {
            if left.len() > rest.len() || (left.len() == rest.len() && left > rest) {
                valid = false;
            }
        }
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&next);
            let h = new_left.iter().copied().max().unwrap_or(0);
            let len = next.len();
            for (i, lvl) in (1..=h + 1).enumerate() {
                next[len - (h + 1) + i] = lvl;
            }
        }
        candidate = next;
    }
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let mut g = Graph::empty(layout.len());
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&j) = stack.last() {
            g.add_edge(i, j);
        }
        stack.push(i);
    }
    g
}

/// All free trees on `n` vertices, collected.
pub fn trees(n: usize) -> Result<Vec<Graph>> {
    Ok(gen_trees(n)?.collect())
}

/// Every forest on exactly `n` vertices (isolated vertices allowed) whose
/// edge count is `residue` mod 3, one per isomorphism class, canonical
/// labelling, deterministic order.
///
/// Forests are multisets of trees; each is assembled from a partition of `n`
/// into component sizes and a non-increasing choice of tree index per part.
pub fn gen_forests(n: usize, residue: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 || n > MAX_FOREST_VERTICES {
        return Err(ZsrError::SizeUnsupported(format!(
            "forest generation for n={n} (supported 1..={MAX_FOREST_VERTICES})"
        )));
    }
    let by_size: Vec<Vec<Graph>> = (0..=n)
        .map(|s| if s == 0 { Vec::new() } else { trees(s).unwrap() })
        .collect();
    let mut out = Vec::new();
    // Components as (size, tree index), emitted in non-increasing order.
    let mut parts: Vec<(usize, usize)> = Vec::new();
    fn rec(
        remaining: usize,
        bound: (usize, usize),
        by_size: &[Vec<Graph>],
        parts: &mut Vec<(usize, usize)>,
        residue: usize,
        out: &mut Vec<Graph>,
    ) {
        if remaining == 0 {
            let edges: usize = parts.iter().map(|&(s, _)| s - 1).sum();
            if edges % 3 == residue % 3 {
                let mut g = Graph::empty(0);
                for &(s, i) in parts.iter() {
                    g = g.disjoint_union(&by_size[s][i]);
                }
                out.push(canonical_graph(&g));
            }
            return;
        }
        for s in (1..=remaining.min(bound.0)).rev() {
            let top = if s == bound.0 { bound.1 } else { by_size[s].len() - 1 };
            for i in (0..=top).rev() {
                parts.push((s, i));
                rec(remaining - s, (s, i), by_size, parts, residue, out);
                parts.pop();
            }
        }
    }
    rec(n, (n, by_size[n].len() - 1), &by_size, &mut parts, residue, &mut out);
    Ok(out.into_iter())
}

/// Graphs on `n` vertices with minimum degree at least `n - 2`: complements of
/// matchings with `0..=n/2` edges.
pub fn gen_min_degree_hosts(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if !(4..=12).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!(
            "min-degree hosts for n={n} (supported 4..=12)"
        )));
    }
    Ok((0..=n / 2).map(move |m| {
        let matching: Vec<(usize, usize)> = (0..m).map(|i| (2 * i, 2 * i + 1)).collect();
        canonical_graph(&Graph::from_edges(n, &matching).complement())
    }))
}

/// Every graph on `n` vertices up to isomorphism, canonical labelling,
/// sorted by graph6. Brute force over labelled graphs.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ALL_GRAPHS_VERTICES {
        return Err(ZsrError::SizeUnsupported(format!(
            "graph generation for n={n} (supported 0..={MAX_ALL_GRAPHS_VERTICES})"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = canonical_graph(&Graph::from_edges(n, &edges));
        seen.entry(g.to_graph6()).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

const MAX_ALL_GRAPHS_VERTICES: usize = 6;
