//! Verification suites for the structural results. Each suite returns a
//! report; a non-empty `failures` list means the checked statement broke.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::automorphism_orbits;
use crate::colouring::{analyze_restrictive, enumerate_colourings_canonical, enumerate_restrictive_colourings, EdgeColouring};
use crate::embed::{embed_tree_min_degree, find_zero_sum_embedding, is_graph_embedding, two_distinct_weight_embeddings_traced};
use crate::error::{Result, ZsrError};
use crate::graph::{Graph, RootedTree};
use crate::ramsey::{compute_ramsey_exact, z2_formula, DecisionConfig};
use crate::structure::{asp_from, degree_class, find_removable_leaf_pair_traced, DegreeClass};
use crate::treegen::{all_graphs, gen_min_degree_hosts, trees};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "lemma5")]
    Lemma5,
    #[serde(rename = "lemma6")]
    Lemma6,
    #[serde(rename = "lemma7")]
    Lemma7,
    #[serde(rename = "prop9")]
    Prop9,
    #[serde(rename = "lemma12")]
    Lemma12,
    #[serde(rename = "theorem2-z2")]
    Theorem2Z2,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma5,
        Suite::Lemma6,
        Suite::Lemma7,
        Suite::Prop9,
        Suite::Lemma12,
        Suite::Theorem2Z2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lemma5 => "lemma5",
            Suite::Lemma6 => "lemma6",
            Suite::Lemma7 => "lemma7",
            Suite::Prop9 => "prop9",
            Suite::Lemma12 => "lemma12",
            Suite::Theorem2Z2 => "theorem2-z2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ZsrError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ZsrError::Parse(format!("unknown suite {s:?}")))
    }
}

/// One checked object and what happened to it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuiteItem {
    pub subject: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checked: u64,
    pub items: Vec<SuiteItem>,
    pub failures: Vec<SuiteItem>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize) -> Self {
        SuiteReport {
            suite,
            n,
            checked: 0,
            items: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, subject: impl Into<String>, outcome: impl Into<String>) {
        self.failures.push(SuiteItem {
            subject: subject.into(),
            outcome: outcome.into(),
        });
    }

    fn item(&mut self, subject: impl Into<String>, outcome: impl Into<String>) {
        self.items.push(SuiteItem {
            subject: subject.into(),
            outcome: outcome.into(),
        });
    }

    fn finish(mut self) -> Self {
        self.items.sort();
        self.failures.sort();
        self
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Random colourings per host size (lemma12).
    pub samples: u64,
    pub seed: u64,
    pub decision: DecisionConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 1000,
            seed: 0,
            decision: DecisionConfig::default(),
        }
    }
}

pub fn run_suite(suite: Suite, n: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma5 => verify_bad_edge_structure(n),
        Suite::Lemma6 => verify_leaf_pairs(n),
        Suite::Lemma7 => verify_min_degree_embeddings(n),
        Suite::Prop9 => verify_restrictive_proposition(n),
        Suite::Lemma12 => verify_distinct_weights(n, opts.samples, opts.seed),
        Suite::Theorem2Z2 => verify_z2_classification(n, &opts.decision),
    }
}

/// Classifies every restrictive `Z_3` colouring of `K_n`, taken from a
/// filter over the full canonical enumeration. From `n = 5` on the filter is
/// compared against the parameterised stream.
pub fn verify_bad_edge_structure(n: usize) -> Result<SuiteReport> {
    if !(4..=7).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("bad-edge suite for n={n} (4..=7)")));
    }
    let mut report = SuiteReport::new(Suite::Lemma5, n);
    let colourings: Vec<EdgeColouring> = enumerate_colourings_canonical(n, 3, f64::INFINITY)?
        .filter(|c| c.is_restrictive())
        .collect();
    if n >= 5 {
        let stream = enumerate_restrictive_colourings(n, 3)?;
        let a: BTreeSet<String> = colourings.iter().map(|c| c.canonical_form().to_string()).collect();
        let b: BTreeSet<String> = stream.iter().map(|c| c.canonical_form().to_string()).collect();
        for c in a.symmetric_difference(&b) {
            let side = if a.contains(c) { "missing from stream" } else { "not in enumeration" };
            report.fail(c.clone(), side);
        }
        report.notes.push(format!("stream cross-check: {} vs {} classes", b.len(), a.len()));
    }
    for c in &colourings {
        report.checked += 1;
        let subject = c.canonical_form().to_string();
        match analyze_restrictive(c) {
            Ok(a) => {
                let base = a.base_colour.map_or("-".to_string(), |b| b.to_string());
                report.item(subject, format!("{:?} base {base} bad {:?}", a.residue_class, a.bad_edges));
            }
            Err(e @ ZsrError::ClassificationFailure(_)) => report.fail(subject, e.to_string()),
            Err(e) => return Err(e),
        }
    }
    Ok(report.finish())
}

/// Every non-star tree on `n` vertices has two leaves whose removal leaves a
/// non-star tree; each returned pair is checked independently.
pub fn verify_leaf_pairs(n: usize) -> Result<SuiteReport> {
    if !(6..=16).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("leaf-pair suite for n={n} (6..=16)")));
    }
    let mut report = SuiteReport::new(Suite::Lemma6, n);
    let mut fallbacks = 0;
    for t in trees(n)?.iter().filter(|t| !t.is_star()) {
        report.checked += 1;
        let g6 = t.to_graph6();
        match find_removable_leaf_pair_traced(t) {
            Ok(((u, v), fallback)) => {
                fallbacks += fallback as usize;
                let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
                let r = t.induced(&rest);
                if u == v || t.degree(u) != 1 || t.degree(v) != 1 || !r.is_tree() || r.is_star() {
                    report.fail(g6, format!("pair ({u}, {v}) does not leave a non-star tree"));
                }
            }
            Err(e) => report.fail(g6, e.to_string()),
        }
    }
    report.notes.push(format!("case analysis fell back to a scan {fallbacks} times"));
    Ok(report.finish())
}

/// Every tree on at most `n` vertices other than `K_{1,n-1}` embeds in every
/// host on `n` vertices with minimum degree at least `n - 2`.
pub fn verify_min_degree_embeddings(n: usize) -> Result<SuiteReport> {
    if !(6..=12).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("embedding suite for n={n} (6..=12)")));
    }
    let mut report = SuiteReport::new(Suite::Lemma7, n);
    let hosts: Vec<Graph> = gen_min_degree_hosts(n)?.collect();
    for m in 1..=n {
        let targets: Vec<Graph> = trees(m)?.into_iter().filter(|t| !(m == n && t.is_star())).collect();
        for t in &targets {
            for h in &hosts {
                report.checked += 1;
                let subject = format!("{} into {}", t.to_graph6(), h.to_graph6());
                match embed_tree_min_degree(h, t) {
                    Ok(map) if is_graph_embedding(h, t, &map) => {}
                    Ok(map) => report.fail(subject, format!("invalid map {map:?}")),
                    Err(e) => report.fail(subject, e.to_string()),
                }
            }
        }
    }
    report.notes.push(format!("{} hosts", hosts.len()));
    Ok(report.finish())
}

/// Zero-sum copies of every non-star tree on `n` vertices in every
/// restrictive colouring of `K_n` (trees with a vertex of degree 0 mod 3) or
/// of `K_{n+1}` (the rest).
pub fn verify_restrictive_proposition(n: usize) -> Result<SuiteReport> {
    if n % 3 != 1 {
        return Err(ZsrError::ResidueMismatch { n });
    }
    if !(7..=10).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("restrictive proposition for n={n} (7..=10)")));
    }
    let mut report = SuiteReport::new(Suite::Prop9, n);
    let small = enumerate_restrictive_colourings(n, 3)?;
    let large = enumerate_restrictive_colourings(n + 1, 3)?;
    report.notes.push(format!(
        "{} restrictive classes on K_{n}, {} on K_{}",
        small.len(),
        large.len(),
        n + 1
    ));
    for t in trees(n)? {
        let g6 = t.to_graph6();
        let class = degree_class(&t);
        let hosts = match class {
            DegreeClass::Star { .. } => continue,
            DegreeClass::HasVertexZeroMod3 { .. } => &small,
            _ => &large,
        };
        let misses: Vec<&EdgeColouring> = hosts
            .par_iter()
            .filter(|c| find_zero_sum_embedding(c, &t, None).is_none())
            .collect();
        report.checked += hosts.len() as u64;
        let host_n = hosts.first().map_or(0, |c| c.n());
        for c in &misses {
            report.fail(format!("{g6} in {c}"), "no zero-sum copy");
        }
        report.item(
            g6,
            format!("{}: {} of {} colourings of K_{host_n} have a zero-sum copy", class.name(), hosts.len() - misses.len(), hosts.len()),
        );
    }
    Ok(report.finish())
}

/// Rooted trees on `m` vertices, one root per automorphism orbit, that have
/// an ASP from the root.
pub fn asp_rooted_trees(m: usize) -> Result<Vec<RootedTree>> {
    let mut out = Vec::new();
    for t in trees(m)? {
        for class in automorphism_orbits(&t)?.classes {
            let rt = RootedTree::new(t, class[0])?;
            if asp_from(&rt).is_some() {
                out.push(rt);
            }
        }
    }
    Ok(out)
}

/// For each host size up to `n`, `samples` random `Z_3` colourings; every
/// ASP-admitting rooted tree of that size and every host vertex with two
/// colours at it must give two root-pinned embeddings of unequal weight.
pub fn verify_distinct_weights(n: usize, samples: u64, seed: u64) -> Result<SuiteReport> {
    if !(2..=12).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("distinct-weight suite for n={n} (2..=12)")));
    }
    let mut report = SuiteReport::new(Suite::Lemma12, n);
    let mut cases: BTreeMap<String, u64> = BTreeMap::new();
    for m in 2..=n {
        let rooted = asp_rooted_trees(m)?;
        if rooted.is_empty() {
            continue;
        }
        let results: Vec<(u64, Vec<(String, String)>, BTreeMap<String, u64>)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((m as u64) << 48) ^ i);
                let c = EdgeColouring::random(m, 3, &mut rng);
                let mut checked = 0;
                let mut fails = Vec::new();
                let mut seen: BTreeMap<String, u64> = BTreeMap::new();
                for rt in &rooted {
                    for v in 0..m {
                        let counts = c.colour_counts(v);
                        if counts.iter().filter(|&&x| x > 0).count() < 2 {
                            continue;
                        }
                        checked += 1;
                        let subject = format!("{} root {} in {c} at {v}", rt.tree.to_graph6(), rt.root);
                        match two_distinct_weight_embeddings_traced(&c, rt, v) {
                            Ok(p) => {
                                let ok = p.first.is_valid(&c, &rt.tree)
                                    && p.second.is_valid(&c, &rt.tree)
                                    && p.first.map[rt.root] == v
                                    && p.second.map[rt.root] == v
                                    && p.first.weight != p.second.weight;
                                if !ok {
                                    fails.push((subject, format!("bad pair {:?}", p.case)));
                                }
                                *seen.entry(format!("{:?}", p.case)).or_default() += 1;
                            }
                            Err(e) => fails.push((subject, e.to_string())),
                        }
                    }
                }
                (checked, fails, seen)
            })
            .collect();
        let mut checked_m = 0;
        for (checked, fails, seen) in results {
            checked_m += checked;
            for (s, o) in fails {
                report.fail(s, o);
            }
            for (case, count) in seen {
                *cases.entry(case).or_default() += count;
            }
        }
        report.checked += checked_m;
        report.item(format!("K_{m}"), format!("{} rooted trees, {checked_m} checks", rooted.len()));
    }
    for (case, count) in cases {
        report.notes.push(format!("{case}: {count}"));
    }
    Ok(report.finish())
}

/// `R(G, Z_2)` computed exactly against the closed formula for every graph
/// on at most `n` vertices with a positive even number of edges.
pub fn verify_z2_classification(n: usize, cfg: &DecisionConfig) -> Result<SuiteReport> {
    if !(1..=6).contains(&n) {
        return Err(ZsrError::SizeUnsupported(format!("Z_2 classification suite for n={n} (1..=6)")));
    }
    let mut report = SuiteReport::new(Suite::Theorem2Z2, n);
    for m in 1..=n {
        for g in all_graphs(m)? {
            let e = g.edge_count();
            if e == 0 || e % 2 == 1 {
                continue;
            }
            report.checked += 1;
            let expected = z2_formula(&g);
            let g6 = g.to_graph6();
            let cert = compute_ramsey_exact(&g, 2, expected + 1, cfg)?;
            match cert.status.exact() {
                Some(v) if v == expected => report.item(g6, format!("{v}")),
                Some(v) => report.fail(g6, format!("computed {v}, formula {expected}")),
                None => report.fail(
                    g6,
                    format!(
                        "undecided: lower {}, {}",
                        cert.status.lower(),
                        cert.note.unwrap_or_default()
                    ),
                ),
            }
        }
    }
    report.notes.push("graphs without edges are skipped".into());
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("lemma99".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites() {
        assert!(verify_leaf_pairs(7).unwrap().passed());
        assert!(verify_min_degree_embeddings(6).unwrap().passed());
        let r = verify_bad_edge_structure(5).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(verify_restrictive_proposition(6).is_err());
    }
}
