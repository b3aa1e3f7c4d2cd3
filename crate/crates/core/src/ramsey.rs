//! Deciding whether every colouring of `K_N` forces a zero-sum copy, exact
//! values with certificates, theorem-based bounds for trees, and the
//! conjecture checker.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::CertificateCache;
use crate::canon::{automorphism_orbits, canonical_form, canonical_graph};
use crate::colouring::{
    canonical_classes, check_budget, construct_one_vertex_lb, construct_two_vertex_lb, EdgeColouring, ParentClass,
    DEFAULT_CLASS_BUDGET,
};
use crate::embed::{find_zero_sum_embedding, ZeroSumPlan};
use crate::error::{Result, ZsrError};
use crate::graph::{full_mask, Graph};
use crate::structure::{
    conjecture_prediction, degree_class, find_pendant_asp, find_separated_asps, has_leaf_adjacent_degree2, is_2_good,
    DegreeClass,
};
use crate::treegen::trees;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Canonical parent classes of `K_{N-1}` times their orbit-minimal
    /// one-vertex extensions. Levels at or above the target order keep only
    /// zero-sum-free classes.
    Enum,
    /// Backtracking over edge colours, vertex by vertex.
    Dfs,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Enum => "enum",
            Engine::Dfs => "dfs",
        })
    }
}

#[derive(Clone, Debug)]
pub struct DecisionConfig {
    pub engine: Engine,
    /// Cap on the estimated class count for the enumeration engine.
    pub budget: f64,
    /// Wall-clock limit for the DFS engine.
    pub timeout: Option<Duration>,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        DecisionConfig {
            engine: Engine::Enum,
            budget: DEFAULT_CLASS_BUDGET,
            timeout: None,
            jobs: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Every colouring has a zero-sum copy. `checked` counts the colourings
    /// examined (enumeration) or search nodes (DFS).
    AllZeroSum { checked: u64 },
    Counterexample(EdgeColouring),
}

impl Decision {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::AllZeroSum { .. })
    }
}

/// Does every `Z_k` colouring of `K_n` contain a zero-sum copy of `g`?
/// Counterexamples are re-verified before being returned.
pub fn all_colourings_have_zero_sum(n: usize, g: &Graph, k: u8, cfg: &DecisionConfig) -> Result<Decision> {
    if !(2..=3).contains(&k) {
        return Err(ZsrError::PreconditionViolated(format!("modulus {k} not in {{2,3}}")));
    }
    if n > 16 {
        return Err(ZsrError::SizeUnsupported(format!("decisions on K_{n}")));
    }
    if g.n() > n {
        return Ok(Decision::Counterexample(EdgeColouring::constant(n, k, 0)));
    }
    let run = || match cfg.engine {
        Engine::Enum => decide_enumeration(n, g, k, cfg.budget),
        Engine::Dfs => decide_dfs(n, g, k, cfg.timeout),
    };
    let d = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| ZsrError::PreconditionViolated(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    if let Decision::Counterexample(c) = &d {
        assert!(
            find_zero_sum_embedding(c, g, None).is_none(),
            "engine returned a colouring containing a zero-sum copy"
        );
    }
    Ok(d)
}

type ParentCache = Mutex<HashMap<(usize, u8), Arc<Vec<ParentClass>>>>;

fn parent_classes(n: usize, k: u8) -> Result<Arc<Vec<ParentClass>>> {
    static CACHE: OnceLock<ParentCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(n, k)) {
        return Ok(p.clone());
    }
    let classes = canonical_classes(n, k, f64::INFINITY)?;
    let parents = Arc::new(classes.into_par_iter().map(ParentClass::new).collect::<Vec<_>>());
    cache.lock().unwrap().insert((n, k), parents.clone());
    Ok(parents)
}

/// One pinned plan per automorphism orbit of the target: some vertex of every
/// copy through a given host vertex lies in one of these orbits.
fn pinned_plans(g: &Graph, k: u8) -> Vec<ZeroSumPlan> {
    let reps: Vec<usize> = match automorphism_orbits(g) {
        Ok(p) => p.classes.iter().map(|c| c[0]).collect(),
        Err(_) => (0..g.n()).collect(),
    };
    reps.into_iter().map(|t| ZeroSumPlan::new(g, k, Some(t))).collect()
}

fn has_copy_through(plans: &[ZeroSumPlan], matrix: &[u8], host_n: usize, allowed: u32, h: usize) -> bool {
    plans.iter().any(|p| p.search(matrix, host_n, allowed, Some(h), 1).is_some())
}

type FreeCache = Mutex<HashMap<(String, u8, usize), Arc<Vec<ParentClass>>>>;

/// Classes of colourings of `K_m` with no zero-sum copy of `g` (all classes
/// when `m < |g|`). The property passes to induced subcolourings, so the
/// canonical parent of a surviving child survives too and augmentation over
/// the previous level reaches every class exactly once.
fn free_classes(m: usize, g: &Graph, k: u8, budget: f64) -> Result<Arc<Vec<ParentClass>>> {
    if m < g.n() {
        check_budget(m, k, budget)?;
        return parent_classes(m, k);
    }
    static CACHE: OnceLock<FreeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (canonical_form(g).as_str().to_string(), k, m);
    if let Some(p) = cache.lock().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let prev = free_classes(m - 1, g, k, budget)?;
    let estimate = prev.len() as f64 * (k as f64).powi(m as i32 - 1);
    if estimate > PRUNED_WORK_FACTOR * budget {
        return Err(ZsrError::BudgetExceeded {
            estimate: estimate / PRUNED_WORK_FACTOR,
            budget,
        });
    }
    let pinned = pinned_plans(g, k);
    let level: Vec<ParentClass> = prev
        .par_iter()
        .flat_map_iter(|p| {
            let mut matrix = seeded_matrix(p, m);
            let pinned = &pinned;
            p.minimal_extensions()
                .filter_map(move |ext| {
                    write_extension(&mut matrix, m, &ext);
                    if has_copy_through(pinned, &matrix, m, full_mask(m), m - 1) {
                        None
                    } else {
                        p.canonical_child(&ext)
                    }
                })
                .collect::<Vec<_>>()
        })
        .map(ParentClass::new)
        .collect();
    let level = Arc::new(level);
    cache.lock().unwrap().insert(key, level.clone());
    Ok(level)
}

/// Pruned levels are charged per parent extension, at this many per unit of
/// class budget.
const PRUNED_WORK_FACTOR: f64 = 10.0;

/// `n x n` matrix holding the parent colouring on its first `n - 1` vertices.
fn seeded_matrix(p: &ParentClass, n: usize) -> Vec<u8> {
    let m = n - 1;
    let pm = p.colouring.matrix();
    let mut matrix = vec![0u8; n * n];
    for u in 0..m {
        matrix[u * n..u * n + m].copy_from_slice(&pm[u * m..u * m + m]);
    }
    matrix
}

fn write_extension(matrix: &mut [u8], n: usize, ext: &[u8]) {
    let m = n - 1;
    for (u, &c) in ext.iter().enumerate() {
        matrix[u * n + m] = c;
        matrix[m * n + u] = c;
    }
}

fn decide_enumeration(n: usize, g: &Graph, k: u8, budget: f64) -> Result<Decision> {
    if n <= g.n() {
        check_budget(n, k, budget)?;
    }
    if n <= 1 {
        // g has at most one vertex and no edges
        return Ok(Decision::AllZeroSum { checked: 1 });
    }
    let parents = free_classes(n - 1, g, k, budget)?;
    let pinned = pinned_plans(g, k);
    let m = n - 1;
    let outcome: Vec<std::result::Result<u64, EdgeColouring>> = parents
        .par_iter()
        .map(|p| {
            let mut matrix = seeded_matrix(p, n);
            let mut checked = 0u64;
            for ext in p.minimal_extensions() {
                write_extension(&mut matrix, n, &ext);
                checked += 1;
                if !has_copy_through(&pinned, &matrix, n, full_mask(n), m) {
                    return Err(p.extend(&ext));
                }
            }
            Ok(checked)
        })
        .collect();
    let mut checked = 0;
    for o in outcome {
        match o {
            Ok(c) => checked += c,
            Err(c) => return Ok(Decision::Counterexample(c)),
        }
    }
    Ok(Decision::AllZeroSum { checked })
}

struct Dfs<'a> {
    n: usize,
    k: u8,
    min_copy: usize,
    plans: &'a [ZeroSumPlan],
    matrix: Vec<u8>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Dfs<'_> {
    /// Colours the edges from vertex `i` to all earlier vertices. Returns true
    /// once a zero-sum-free colouring of `K_n` is complete.
    fn extend(&mut self, i: usize) -> bool {
        if i == self.n {
            return true;
        }
        let k = self.k as usize;
        let total = k.pow(i as u32);
        let n = self.n;
        for code in 0..total {
            self.nodes += 1;
            if self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
                self.timed_out = true;
                return false;
            }
            let mut rest = code;
            for j in (0..i).rev() {
                let c = (rest % k) as u8;
                rest /= k;
                self.matrix[i * n + j] = c;
                self.matrix[j * n + i] = c;
            }
            // vertices 1..n are interchangeable: keep row 0 non-decreasing
            if i >= 2 && self.matrix[i] < self.matrix[i - 1] {
                continue;
            }
            if i + 1 >= self.min_copy && has_copy_through(self.plans, &self.matrix, n, full_mask(i + 1), i) {
                continue;
            }
            if self.extend(i + 1) {
                return true;
            }
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

fn decide_dfs(n: usize, g: &Graph, k: u8, timeout: Option<Duration>) -> Result<Decision> {
    let start = Instant::now();
    let plans = pinned_plans(g, k);
    let mut dfs = Dfs {
        n,
        k,
        min_copy: g.n().max(1),
        plans: &plans,
        matrix: vec![0u8; n * n],
        nodes: 0,
        deadline: timeout.map(|t| start + t),
        timed_out: false,
    };
    if n == 1 && g.n() == 1 {
        return Ok(Decision::AllZeroSum { checked: 1 });
    }
    if dfs.extend(1) {
        let mut c = EdgeColouring::constant(n, k, 0);
        for u in 0..n {
            for v in u + 1..n {
                c.set(u, v, dfs.matrix[u * n + v]);
            }
        }
        return Ok(Decision::Counterexample(c));
    }
    if dfs.timed_out {
        return Err(ZsrError::Timeout {
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(Decision::AllZeroSum { checked: dfs.nodes })
}

// ---------------------------------------------------------------------------
// Certificates.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Exact { value: usize },
    Bounds { lower: usize, upper: Option<usize> },
}

impl Status {
    pub fn lower(&self) -> usize {
        match *self {
            Status::Exact { value } => value,
            Status::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Option<usize> {
        match *self {
            Status::Exact { value } => Some(value),
            Status::Bounds { upper, .. } => upper,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            Status::Exact { value } => Some(value),
            Status::Bounds { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperEvidence {
    ExhaustiveEnumeration { n: usize, engine: Engine, checked: u64 },
    TheoremApplication { applied: Vec<String> },
    Sampled { n: usize, trials: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub n: usize,
    pub forced: bool,
    /// `exhaustive`, a construction name, or the engine used.
    pub via: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RamseyCertificate {
    /// graph6 of the canonical target.
    pub target: String,
    pub k: u8,
    #[serde(flatten)]
    pub status: Status,
    /// Zero-sum-free colouring of `K_{lower - 1}`, absent when the target has
    /// more than `lower - 1` vertices.
    pub lower_witness: Option<EdgeColouring>,
    pub upper_evidence: Option<UpperEvidence>,
    pub decisions: Vec<DecisionRecord>,
    /// Why the search stopped short, for `Bounds`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl RamseyCertificate {
    pub fn target_graph(&self) -> Result<Graph> {
        Graph::from_graph6(&self.target)
    }

    /// Re-checks the lower witness and the internal consistency of the bounds.
    pub fn verify(&self) -> Result<bool> {
        let g = self.target_graph()?;
        let lower = self.status.lower();
        if let Some(u) = self.status.upper() {
            if u < lower {
                return Ok(false);
            }
        }
        let witness_ok = match &self.lower_witness {
            Some(c) => c.n() + 1 == lower && c.k() == self.k && find_zero_sum_embedding(c, &g, None).is_none(),
            None => g.n() > lower.saturating_sub(1),
        };
        let evidence_ok = match (&self.status, &self.upper_evidence) {
            (Status::Exact { value }, Some(UpperEvidence::ExhaustiveEnumeration { n, .. })) => n == value,
            (Status::Exact { .. }, _) => false,
            _ => true,
        };
        Ok(witness_ok && evidence_ok)
    }
}

/// Colouring of `K_n` in which every vertex sees colour `j` exactly
/// `counts[j]` times, built from a 1-factorisation (even `n`) or circulant
/// 2-factors (odd `n`, all counts even).
pub fn regular_colouring(n: usize, k: u8, counts: &[usize]) -> Option<EdgeColouring> {
    if n < 2 || counts.iter().sum::<usize>() + 1 != n {
        return None;
    }
    let mut factor_colour = Vec::new();
    let mut c = EdgeColouring::constant(n, k, 0);
    if n % 2 == 0 {
        for (j, &cnt) in counts.iter().enumerate() {
            factor_colour.extend(std::iter::repeat_n(j as u8, cnt));
        }
        let m = n - 1;
        for (r, &col) in factor_colour.iter().enumerate() {
            c.set(m, r, col);
            for i in 1..n / 2 {
                c.set((r + i) % m, (r + m - i) % m, col);
            }
        }
    } else {
        if counts.iter().any(|c| c % 2 == 1) {
            return None;
        }
        for (j, &cnt) in counts.iter().enumerate() {
            factor_colour.extend(std::iter::repeat_n(j as u8, cnt / 2));
        }
        for (d, &col) in factor_colour.iter().enumerate() {
            for i in 0..n {
                c.set(i, (i + d + 1) % n, col);
            }
        }
    }
    Some(c)
}

/// Can `m` values be drawn from `counts` (count per residue) with sum 0 mod k?
fn has_zero_submultiset(counts: &[usize], m: usize, k: usize) -> bool {
    fn rec(j: usize, counts: &[usize], left: usize, sum: usize, k: usize) -> bool {
        if j == counts.len() {
            return left == 0 && sum % k == 0;
        }
        (0..=counts[j].min(left)).any(|a| rec(j + 1, counts, left - a, sum + a * j, k))
    }
    rec(0, counts, m, 0, k)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|a| {
            compositions(total - a, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// Colour counts at a vertex of `K_N` with no zero-sum `K_{1,m}` through it.
pub fn bad_star_profiles(big_n: usize, m: usize, k: u8) -> Vec<Vec<usize>> {
    compositions(big_n - 1, k as usize)
        .into_iter()
        .filter(|c| !has_zero_submultiset(c, m, k as usize))
        .collect()
}

/// Smallest zero-sum-free regular colouring of `K_N` for the star `K_{1,m}`.
fn star_regular_witness(big_n: usize, m: usize, k: u8) -> Option<EdgeColouring> {
    bad_star_profiles(big_n, m, k)
        .into_iter()
        .find_map(|p| regular_colouring(big_n, k, &p))
}

/// `R(K_{1,m}, Z_k)`: the least `N` at which every colour profile of `N - 1`
/// edges at a vertex contains `m` values summing to 0. When a bad profile
/// exists but cannot be realised regularly, the value is decided by the
/// exhaustive engine instead.
pub fn star_ramsey_exact(m: usize, k: u8) -> Result<usize> {
    if m == 0 || m % k as usize != 0 {
        return Err(ZsrError::DivisibilityViolated { k, edges: m });
    }
    let star = Graph::star(m);
    let mut big_n = m + 1;
    loop {
        let bad = bad_star_profiles(big_n, m, k);
        if bad.is_empty() {
            return Ok(big_n);
        }
        if star_regular_witness(big_n, m, k).is_none() {
            match all_colourings_have_zero_sum(big_n, &star, k, &DecisionConfig::default())? {
                Decision::AllZeroSum { .. } => return Ok(big_n),
                Decision::Counterexample(_) => {}
            }
        }
        big_n += 1;
    }
}

fn cheap_witnesses(g: &Graph, big_n: usize, k: u8) -> Vec<(&'static str, EdgeColouring)> {
    let mut out = Vec::new();
    if let Ok(c) = construct_one_vertex_lb(big_n, k) {
        out.push(("one_vertex_construction", c));
    }
    if let Ok(c) = construct_two_vertex_lb(big_n, k) {
        out.push(("two_vertex_construction", c));
    }
    if g.is_star() {
        if let Some(c) = star_regular_witness(big_n, g.n() - 1, k) {
            out.push(("star_regular_construction", c));
        }
    }
    for col in 0..k {
        out.push(("constant_colouring", EdgeColouring::constant(big_n, k, col)));
    }
    out
}

/// Exact `R(g, Z_k)` with `N` capped at `n_cap`. Constructions are tried as
/// lower witnesses before any exhaustive decision; a budget or timeout stops
/// the climb and yields `Bounds`.
pub fn compute_ramsey_exact(g: &Graph, k: u8, n_cap: usize, cfg: &DecisionConfig) -> Result<RamseyCertificate> {
    if g.edge_count() % k as usize != 0 {
        return Err(ZsrError::DivisibilityViolated {
            k,
            edges: g.edge_count(),
        });
    }
    let start = Instant::now();
    let canon = canonical_graph(g);
    let mut cert = RamseyCertificate {
        target: canonical_form(g).as_str().to_string(),
        k,
        status: Status::Bounds {
            lower: canon.n().max(1),
            upper: None,
        },
        lower_witness: None,
        upper_evidence: None,
        decisions: Vec::new(),
        note: None,
        elapsed_ms: None,
    };
    let mut big_n = canon.n().max(1);
    while big_n <= n_cap {
        if let Some((name, c)) = cheap_witnesses(&canon, big_n, k)
            .into_iter()
            .find(|(_, c)| find_zero_sum_embedding(c, &canon, None).is_none())
        {
            cert.decisions.push(DecisionRecord {
                n: big_n,
                forced: false,
                via: name.to_string(),
            });
            cert.lower_witness = Some(c);
            big_n += 1;
            cert.status = Status::Bounds {
                lower: big_n,
                upper: None,
            };
            continue;
        }
        let mut local = cfg.clone();
        let mut outcome = all_colourings_have_zero_sum(big_n, &canon, k, &local);
        if matches!(outcome, Err(ZsrError::BudgetExceeded { .. }))
            && cfg.engine == Engine::Enum
            && cfg.timeout.is_some()
        {
            local.engine = Engine::Dfs;
            outcome = all_colourings_have_zero_sum(big_n, &canon, k, &local);
        }
        match outcome {
            Ok(Decision::AllZeroSum { checked }) => {
                cert.decisions.push(DecisionRecord {
                    n: big_n,
                    forced: true,
                    via: local.engine.to_string(),
                });
                cert.status = Status::Exact { value: big_n };
                cert.upper_evidence = Some(UpperEvidence::ExhaustiveEnumeration {
                    n: big_n,
                    engine: local.engine,
                    checked,
                });
                cert.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                return Ok(cert);
            }
            Ok(Decision::Counterexample(c)) => {
                cert.decisions.push(DecisionRecord {
                    n: big_n,
                    forced: false,
                    via: local.engine.to_string(),
                });
                cert.lower_witness = Some(c);
                big_n += 1;
                cert.status = Status::Bounds {
                    lower: big_n,
                    upper: None,
                };
            }
            Err(e @ (ZsrError::BudgetExceeded { .. } | ZsrError::Timeout { .. })) => {
                cert.note = Some(format!("K_{big_n}: {e}"));
                cert.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }
    cert.note = Some(format!("cap {n_cap} reached"));
    cert.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(cert)
}

/// True at `N` must imply true at every larger decided `N`. Returns the
/// offending pair if the recorded decisions break this.
pub fn audit_monotonicity(decisions: &[DecisionRecord]) -> Option<(usize, usize)> {
    for a in decisions.iter().filter(|d| d.forced) {
        if let Some(b) = decisions.iter().find(|b| b.n > a.n && !b.forced) {
            return Some((a.n, b.n));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Theorem-based bounds for trees.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppliedResult {
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBounds {
    pub lower: usize,
    pub upper: usize,
    pub applied: Vec<AppliedResult>,
}

impl TheoremBounds {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Smallest tree size for which the restrictive-colouring based bounds are
/// applied.
pub const MIN_STRUCTURAL_N: usize = 7;

pub fn ramsey_bounds_via_theorems(t: &Graph) -> Result<TheoremBounds> {
    let n = t.n();
    if n % 3 != 1 {
        return Err(ZsrError::ResidueMismatch { n });
    }
    if !t.is_tree() {
        return Err(ZsrError::PreconditionViolated("bounds engine takes trees".into()));
    }
    let mut applied = Vec::new();
    let mut note = |name: &str, detail: String| {
        applied.push(AppliedResult {
            name: name.to_string(),
            detail,
        })
    };
    if n == 1 {
        note("trivial", "K_1 has no edges".into());
        return Ok(TheoremBounds {
            lower: 1,
            upper: 1,
            applied,
        });
    }
    let class = degree_class(t);
    if let DegreeClass::Star { centre } = class {
        let v = star_ramsey_exact(n - 1, 3)?;
        note("star_exact", format!("K_(1,{}) centred at {centre}: {v}", n - 1));
        return Ok(TheoremBounds {
            lower: v,
            upper: v,
            applied,
        });
    }
    let mut lower = n;
    let mut upper = usize::MAX;
    if class == DegreeClass::NoVertexZeroMod3 {
        lower = n + 1;
        note("one_vertex_lower", "no vertex degree is 0 mod 3".into());
    }
    if let Some((a, b)) = is_2_good(t) {
        upper = n + 2;
        note("two_good_upper", format!("leaves {a} and {b} at distance >= 3"));
    }
    if n >= MIN_STRUCTURAL_N {
        if let Some(p) = find_pendant_asp(t) {
            upper = upper.min(n + 1);
            note(
                "asp_upper",
                format!(
                    "v={} leaf={} asp at z={} x={} y={}",
                    p.v, p.leaf, p.witness.z, p.witness.x, p.witness.y
                ),
            );
            if let Some((u, w)) = has_leaf_adjacent_degree2(t) {
                note("leaf_degree2", format!("leaf {u} next to degree-2 vertex {w}"));
            }
        }
        if let Some((v, a, b)) = find_separated_asps(t) {
            let value = if matches!(class, DegreeClass::HasVertexZeroMod3 { .. }) { n } else { n + 1 };
            lower = lower.max(value);
            upper = upper.min(value);
            note(
                "separated_asp_exact",
                format!("v={v} asps at z={} (x={}) and z={} (x={})", a.z, a.x, b.z, b.x),
            );
        }
    }
    if upper == usize::MAX {
        return Err(ZsrError::PreconditionViolated("no upper bound applies".into()));
    }
    Ok(TheoremBounds { lower, upper, applied })
}

// ---------------------------------------------------------------------------
// Conjecture checking.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Bounds,
    Sampled,
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub decision: DecisionConfig,
    pub samples: u64,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            decision: DecisionConfig::default(),
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleEvidence {
    pub host: usize,
    pub trials: u64,
    pub missing: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub tree: String,
    pub degree_class: String,
    pub prediction: usize,
    pub lower: usize,
    pub upper: Option<usize>,
    pub applied: Vec<String>,
    pub exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub computed: Option<RamseyCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled: Option<SampleEvidence>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub mode: CheckMode,
    pub rows: Vec<ConjectureRow>,
}

impl BoundsReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

/// Random colourings of `K_host` in which `t` has no zero-sum copy.
pub fn sample_missing(t: &Graph, host: usize, trials: u64, seed: u64) -> u64 {
    let plan = ZeroSumPlan::new(t, 3, None);
    (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let c = EdgeColouring::random(host, 3, &mut rng);
            plan.search(&c.matrix(), host, full_mask(host), None, 1).is_none()
        })
        .count() as u64
}

pub fn check_conjecture_row(t: &Graph, mode: CheckMode, opts: &CheckOptions) -> Result<ConjectureRow> {
    check_conjecture_row_cached(t, mode, opts, None)
}

/// As [`check_conjecture_row`]; exact certificates are read from and added
/// to `cache`.
pub fn check_conjecture_row_cached(
    t: &Graph,
    mode: CheckMode,
    opts: &CheckOptions,
    cache: Option<&mut CertificateCache>,
) -> Result<ConjectureRow> {
    let prediction = conjecture_prediction(t)?;
    let class = degree_class(t);
    let bounds = ramsey_bounds_via_theorems(t)?;
    let mut lower = bounds.lower;
    let mut upper = Some(bounds.upper);
    let mut computed = None;
    let mut sampled = None;
    match mode {
        CheckMode::Bounds => {}
        CheckMode::Exact => {
            let cached = cache.as_ref().and_then(|c| c.get(t, 3)).filter(|c| c.status.exact().is_some()).cloned();
            let cert = match cached {
                Some(c) => c,
                None => {
                    let c = compute_ramsey_exact(t, 3, bounds.upper, &opts.decision)?;
                    if let Some(cache) = cache {
                        cache.insert(c.clone())?;
                    }
                    c
                }
            };
            lower = lower.max(cert.status.lower());
            if let Some(u) = cert.status.upper() {
                upper = Some(upper.map_or(u, |x| x.min(u)));
            }
            computed = Some(cert);
        }
        CheckMode::Sampled => {
            let missing = sample_missing(t, prediction, opts.samples, opts.seed);
            sampled = Some(SampleEvidence {
                host: prediction,
                trials: opts.samples,
                missing,
            });
        }
    }
    let exact = match upper {
        Some(u) if u == lower => Some(u),
        _ => None,
    };
    let consistent = lower <= prediction && upper.is_none_or(|u| prediction <= u) && exact.is_none_or(|e| e == prediction);
    let agrees = consistent && sampled.as_ref().is_none_or(|s| s.missing == 0);
    Ok(ConjectureRow {
        tree: canonical_form(t).as_str().to_string(),
        degree_class: class.name().to_string(),
        prediction,
        lower,
        upper,
        applied: bounds.applied.iter().map(|a| a.name.clone()).collect(),
        exact,
        computed,
        sampled,
        agrees,
    })
}

/// Per-tree comparison of the conjectured value with theorem bounds and,
/// depending on the mode, exact computation or random sampling. Rows are
/// sorted by canonical graph6.
pub fn check_conjecture(n: usize, mode: CheckMode, opts: &CheckOptions) -> Result<BoundsReport> {
    check_conjecture_cached(n, mode, opts, None)
}

pub fn check_conjecture_cached(
    n: usize,
    mode: CheckMode,
    opts: &CheckOptions,
    mut cache: Option<&mut CertificateCache>,
) -> Result<BoundsReport> {
    if n % 3 != 1 {
        return Err(ZsrError::ResidueMismatch { n });
    }
    let mut rows = trees(n)?
        .iter()
        .map(|t| check_conjecture_row_cached(t, mode, opts, cache.as_deref_mut()))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.tree.cmp(&b.tree));
    Ok(BoundsReport { n, mode, rows })
}

/// `R(G, Z_2)` as given by the classification for graphs with an even
/// number of edges.
pub fn z2_formula(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n + 2;
    }
    let comps = g.components();
    let two_cliques = comps.len() == 2 && comps.iter().all(|c| g.induced(c).is_complete());
    let all_odd = (0..n).all(|v| g.degree(v) % 2 == 1);
    if two_cliques || all_odd {
        n + 1
    } else {
        n
    }
}
