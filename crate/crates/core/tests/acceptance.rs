//! Acceptance run: one line per criterion. Criteria whose statement turns out
//! to be false are reported as FAIL together with the counterexample; the
//! process only exits non-zero when an outcome differs from what is recorded
//! in the README.
//!
//! `ZSR_EXTENDED=1` adds a DFS re-check of every `K_8` decision (up to 4 h per
//! tree).

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zsr_core::canon::is_isomorphic;
use zsr_core::colouring::{
    burnside_class_count, construct_one_vertex_lb, construct_two_vertex_lb, enumerate_colourings_canonical,
};
use zsr_core::embed::find_zero_sum_embedding;
use zsr_core::ramsey::{
    all_colourings_have_zero_sum, check_conjecture, compute_ramsey_exact, ramsey_bounds_via_theorems, sample_missing,
    star_ramsey_exact, CheckMode, CheckOptions, DecisionConfig, Engine, Status,
};
use zsr_core::structure::{conjecture_prediction, degree_class, DegreeClass};
use zsr_core::treegen::{gen_forests, trees};
use zsr_core::verify::{
    verify_bad_edge_structure, verify_distinct_weights, verify_leaf_pairs, verify_min_degree_embeddings,
    verify_restrictive_proposition, verify_z2_classification,
};
use zsr_core::Graph;

struct Outcome {
    pass: bool,
    detail: String,
    /// The outcome recorded in the README; a mismatch fails the run.
    expected_pass: bool,
}

impl Outcome {
    fn pass(detail: String) -> Self {
        Outcome {
            pass: true,
            detail,
            expected_pass: true,
        }
    }
}

fn report(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let verdict = if o.pass && in_time { "PASS" } else { "FAIL" };
    let late = if in_time { String::new() } else { format!(" (over the {limit:?} limit)") };
    let line = format!(
        "criterion {id:>2} {verdict}: {name}: {}{late} [{:.1}s]",
        o.detail,
        elapsed.as_secs_f64()
    );
    writeln!(std::io::stderr(), "{line}").unwrap();
    o.pass == o.expected_pass && in_time
}

fn c1() -> Outcome {
    let cfg = DecisionConfig::default();
    let star = compute_ramsey_exact(&Graph::star(3), 3, 9, &cfg).unwrap();
    let big = star_ramsey_exact(6, 3).unwrap();
    let ok = star.status == Status::Exact { value: 6 } && star.verify().unwrap() && big == 9;
    Outcome {
        pass: ok,
        detail: format!("R(K_1,3) = {:?}, star_ramsey_exact(6) = {big}", star.status.exact()),
        expected_pass: true,
    }
}

fn c2() -> Outcome {
    let r = verify_z2_classification(5, &DecisionConfig::default()).unwrap();
    Outcome {
        pass: r.passed() && r.checked > 0,
        detail: format!("{} graphs with a positive even edge count, {} mismatches", r.checked, r.failures.len()),
        expected_pass: true,
    }
}

fn c3() -> Outcome {
    let r = check_conjecture(4, CheckMode::Exact, &CheckOptions::default()).unwrap();
    let values: Vec<String> = r
        .rows
        .iter()
        .map(|row| format!("{} -> {:?} (predicted {})", row.tree, row.exact, row.prediction))
        .collect();
    let p4 = r.rows.iter().find(|row| row.degree_class == "NoVertexZeroMod3");
    let star = r.rows.iter().find(|row| row.degree_class == "Star");
    let ok = r.rows.len() == 2
        && r.all_agree()
        && p4.and_then(|x| x.exact) == Some(5)
        && star.and_then(|x| x.exact) == Some(6);
    Outcome {
        pass: ok,
        detail: values.join(", "),
        expected_pass: true,
    }
}

fn c4() -> Outcome {
    let mut parts = Vec::new();
    let mut failing = BTreeSet::new();
    for n in 4..=7 {
        let r = verify_bad_edge_structure(n).unwrap();
        parts.push(format!("n={n}: {} classes, {} unclassified", r.checked, r.failures.len()));
        for f in &r.failures {
            failing.insert(f.subject.clone());
        }
    }
    let known: BTreeSet<String> = ["4 3 001101", "4 3 002202", "4 3 112212"].map(String::from).into();
    let mut detail = parts.join("; ");
    if !failing.is_empty() {
        detail.push_str(&format!(
            "; unclassified: {}",
            failing.iter().cloned().collect::<Vec<_>>().join(", ")
        ));
    }
    Outcome {
        pass: failing.is_empty(),
        detail,
        expected_pass: failing != known,
    }
}

fn c5() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for n in 6..=9 {
        let a = verify_leaf_pairs(n).unwrap();
        let b = verify_min_degree_embeddings(n).unwrap();
        failures += a.failures.len() + b.failures.len();
        checked += a.checked + b.checked;
    }
    Outcome::pass(format!("{checked} leaf-pair and embedding checks, {failures} failures"))
        .require(failures == 0)
}

fn c6() -> Outcome {
    let mut failures = Vec::new();
    let one = construct_one_vertex_lb(7, 3).unwrap();
    let mut trees_checked = 0;
    for t in trees(7).unwrap() {
        if degree_class(&t) == DegreeClass::NoVertexZeroMod3 {
            trees_checked += 1;
            if find_zero_sum_embedding(&one, &t, None).is_some() {
                failures.push(t.to_graph6());
            }
        }
    }
    let mut forests_checked = 0;
    for n in 2..=10 {
        let two = construct_two_vertex_lb(n + 1, 3).unwrap();
        for f in gen_forests(n, 0).unwrap() {
            if f.edge_count() == 0 || (0..n).any(|v| f.degree(v) % 3 != 1) {
                continue;
            }
            forests_checked += 1;
            if find_zero_sum_embedding(&two, &f, None).is_some() {
                failures.push(f.to_graph6());
            }
        }
    }
    Outcome::pass(format!(
        "{trees_checked} trees in the one-vertex colouring of K_7, {forests_checked} forests in the two-vertex colouring of K_(n+1), {} zero-sum copies",
        failures.len()
    ))
    .require(failures.is_empty() && trees_checked > 0 && forests_checked > 0)
}

fn c7() -> Outcome {
    let r = verify_distinct_weights(9, 10_000, 2024).unwrap();
    Outcome::pass(format!(
        "{} (colouring, rooted tree, vertex) checks, {} failures; {}",
        r.checked,
        r.failures.len(),
        r.notes.join(", ")
    ))
    .require(r.passed())
}

fn c8() -> Outcome {
    let r = verify_restrictive_proposition(7).unwrap();
    Outcome::pass(format!("{}; {} checks, {} violations", r.notes.join(", "), r.checked, r.failures.len()))
        .require(r.passed())
}

fn c9() -> Outcome {
    let opts = CheckOptions::default();
    let report = check_conjecture(7, CheckMode::Exact, &opts).unwrap();
    let mut problems = Vec::new();
    let mut disagreements = Vec::new();
    let mut completed = 0;
    for row in &report.rows {
        match row.exact {
            Some(v) => {
                completed += 1;
                if v != row.prediction {
                    disagreements.push(format!("{} exact {v}, predicted {}", row.tree, row.prediction));
                }
            }
            None => {
                if !(row.lower <= row.prediction && row.upper.is_none_or(|u| row.prediction <= u)) {
                    problems.push(format!("{} bounds exclude the prediction", row.tree));
                }
            }
        }
        let b = ramsey_bounds_via_theorems(&Graph::from_graph6(&row.tree).unwrap()).unwrap();
        if let Some(v) = row.exact {
            if v < b.lower || v > b.upper {
                problems.push(format!("{} exact {v} outside theorem bounds [{}, {}]", row.tree, b.lower, b.upper));
            }
        }
        if let Some(cert) = &row.computed {
            if !cert.verify().unwrap() {
                problems.push(format!("{} certificate does not verify", row.tree));
            }
        }
    }
    if std::env::var("ZSR_EXTENDED").is_ok_and(|v| v == "1") {
        let dfs = DecisionConfig {
            engine: Engine::Dfs,
            timeout: Some(Duration::from_secs(4 * 3600)),
            ..Default::default()
        };
        for t in trees(7).unwrap().iter().filter(|t| !t.is_star()) {
            let a = all_colourings_have_zero_sum(8, t, 3, &DecisionConfig::default()).unwrap();
            match all_colourings_have_zero_sum(8, t, 3, &dfs) {
                Ok(b) if a.holds() != b.holds() => problems.push(format!("{} engines disagree on K_8", t.to_graph6())),
                Ok(_) => {}
                Err(e) => problems.push(format!("{} DFS on K_8: {e}", t.to_graph6())),
            }
        }
    }

    // n = 10 joined-star families: lower witnesses and sampled upper evidence
    let mut family = Vec::new();
    for (leaves, path) in [(2, 6), (3, 4), (4, 2)] {
        let t = Graph::joined_stars(leaves, path);
        let predicted = conjecture_prediction(&t).unwrap();
        let b = ramsey_bounds_via_theorems(&t).unwrap();
        let witness_ok = if predicted == 11 {
            let c = construct_one_vertex_lb(10, 3).unwrap();
            find_zero_sum_embedding(&c, &t, None).is_none()
        } else {
            // no copy of a 10-vertex tree fits in K_9
            t.n() == 10
        };
        let missing = sample_missing(&t, predicted, 10_000, 17);
        // K_1,4 + P_2 is the double star D(4,4): it has no ASP anywhere, so
        // only the 2-good bound caps it from above
        let theorem_ok = if path == 2 {
            (b.lower, b.upper) == (predicted, predicted + 1)
        } else {
            b.exact() == Some(predicted)
        };
        if !witness_ok || missing > 0 || !theorem_ok {
            problems.push(format!(
                "stars K_1,{leaves} joined by P_{path}: witness {witness_ok}, {missing} misses, bounds [{}, {}]",
                b.lower, b.upper
            ));
        }
        family.push(format!(
            "K_1,{leaves}+P_{path}: predicted {predicted}, theorem bounds [{}, {}], 10000 samples on K_{predicted}, {missing} missing",
            b.lower, b.upper
        ));
    }

    let known = ["FiQC? exact 8, predicted 7".to_string()];
    let detail = format!(
        "{completed}/11 rows exact; disagreements: [{}]; {}{}",
        disagreements.join(", "),
        family.join("; "),
        if problems.is_empty() { String::new() } else { format!("; problems: {}", problems.join(", ")) }
    );
    Outcome {
        pass: problems.is_empty() && disagreements.is_empty(),
        detail,
        expected_pass: !(problems.is_empty() && disagreements == known),
    }
}

fn c10() -> Outcome {
    let mut problems = Vec::new();
    let en = DecisionConfig::default();
    let dfs = DecisionConfig {
        engine: Engine::Dfs,
        ..Default::default()
    };
    let mut decisions = 0;
    for k in [2u8, 3] {
        for m in 1..=6 {
            for t in trees(m).unwrap() {
                if t.edge_count() % k as usize != 0 {
                    continue;
                }
                for n in m.max(2)..=6 {
                    decisions += 1;
                    let a = all_colourings_have_zero_sum(n, &t, k, &en).unwrap().holds();
                    let b = all_colourings_have_zero_sum(n, &t, k, &dfs).unwrap().holds();
                    if a != b {
                        problems.push(format!("{} K_{n} k={k}", t.to_graph6()));
                    }
                }
            }
        }
    }
    for k in [2u8, 3] {
        for n in 1..=5 {
            let c = enumerate_colourings_canonical(n, k, f64::INFINITY).unwrap().count() as u128;
            if c != burnside_class_count(n, k) {
                problems.push(format!("class count n={n} k={k}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut pairs = 0;
    for n in 2..=7 {
        let perms = permutations(n);
        for _ in 0..40 {
            let g = random_graph(n, &mut rng);
            let h = if rng.gen_bool(0.5) {
                g.permuted(&perms[rng.gen_range(0..perms.len())])
            } else {
                random_graph(n, &mut rng)
            };
            pairs += 1;
            let brute = perms.iter().any(|p| g.permuted(p) == h);
            if brute != is_isomorphic(&g, &h) {
                problems.push(format!("canonical form {} vs {}", g.to_graph6(), h.to_graph6()));
            }
        }
    }
    Outcome::pass(format!(
        "{decisions} engine pairs, class counts n<=5, {pairs} isomorphism pairs against n!; {} problems",
        problems.len()
    ))
    .require(problems.is_empty())
}

impl Outcome {
    fn require(mut self, ok: bool) -> Self {
        self.pass = ok;
        self
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for pos in 0..=i {
                let mut q: Vec<usize> = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn main() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let results = [
        report(1, "small stars", Duration::from_secs(10), c1),
        report(2, "Z_2 classification", min(10), c2),
        report(3, "n = 4 conjecture rows", min(1), c3),
        report(4, "bad-edge structure of restrictive colourings", min(30), c4),
        report(5, "leaf pairs and min-degree embeddings", min(10), c5),
        report(6, "lower-bound constructions", min(10), c6),
        report(7, "two root-pinned weights", min(30), c7),
        report(8, "restrictive colourings force zero-sum trees", min(60), c8),
        report(9, "n = 7 conjecture check and n = 10 families", min(60), c9),
        report(10, "engine and canonical-form cross-validation", min(30), c10),
    ];
    let unexpected = results.iter().filter(|ok| !**ok).count();
    writeln!(std::io::stderr(), "{unexpected} criteria differ from the recorded outcome").unwrap();
    if unexpected > 0 {
        std::process::exit(1);
    }
}
