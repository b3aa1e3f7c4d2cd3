//! `zsr`: zero-sum Ramsey numbers of small graphs from the command line.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zsr_core::cache::CertificateCache;
use zsr_core::colouring::{analyze_restrictive, construct_one_vertex_lb, construct_two_vertex_lb, EdgeColouring};
use zsr_core::embed::{achievable_weights, find_zero_sum_embedding};
use zsr_core::ramsey::{
    check_conjecture_cached, compute_ramsey_exact, ramsey_bounds_via_theorems, CheckMode, CheckOptions,
    DecisionConfig, Engine, RamseyCertificate,
};
use zsr_core::structure::{
    conjecture_prediction, degree_class, find_pendant_asp, find_separated_asps, has_leaf_adjacent_degree2, is_2_good,
};
use zsr_core::treegen::gen_trees;
use zsr_core::verify::{run_suite, Suite, SuiteOptions};
use zsr_core::{Graph, ZsrError};

use report::{Format, Report};

#[derive(Parser)]
#[command(name = "zsr", version, about = "Zero-sum Ramsey numbers R(G, Z_k) for small graphs, k in {2, 3}")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Keep wall-clock fields in reports (they make reruns differ).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all free trees on n vertices.
    GenTrees {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        format: TreeFormat,
    },
    /// Degree class, structural predicates and theorem bounds of a tree.
    Classify {
        /// graph6 string.
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build or inspect edge colourings.
    #[command(subcommand)]
    Colouring(ColouringCommand),
    /// Search a coloured complete graph for a zero-sum copy of a target.
    Embed {
        /// File holding a colouring in `n k digits` form.
        #[arg(long)]
        colouring: PathBuf,
        /// File holding the target in graph6.
        #[arg(long)]
        target: PathBuf,
        /// Fix a target vertex on a host vertex: `T=H`, with `root` for 0.
        #[arg(long)]
        pin: Option<String>,
        /// Report every achievable weight instead of one zero-sum copy.
        #[arg(long)]
        weights: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact R(G, Z_k) with a certificate.
    Compute {
        /// File holding the target in graph6.
        #[arg(long)]
        target: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        k: u8,
        /// Largest complete graph to decide.
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the conjectured values for all trees on n vertices.
    CheckConjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Random colourings per tree in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        n: usize,
        /// Random colourings per host size (lemma12).
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ColouringCommand {
    /// One of the lower-bound constructions.
    Make {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        k: u8,
    },
    /// Colour counts and restrictive-structure analysis.
    Analyze {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "enum")]
    engine: EngineArg,
    /// Cap on estimated canonical classes per decision.
    #[arg(long, default_value_t = zsr_core::colouring::DEFAULT_CLASS_BUDGET)]
    budget: f64,
    /// Seconds per DFS decision; also lets the enumeration fall back to DFS.
    #[arg(long)]
    timeout: Option<f64>,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Certificate cache directory.
    #[arg(long, env = "ZSR_CACHE")]
    cache: Option<PathBuf>,
}

impl SearchArgs {
    fn config(&self) -> Result<DecisionConfig> {
        if !(self.budget > 0.0) {
            bail!("--budget must be positive");
        }
        let timeout = match self.timeout {
            Some(t) if !(t > 0.0) => bail!("--timeout must be positive"),
            Some(t) => Some(Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(DecisionConfig {
            engine: match self.engine {
                EngineArg::Enum => Engine::Enum,
                EngineArg::Dfs => Engine::Dfs,
            },
            budget: self.budget,
            timeout,
            jobs: self.jobs,
        })
    }

    fn open_cache(&self) -> Result<Option<CertificateCache>> {
        self.cache
            .as_deref()
            .map(|d| CertificateCache::open(d).with_context(|| format!("opening cache {}", d.display())))
            .transpose()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Graph6,
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Bounds,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Enum,
    Dfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    OneVertex,
    TwoVertex,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemma5,
    Lemma6,
    Lemma7,
    Prop9,
    Lemma12,
    #[value(name = "theorem2-z2")]
    Theorem2Z2,
}

/// Result of a command: the rendered output and whether a checked statement
/// failed.
struct Outcome {
    text: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(o) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, &o.text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{}", o.text);
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
                Ok(()) if o.failure.is_some() => {
                    eprintln!("zsr: {}", o.failure.unwrap_or_default());
                    ExitCode::from(2)
                }
                Ok(()) => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::GenTrees { n, format } => gen_trees_cmd(*n, *format),
        Command::Classify { tree, format } => classify(tree, *format),
        Command::Colouring(ColouringCommand::Make { kind, n, k }) => {
            let c = match kind {
                KindArg::OneVertex => construct_one_vertex_lb(*n, *k)?,
                KindArg::TwoVertex => construct_two_vertex_lb(*n, *k)?,
            };
            Ok(Outcome::ok(format!("{c}\n")))
        }
        Command::Colouring(ColouringCommand::Analyze { file, format }) => analyze(file, *format),
        Command::Embed {
            colouring,
            target,
            pin,
            weights,
            format,
        } => embed(colouring, target, pin.as_deref(), *weights, *format),
        Command::Compute {
            target,
            k,
            cap,
            search,
            format,
        } => compute(target, *k, *cap, search, *format, cli.timings),
        Command::CheckConjecture {
            n,
            mode,
            samples,
            seed,
            search,
            format,
        } => check(*n, *mode, *samples, *seed, search, *format, cli.timings),
        Command::Verify {
            suite,
            n,
            samples,
            seed,
            search,
            format,
        } => verify(*suite, *n, *samples, *seed, search, *format),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    Graph::from_graph6(line).with_context(|| format!("parsing graph6 in {}", path.display()))
}

fn read_colouring(path: &Path) -> Result<EdgeColouring> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.trim()
        .parse()
        .with_context(|| format!("parsing colouring in {}", path.display()))
}

fn gen_trees_cmd(n: usize, format: TreeFormat) -> Result<Outcome> {
    let trees: Vec<Graph> = gen_trees(n)?.collect();
    let format = match format {
        TreeFormat::Graph6 => {
            return Ok(Outcome::ok(trees.iter().map(|t| t.to_graph6() + "\n").collect()));
        }
        TreeFormat::Json => Format::Json,
        TreeFormat::Csv => Format::Csv,
        TreeFormat::Text => Format::Text,
    };
    let rows: Vec<Value> = trees
        .iter()
        .enumerate()
        .map(|(i, t)| {
            json!({
                "index": i,
                "graph6": t.to_graph6(),
                "degrees": t.degrees(),
                "degree_class": degree_class(t).name(),
            })
        })
        .collect();
    let doc = json!({"command": "gen-trees", "n": n, "count": trees.len(), "rows": rows});
    Ok(Outcome::ok(
        Report::new(doc, &["index", "graph6", "degree_class", "degrees"]).render(format)?,
    ))
}

fn classify(tree: &str, format: Format) -> Result<Outcome> {
    let t = Graph::from_graph6(tree.trim())?;
    if !t.is_tree() {
        bail!("{tree} is not a tree");
    }
    let n = t.n();
    let mut doc = json!({
        "command": "classify",
        "tree": t.to_graph6(),
        "canonical": zsr_core::canon::canonical_form(&t).as_str(),
        "n": n,
        "edges": t.edge_count(),
        "degrees": t.degrees(),
        "degree_class": degree_class(&t).name(),
        "two_good": is_2_good(&t).map(|(a, b)| vec![a, b]),
        "leaf_next_to_degree_two": has_leaf_adjacent_degree2(&t).map(|(a, b)| vec![a, b]),
        "pendant_asp": find_pendant_asp(&t),
        "separated_asps": find_separated_asps(&t).map(|(v, a, b)| json!({"v": v, "first": a, "second": b})),
        "rows": [],
    });
    if n % 3 == 1 {
        doc["prediction"] = json!(conjecture_prediction(&t)?);
        match ramsey_bounds_via_theorems(&t) {
            Ok(b) => {
                doc["lower"] = json!(b.lower);
                doc["upper"] = json!(b.upper);
                doc["rows"] = serde_json::to_value(&b.applied)?;
            }
            Err(e) => doc["bounds_error"] = json!(e.to_string()),
        }
    }
    Ok(Outcome::ok(Report::new(doc, &["name", "detail"]).render(format)?))
}

fn analyze(file: &Path, format: Format) -> Result<Outcome> {
    let c = read_colouring(file)?;
    let n = c.n();
    let (analysis, failure) = match analyze_restrictive(&c) {
        Ok(a) => (Some(a), None),
        Err(ZsrError::ClassificationFailure(m)) => (None, Some(m)),
        Err(e) => return Err(e.into()),
    };
    let rows: Vec<Value> = (0..n)
        .map(|v| {
            let counts = c.colour_counts(v);
            json!({
                "vertex": v,
                "colour0": counts[0],
                "colour1": counts[1],
                "colour2": counts[2],
                "bad_edge": analysis.as_ref().and_then(|a| a.bad_edge_at[v]).map(|(x, y)| format!("{x}-{y}")),
            })
        })
        .collect();
    let doc = json!({
        "command": "colouring analyze",
        "colouring": c.to_string(),
        "n": n,
        "k": c.k(),
        "restrictive": c.is_restrictive(),
        "analysis": analysis,
        "classification_failure": failure,
        "rows": rows,
    });
    let text = Report::new(doc, &["vertex", "colour0", "colour1", "colour2", "bad_edge"]).render(format)?;
    Ok(Outcome {
        text,
        failure: failure.map(|m| format!("classification failed: {m}")),
    })
}

fn parse_pin(arg: &str, target_n: usize, host_n: usize) -> Result<(usize, usize)> {
    let (t, h) = arg.split_once('=').ok_or_else(|| anyhow!("--pin expects T=H, got {arg:?}"))?;
    let t = if t == "root" { 0 } else { t.parse().context("--pin target vertex")? };
    let h: usize = h.parse().context("--pin host vertex")?;
    if t >= target_n || h >= host_n {
        bail!("--pin {arg} out of range");
    }
    Ok((t, h))
}

fn embed(colouring: &Path, target: &Path, pin: Option<&str>, weights: bool, format: Format) -> Result<Outcome> {
    let c = read_colouring(colouring)?;
    let g = read_graph(target)?;
    if g.n() > c.n() {
        bail!("target has {} vertices, host has {}", g.n(), c.n());
    }
    let pin = pin.map(|p| parse_pin(p, g.n(), c.n())).transpose()?;
    let mut doc = json!({
        "command": "embed",
        "colouring": c.to_string(),
        "target": g.to_graph6(),
        "pin": pin.map(|(t, h)| vec![t, h]),
        "rows": [],
    });
    if weights {
        doc["weights"] = json!(achievable_weights(&c, &g, pin)?);
    }
    let found = find_zero_sum_embedding(&c, &g, pin);
    doc["found"] = json!(found.is_some());
    if let Some(e) = &found {
        doc["weight"] = json!(e.weight);
        doc["rows"] = e
            .map
            .iter()
            .enumerate()
            .map(|(t, h)| json!({"target_vertex": t, "host_vertex": h}))
            .collect();
    }
    Ok(Outcome::ok(
        Report::new(doc, &["target_vertex", "host_vertex"]).render(format)?,
    ))
}

fn strip_timing(cert: &mut RamseyCertificate, timings: bool) {
    if !timings {
        cert.elapsed_ms = None;
    }
}

fn certificate_report(mut cert: RamseyCertificate, timings: bool) -> Result<Report> {
    strip_timing(&mut cert, timings);
    let mut doc = serde_json::to_value(&cert)?;
    doc["command"] = json!("compute");
    doc["rows"] = serde_json::to_value(&cert.decisions)?;
    Ok(Report::new(doc, &["n", "forced", "via"]))
}

fn compute(target: &Path, k: u8, cap: usize, search: &SearchArgs, format: Format, timings: bool) -> Result<Outcome> {
    let g = read_graph(target)?;
    let cfg = search.config()?;
    let mut cache = search.open_cache()?;
    if let Some(cert) = cache.as_ref().and_then(|c| c.get(&g, k)) {
        if cert.status.exact().is_some() {
            return Ok(Outcome::ok(certificate_report(cert.clone(), timings)?.render(format)?));
        }
    }
    let cert = compute_ramsey_exact(&g, k, cap, &cfg)?;
    if let Some(cache) = cache.as_mut() {
        cache.insert(cert.clone())?;
    }
    Ok(Outcome::ok(certificate_report(cert, timings)?.render(format)?))
}

#[allow(clippy::too_many_arguments)]
fn check(
    n: usize,
    mode: ModeArg,
    samples: u64,
    seed: u64,
    search: &SearchArgs,
    format: Format,
    timings: bool,
) -> Result<Outcome> {
    let opts = CheckOptions {
        decision: search.config()?,
        samples,
        seed,
    };
    let mode = match mode {
        ModeArg::Exact => CheckMode::Exact,
        ModeArg::Bounds => CheckMode::Bounds,
        ModeArg::Sampled => CheckMode::Sampled,
    };
    let mut cache = search.open_cache()?;
    let mut report = check_conjecture_cached(n, mode, &opts, cache.as_mut())?;
    for row in &mut report.rows {
        if let Some(cert) = row.computed.as_mut() {
            strip_timing(cert, timings);
        }
    }
    let disagree: Vec<&str> = report.rows.iter().filter(|r| !r.agrees).map(|r| r.tree.as_str()).collect();
    let failed = !disagree.is_empty();
    let failure = failed.then(|| format!("prediction differs for {}", disagree.join(", ")));
    let mut doc = serde_json::to_value(&report)?;
    doc["command"] = json!("check-conjecture");
    doc["all_agree"] = json!(!failed);
    let text = Report::new(
        doc,
        &["tree", "degree_class", "prediction", "lower", "upper", "exact", "agrees", "applied"],
    )
    .render(format)?;
    Ok(Outcome { text, failure })
}

fn verify(suite: SuiteArg, n: usize, samples: u64, seed: u64, search: &SearchArgs, format: Format) -> Result<Outcome> {
    let suite = match suite {
        SuiteArg::Lemma5 => Suite::Lemma5,
        SuiteArg::Lemma6 => Suite::Lemma6,
        SuiteArg::Lemma7 => Suite::Lemma7,
        SuiteArg::Prop9 => Suite::Prop9,
        SuiteArg::Lemma12 => Suite::Lemma12,
        SuiteArg::Theorem2Z2 => Suite::Theorem2Z2,
    };
    let opts = SuiteOptions {
        samples,
        seed,
        decision: search.config()?,
    };
    let r = run_suite(suite, n, &opts)?;
    let failed = !r.passed();
    let mut doc = serde_json::to_value(&r)?;
    doc["command"] = json!("verify");
    doc["passed"] = json!(!failed);
    let mut rows: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({"status": "fail", "subject": f.subject, "outcome": f.outcome}))
        .collect();
    rows.extend(
        r.items
            .iter()
            .map(|i| json!({"status": "ok", "subject": i.subject, "outcome": i.outcome})),
    );
    doc["rows"] = Value::Array(rows);
    let text = Report::new(doc, &["status", "subject", "outcome"]).render(format)?;
    let failure = failed.then(|| format!("{} failure(s) in {suite} at n = {n}", r.failures.len()));
    Ok(Outcome { text, failure })
}
