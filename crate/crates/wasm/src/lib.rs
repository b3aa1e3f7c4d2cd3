//! Browser bindings. Every entry point takes plain strings and numbers and
//! returns a JSON string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use zsr_core::colouring::{analyze_restrictive, construct_one_vertex_lb, construct_two_vertex_lb, EdgeColouring};
use zsr_core::embed::{achievable_weights, find_zero_sum_embedding, MAX_WEIGHT_HOST};
use zsr_core::ramsey::ramsey_bounds_via_theorems;
use zsr_core::structure::{conjecture_prediction, degree_class, find_separated_asps, has_leaf_adjacent_degree2, is_2_good};
use zsr_core::Graph;

type Out = std::result::Result<Value, String>;

fn wrap(r: Out) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn parse_tree(g6: &str) -> std::result::Result<Graph, String> {
    let t = Graph::from_graph6(g6.trim()).map_err(|e| e.to_string())?;
    if !t.is_tree() {
        return Err(format!("{} is not a tree", g6.trim()));
    }
    Ok(t)
}

pub fn classify_value(g6: &str) -> Out {
    let t = parse_tree(g6)?;
    let mut v = json!({
        "tree": t.to_graph6(),
        "n": t.n(),
        "degrees": t.degrees(),
        "degree_class": degree_class(&t).name(),
        "two_good": is_2_good(&t).is_some(),
        "leaf_next_to_degree_two": has_leaf_adjacent_degree2(&t).is_some(),
        "separated_asps": find_separated_asps(&t).map(|(v, _, _)| v),
    });
    if t.n() % 3 == 1 {
        v["prediction"] = json!(conjecture_prediction(&t).map_err(|e| e.to_string())?);
        if let Ok(b) = ramsey_bounds_via_theorems(&t) {
            v["lower"] = json!(b.lower);
            v["upper"] = json!(b.upper);
            v["applied"] = json!(b.applied.iter().map(|a| a.name.as_str()).collect::<Vec<_>>());
        }
    }
    Ok(v)
}

pub fn colouring_value(kind: &str, n: usize, k: u8) -> Out {
    let c = match kind {
        "one-vertex" => construct_one_vertex_lb(n, k),
        "two-vertex" => construct_two_vertex_lb(n, k),
        other => return Err(format!("unknown construction {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    analyze_value(&c.to_string())
}

pub fn analyze_value(text: &str) -> Out {
    let c: EdgeColouring = text.trim().parse().map_err(|e: zsr_core::ZsrError| e.to_string())?;
    let counts: Vec<[usize; 3]> = (0..c.n()).map(|v| c.colour_counts(v)).collect();
    let analysis = match analyze_restrictive(&c) {
        Ok(a) => json!(a),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({
        "colouring": c.to_string(),
        "n": c.n(),
        "k": c.k(),
        "matrix": c.matrix().chunks(c.n().max(1)).map(<[u8]>::to_vec).collect::<Vec<_>>(),
        "colour_counts": counts,
        "restrictive": c.is_restrictive(),
        "analysis": analysis,
    }))
}

pub fn embed_value(colouring: &str, target: &str, pin_root: Option<usize>) -> Out {
    let c: EdgeColouring = colouring.trim().parse().map_err(|e: zsr_core::ZsrError| e.to_string())?;
    let g = Graph::from_graph6(target.trim()).map_err(|e| e.to_string())?;
    if g.n() > c.n() {
        return Err(format!("target has {} vertices, host has {}", g.n(), c.n()));
    }
    let pin = match pin_root {
        Some(h) if h >= c.n() => return Err(format!("host vertex {h} out of range")),
        Some(h) => Some((0, h)),
        None => None,
    };
    let found = find_zero_sum_embedding(&c, &g, pin);
    let weights = if c.n() <= MAX_WEIGHT_HOST {
        Some(achievable_weights(&c, &g, pin).map_err(|e| e.to_string())?)
    } else {
        None
    };
    Ok(json!({
        "found": found.is_some(),
        "map": found.as_ref().map(|e| &e.map),
        "edges": found.as_ref().map(|e| g.edges().iter().map(|&(u, v)| [e.map[u], e.map[v]]).collect::<Vec<_>>()),
        "weights": weights,
    }))
}

/// Structural summary of a tree given in graph6.
#[wasm_bindgen]
pub fn classify(g6: &str) -> String {
    wrap(classify_value(g6))
}

/// One of the two lower-bound colourings, with its analysis.
#[wasm_bindgen]
pub fn make_colouring(kind: &str, n: usize, k: u8) -> String {
    wrap(colouring_value(kind, n, k))
}

#[wasm_bindgen]
pub fn analyze(colouring: &str) -> String {
    wrap(analyze_value(colouring))
}

/// Zero-sum copy of `target` in the coloured complete graph. A negative
/// `pin_root` leaves the root free.
#[wasm_bindgen]
pub fn embed(colouring: &str, target: &str, pin_root: i32) -> String {
    wrap(embed_value(colouring, target, usize::try_from(pin_root).ok()))
}
