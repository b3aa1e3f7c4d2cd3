//! graph6 text encoding: a size byte `63 + n`, then the upper triangle of the
//! adjacency matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte, each byte offset by 63.

use crate::error::{Result, ZsrError};
use crate::graph::{Graph, MAX_VERTICES};

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![(63 + n) as u8];
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(ZsrError::Parse("empty graph6 string".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(ZsrError::Parse(format!("invalid graph6 size byte {first}")));
    }
    if first == 126 {
        return Err(ZsrError::SizeUnsupported(format!(
            "graph6 with more than 62 vertices (limit {MAX_VERTICES})"
        )));
    }
    let n = (first - 63) as usize;
    if n > MAX_VERTICES {
        return Err(ZsrError::SizeUnsupported(format!("{n} vertices (limit {MAX_VERTICES})")));
    }
    let body = &bytes[1..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(ZsrError::Parse(format!(
            "graph6 body has {} bytes, expected {expected} for n={n}",
            body.len()
        )));
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(ZsrError::Parse(format!("invalid graph6 byte {b}")));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
