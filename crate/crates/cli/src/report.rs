//! Report rendering. The JSON document is the record; CSV and text are
//! rendered from its `rows` array using a fixed column list, so the three
//! formats never disagree.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Report {
    pub doc: Value,
    pub columns: &'static [&'static str],
}

impl Report {
    pub fn new(doc: Value, columns: &'static [&'static str]) -> Self {
        Report { doc, columns }
    }

    fn rows(&self) -> &[Value] {
        self.doc.get("rows").and_then(Value::as_array).map_or(&[], Vec::as_slice)
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.rows()
            .iter()
            .map(|r| self.columns.iter().map(|c| cell(r.get(*c).unwrap_or(&Value::Null))).collect())
            .collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.doc)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(self.columns)?;
                for row in self.cells() {
                    w.write_record(&row)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Text => Ok(self.text()),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        if let Some(map) = self.doc.as_object() {
            for (k, v) in map {
                if k == "rows" || v.is_object() {
                    continue;
                }
                if let Value::Array(items) = v {
                    if items.iter().any(|x| x.is_object()) {
                        continue;
                    }
                }
                out.push_str(&format!("{k}: {}\n", cell(v)));
            }
        }
        out.push('\n');
        let cells = self.cells();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(self.columns.to_vec()));
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}
