//! Rendering of command results. Every format is a pure function of the
//! report, so identical invocations print identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use cycloseq::coeffs::{render_matrix, AppendixKind, AppendixMatrix};
use cycloseq::{BigNat, CountDistribution, CountError, IndexKind, Scope, SequenceFamily};
use serde_json::{json, Map, Value};

use crate::args::Format;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Oracle,
    Both,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
            Provenance::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Exact(BigNat),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Exact(v) => Value::String(v.to_string()),
            Cell::Float(v) => json!(v),
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Empty => Value::Null,
        }
    }

    fn to_text(&self) -> String {
        match self {
            Cell::Exact(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    /// Sparse index to count map; zero counts are left out.
    Counts { index: &'static str, entries: Vec<(usize, BigNat)> },
    Scalar(Cell),
    /// Named values.
    Record(Vec<(String, Cell)>),
    Table { columns: Vec<String>, rows: Vec<Vec<Cell>> },
    Matrices(Vec<AppendixMatrix>),
    Sections(Vec<(String, Body)>),
}

impl Body {
    pub fn counts(dist: &CountDistribution) -> Body {
        Body::Counts {
            index: dist.kind().name(),
            entries: dist.iter().filter(|(_, c)| **c != BigNat::default()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub parameters: Vec<(String, Value)>,
    pub provenance: Provenance,
    pub body: Body,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&envelope(report)).expect("json values serialize");
            text.push('\n');
            text
        }
        Format::Csv => {
            let mut out = String::new();
            csv_body(&report.body, &mut out);
            out
        }
        Format::Pretty => {
            let params: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let mut out = format!("{} {} [{}]\n", report.command, params.join(" "), report.provenance.name());
            pretty_body(&report.body, &mut out);
            out
        }
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn envelope(report: &Report) -> Value {
    let parameters: Map<String, Value> = report.parameters.iter().cloned().collect();
    json!({
        "command": report.command,
        "parameters": parameters,
        "format_version": FORMAT_VERSION,
        "provenance": report.provenance.name(),
        "payload": json_body(&report.body),
    })
}

fn json_body(body: &Body) -> Value {
    match body {
        Body::Counts { entries, .. } => {
            Value::Object(entries.iter().map(|(i, c)| (i.to_string(), Value::String(c.to_string()))).collect())
        }
        Body::Scalar(cell) => cell.to_json(),
        Body::Record(fields) => Value::Object(fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        Body::Table { columns, rows } => Value::Array(
            rows.iter()
                .map(|row| Value::Object(columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect()))
                .collect(),
        ),
        Body::Matrices(matrices) => Value::Array(
            matrices
                .iter()
                .map(|m| {
                    let rows: Map<String, Value> = m
                        .row_labels
                        .iter()
                        .zip(&m.rows)
                        .map(|(label, row)| {
                            (label.to_string(), Value::Array(row.iter().map(|c| Value::String(c.to_string())).collect()))
                        })
                        .collect();
                    json!({
                        "kind": m.kind.name(),
                        "fixed": m.fixed_index,
                        "cols": m.col_labels,
                        "rows": rows,
                    })
                })
                .collect(),
        ),
        Body::Sections(sections) => {
            Value::Object(sections.iter().map(|(name, body)| (name.clone(), json_body(body))).collect())
        }
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn csv_body(body: &Body, out: &mut String) {
    match body {
        Body::Counts { index, entries } => {
            let _ = writeln!(out, "{index},count");
            for (i, c) in entries {
                let _ = writeln!(out, "{i},{c}");
            }
        }
        Body::Scalar(cell) => {
            let _ = writeln!(out, "value\n{}", csv_field(&cell.to_text()));
        }
        Body::Record(fields) => {
            let _ = writeln!(out, "name,value");
            for (k, v) in fields {
                let _ = writeln!(out, "{},{}", csv_field(k), csv_field(&v.to_text()));
            }
        }
        Body::Table { columns, rows } => {
            let header: Vec<String> = columns.iter().map(|c| csv_field(c)).collect();
            let _ = writeln!(out, "{}", header.join(","));
            for row in rows {
                let cells: Vec<String> = row.iter().map(|c| csv_field(&c.to_text())).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        Body::Matrices(matrices) => {
            let _ = writeln!(out, "kind,fixed,row,col,value");
            for m in matrices {
                for (label, row) in m.row_labels.iter().zip(&m.rows) {
                    for (col, value) in m.col_labels.iter().zip(row) {
                        let _ = writeln!(out, "{},{},{label},{col},{value}", m.kind.name(), m.fixed_index);
                    }
                }
            }
        }
        Body::Sections(sections) => {
            for (name, body) in sections {
                let _ = writeln!(out, "# {name}");
                csv_body(body, out);
            }
        }
    }
}

fn aligned(columns: &[String], rows: &[Vec<String>], out: &mut String) {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(columns));
    for row in rows {
        let _ = writeln!(out, "{}", line(row));
    }
}

fn pretty_body(body: &Body, out: &mut String) {
    match body {
        Body::Counts { index, entries } => {
            let rows: Vec<Vec<String>> = entries.iter().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect();
            aligned(&[index.to_string(), "count".to_string()], &rows, out);
        }
        Body::Scalar(cell) => {
            let _ = writeln!(out, "{}", cell.to_text());
        }
        Body::Record(fields) => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in fields {
                let _ = writeln!(out, "{k:<width$}  {}", v.to_text());
            }
        }
        Body::Table { columns, rows } => {
            let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Cell::to_text).collect()).collect();
            aligned(columns, &rows, out);
        }
        Body::Matrices(matrices) => {
            for (index, m) in matrices.iter().enumerate() {
                if index > 0 {
                    out.push('\n');
                }
                out.push_str(&render_matrix(m));
            }
        }
        Body::Sections(sections) => {
            for (index, (name, body)) in sections.iter().enumerate() {
                if index > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "== {name}");
                pretty_body(body, out);
            }
        }
    }
}

/// Reads a distribution back from a JSON envelope printed by `tnum` or `dist`.
pub fn distribution_from_json(text: &str) -> Result<CountDistribution, CountError> {
    let bad = |what: &str| CountError::Domain(format!("not a distribution envelope: {what}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let params = value.get("parameters").and_then(Value::as_object).ok_or_else(|| bad("parameters"))?;
    let get = |key: &str| params.get(key).and_then(Value::as_u64).map(|v| v as usize).ok_or_else(|| bad(key));
    let family = SequenceFamily::new(get("m")?, get("n")?)?;
    let kind = match params.get("pattern").and_then(Value::as_str) {
        None => IndexKind::Tau,
        Some(text) => text.parse::<cycloseq::Pattern>()?.index_kind(),
    };
    let payload = value.get("payload").and_then(Value::as_object).ok_or_else(|| bad("payload"))?;
    let mut sparse = BTreeMap::new();
    for (key, count) in payload {
        let index: usize = key.parse().map_err(|_| bad(key))?;
        let count: BigNat = count.as_str().and_then(|c| c.parse().ok()).ok_or_else(|| bad(key))?;
        sparse.insert(index, count);
    }
    Ok(CountDistribution::new(Scope::Family(family), kind, sparse))
}

/// Reads matrices back from a JSON envelope printed by `appendix`.
pub fn matrices_from_json(text: &str) -> Result<Vec<AppendixMatrix>, CountError> {
    let bad = |what: &str| CountError::Domain(format!("not a matrix envelope: {what}"));
    let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let list = value.get("payload").and_then(Value::as_array).ok_or_else(|| bad("payload"))?;
    list.iter()
        .map(|m| {
            let kind: AppendixKind = m.get("kind").and_then(Value::as_str).ok_or_else(|| bad("kind"))?.parse()?;
            let fixed_index = m.get("fixed").and_then(Value::as_u64).ok_or_else(|| bad("fixed"))? as usize;
            let col_labels = m
                .get("cols")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("cols"))?
                .iter()
                .map(|c| c.as_u64().map(|c| c as usize).ok_or_else(|| bad("col")))
                .collect::<Result<Vec<_>, _>>()?;
            let mut row_labels = Vec::new();
            let mut rows = Vec::new();
            for (label, row) in m.get("rows").and_then(Value::as_object).ok_or_else(|| bad("rows"))? {
                row_labels.push(label.parse().map_err(|_| bad(label))?);
                rows.push(
                    row.as_array()
                        .ok_or_else(|| bad(label))?
                        .iter()
                        .map(|c| c.as_str().and_then(|c| c.parse().ok()).ok_or_else(|| bad(label)))
                        .collect::<Result<Vec<BigNat>, _>>()?,
                );
            }
            Ok(AppendixMatrix { kind, fixed_index, row_labels, col_labels, rows })
        })
        .collect()
}
