//! The output record and its three renderings.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Where a result came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Provenance {
    #[serde(rename = "formula")]
    Formula,
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "both-agree")]
    BothAgree,
}

/// A rectangular view of a result, used for csv and pretty output.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produces before timing and rendering.
pub struct Output {
    pub result: Value,
    pub table: Table,
    pub provenance: Provenance,
    /// Whether every check in the result held; false maps to exit code 2.
    pub ok: bool,
}

/// One command invocation. Field order is fixed by declaration order.
#[derive(Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Provenance,
    pub elapsed_ms: f64,
}

pub fn render(record: &OutputRecord, table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(record)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.headers)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Pretty => Ok(pretty(record, table)),
    }
}

fn pretty(record: &OutputRecord, table: &Table) -> String {
    let inputs = match &record.inputs {
        Value::Object(map) => map
            .iter()
            .filter(|(_, v)| !v.is_null() && v.as_array().is_none_or(|a| !a.is_empty()))
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect::<Vec<_>>(),
        _ => Vec::new(),
    };
    let mut out = String::new();
    let provenance = serde_json::to_value(record.provenance).map(|v| plain(&v)).unwrap_or_default();
    let _ = writeln!(out, "sbc {} {} [{provenance}, {:.1} ms]", record.command, inputs.join(" "), record.elapsed_ms);
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{}", line(&mut table.headers.iter().copied()));
    let _ = writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
    for row in &table.rows {
        let _ = writeln!(out, "{}", line(&mut row.iter().map(String::as_str)));
    }
    out
}

/// A JSON scalar without quotes; arrays joined by commas.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}
