//! Command reports and their human / JSON / CSV renderings.
//!
//! Floating values are rounded to 12 significant digits before rendering, so
//! identical inputs produce byte-identical machine output.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to 12 significant digits, as text.
pub fn sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses");
    // Shortest round-trip text of the rounded value; always '.'-separated.
    let text = format!("{rounded}");
    if text.len() > 24 {
        format!("{rounded:e}")
    } else {
        text
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => sig(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                sig(*x).parse::<f64>().ok().and_then(Number::from_f64).map_or(Value::Null, Value::Number)
            }
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Result of one CLI command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub pass: bool,
    pub summary: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self { command, pass: true, summary: Vec::new(), columns, rows: Vec::new(), warnings: Vec::new() }
    }

    pub fn summary(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command));
        root.insert("pass".into(), Value::from(self.pass));
        let summary: Map<String, Value> =
            self.summary.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
        root.insert("summary".into(), Value::Object(summary));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(self.columns.iter().zip(row).map(|(k, v)| (k.to_string(), v.json())).collect())
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        root.insert(
            "warnings".into(),
            Value::Array(self.warnings.iter().cloned().map(Value::from).collect()),
        );
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("json serializes");
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory csv");
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::text)).expect("in-memory csv");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8 csv")
    }

    fn human(&self) -> String {
        let mut out = String::new();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "gapbound {}: {status}", self.command);
        let key_width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "  {k:<key_width$}  {}", v.text());
        }
        if !self.rows.is_empty() {
            let cells: Vec<Vec<String>> =
                self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
                .collect();
            out.push('\n');
            let line = |items: Vec<&str>| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let _ = writeln!(out, "  {}", line(self.columns.clone()));
            for r in &cells {
                let _ = writeln!(out, "  {}", line(r.iter().map(String::as_str).collect()));
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}
