use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Vector(Vec<f64>),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Vector(v) => {
                let parts: Vec<String> = v.iter().map(f64::to_string).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
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

impl From<Vec<f64>> for Cell {
    fn from(v: Vec<f64>) -> Self {
        Cell::Vector(v)
    }
}

/// One record of a report section, with cells in display order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub section: String,
    pub cells: Vec<(String, Cell)>,
}

impl Row {
    pub fn new(section: &str) -> Self {
        Self { section: section.to_string(), cells: Vec::new() }
    }

    pub fn cell(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.cells.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.cells.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub meta: Vec<(String, String)>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(title: &str) -> Self {
        Self { title: title.to_string(), meta: Vec::new(), rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn section(&self, name: &str) -> impl Iterator<Item = &Row> {
        let name = name.to_string();
        self.rows.iter().filter(move |r| r.section == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Lines,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "text" => Some(Format::Text),
            "lines" => Some(Format::Lines),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line {
    Header { title: String, meta: Vec<(String, String)> },
    Row(Row),
}

/// Renders `r` as aligned text, or as one JSON object per line with the
/// header first.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Lines => {
            let mut out = String::new();
            let header = Line::Header { title: r.title.clone(), meta: r.meta.clone() };
            out.push_str(&serde_json::to_string(&header).expect("serializable"));
            out.push('\n');
            for row in &r.rows {
                out.push_str(&serde_json::to_string(&Line::Row(row.clone())).expect("serializable"));
                out.push('\n');
            }
            out
        }
        Format::Text => emit_text(r),
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = format!("# {}\n", r.title);
    let width = r.meta.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &r.meta {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    let mut start = 0;
    while start < r.rows.len() {
        let section = &r.rows[start].section;
        let keys: Vec<&String> = r.rows[start].cells.iter().map(|(k, _)| k).collect();
        let end = (start..r.rows.len())
            .find(|&i| {
                let row = &r.rows[i];
                &row.section != section || row.cells.iter().map(|(k, _)| k).ne(keys.iter().copied())
            })
            .unwrap_or(r.rows.len());
        let table: Vec<Vec<String>> =
            r.rows[start..end].iter().map(|row| row.cells.iter().map(|(_, c)| c.render()).collect()).collect();
        let widths: Vec<usize> = (0..keys.len())
            .map(|j| table.iter().map(|t| t[j].len()).chain(std::iter::once(keys[j].len())).max().unwrap_or(0))
            .collect();
        let _ = writeln!(out, "\n[{section}]");
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(keys.iter().map(|k| k.as_str()).collect()));
        for t in &table {
            let _ = writeln!(out, "{}", line(t.iter().map(String::as_str).collect()));
        }
        start = end;
    }
    out
}

/// Inverse of the line format.
pub fn parse_lines(text: &str) -> CliResult<Report> {
    let mut lines = text.lines().filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| CliError::Data("empty report".into()))?;
    let Line::Header { title, meta } =
        serde_json::from_str(first).map_err(|e| CliError::Data(format!("report header: {e}")))?
    else {
        return Err(CliError::Data("report must start with a header line".into()));
    };
    let mut report = Report { title, meta, rows: Vec::new() };
    for (i, l) in lines.enumerate() {
        match serde_json::from_str(l).map_err(|e| CliError::Data(format!("report line {}: {e}", i + 2)))? {
            Line::Row(row) => report.rows.push(row),
            Line::Header { .. } => return Err(CliError::Data(format!("report line {}: second header", i + 2))),
        }
    }
    Ok(report)
}
