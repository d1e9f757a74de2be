//! Table output in plain, CSV, JSON and Markdown form.
//!
//! CSV and JSON are machine formats: UTF-8, LF line endings, no timings, and
//! `parse_*` followed by `render` reproduces the input byte for byte.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
    Markdown,
}

/// One `(a_2, ..., a_{2n+1}) -> N_d(a)` row. Counts are decimal strings so
/// that consumers limited to 64-bit integers never truncate them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub conditions: Vec<u32>,
    pub count: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Layout(String),
}

fn tuple(conditions: &[u32]) -> String {
    let parts: Vec<String> = conditions.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn joined(conditions: &[u32]) -> String {
    let parts: Vec<String> = conditions.iter().map(u32::to_string).collect();
    parts.join(",")
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["conditions", "count"]).expect("in-memory write");
    for row in rows {
        w.write_record([joined(&row.conditions), row.count.clone()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn parse_csv(text: &str) -> Result<Vec<Row>, ParseError> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["conditions", "count"] {
        return Err(ParseError::Layout(format!("unexpected header {headers:?}")));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let conditions = record[0]
            .split(',')
            .map(|s| s.parse::<u32>().map_err(|_| ParseError::Layout(format!("bad condition {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(Row { conditions, count: record[1].to_string() });
    }
    Ok(rows)
}

pub fn render_json(rows: &[Row]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> Result<Vec<Row>, ParseError> {
    Ok(serde_json::from_str(text)?)
}

/// `N_d(a_2,...,a_{2n+1})` header label.
fn count_label(d: u32, width: usize) -> (String, String) {
    let names: Vec<String> = (2..2 + width).map(|c| format!("a_{c}")).collect();
    let args = names.join(",");
    (format!("({args})"), format!("N_{d}({args})"))
}

pub fn render_markdown(d: u32, rows: &[Row]) -> String {
    let width = rows.first().map_or(2, |r| r.conditions.len());
    let (spec_head, count_head) = count_label(d, width);
    let mut out = String::new();
    writeln!(out, "| d | {spec_head} | {count_head} |").unwrap();
    out.push_str("|:-:|:-:|--:|\n");
    for (i, row) in rows.iter().enumerate() {
        let d_cell = if i == 0 { d.to_string() } else { String::new() };
        writeln!(out, "| {d_cell} | {} | {} |", tuple(&row.conditions), row.count).unwrap();
    }
    out
}

pub fn render_plain(rows: &[Row]) -> String {
    let specs: Vec<String> = rows.iter().map(|r| tuple(&r.conditions)).collect();
    let w = specs.iter().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (spec, row) in specs.iter().zip(rows) {
        writeln!(out, "{spec:<w$}  {}", row.count).unwrap();
    }
    out
}

pub fn render(format: Format, d: u32, rows: &[Row]) -> String {
    match format {
        Format::Plain => render_plain(rows),
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
        Format::Markdown => render_markdown(d, rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<Row> {
        vec![
            Row { conditions: vec![3, 0], count: "2".into() },
            Row { conditions: vec![1, 1], count: "1".into() },
        ]
    }

    #[test]
    fn csv_layout() {
        assert_eq!(render_csv(&rows()), "conditions,count\n\"3,0\",2\n\"1,1\",1\n");
        assert_eq!(parse_csv(&render_csv(&rows())).unwrap(), rows());
    }

    #[test]
    fn json_layout() {
        let text = render_json(&rows());
        assert!(text.contains("\"count\": \"2\""));
        assert!(!text.contains('\r'));
        assert_eq!(parse_json(&text).unwrap(), rows());
        assert_eq!(render_json(&parse_json(&text).unwrap()), text);
    }

    #[test]
    fn markdown_layout() {
        let md = render_markdown(1, &rows());
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines[0], "| d | (a_2,a_3) | N_1(a_2,a_3) |");
        assert_eq!(lines[2], "| 1 | (3,0) | 2 |");
        assert_eq!(lines[3], "|  | (1,1) | 1 |");
    }

    #[test]
    fn csv_rejects_wrong_header() {
        assert!(parse_csv("spec,count\n\"3,0\",2\n").is_err());
        assert!(parse_csv("conditions,count\n\"3,x\",2\n").is_err());
    }
}
