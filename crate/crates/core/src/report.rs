//! Degree tables `(d, Q_d, 4d+1[, N_d])` in markdown, CSV and JSON.
//!
//! All numbers are rendered as exact decimals; JSON carries them as strings.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::{degree_caveat, Engine};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTableRow {
    pub d: u32,
    pub q_d: BigInt,
    pub n_points: u32,
    pub n_d: BigInt,
    pub caveat: Option<&'static str>,
}

impl DegreeTableRow {
    pub fn new(d: u32, q_d: BigInt) -> Self {
        let n_d = BigInt::from(d).pow(3) * &q_d;
        Self { d, q_d, n_points: 4 * d + 1, n_d, caveat: degree_caveat(d) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!("unknown table format `{other}` (expected md, csv or json)")),
        }
    }
}

/// Rows for `1 ≤ d ≤ max_degree`, solving as needed.
pub fn degree_rows(engine: &mut Engine, max_degree: u32) -> Result<Vec<DegreeTableRow>, Error> {
    (1..=max_degree)
        .map(|d| Ok(DegreeTableRow::new(d, engine.q_number(d)?)))
        .collect()
}

pub fn render(rows: &[DegreeTableRow], format: TableFormat, with_nd: bool) -> String {
    match format {
        TableFormat::Markdown => render_markdown(rows, with_nd),
        TableFormat::Csv => render_csv(rows, with_nd),
        TableFormat::Json => render_json(rows, with_nd),
    }
}

fn render_markdown(rows: &[DegreeTableRow], with_nd: bool) -> String {
    let mut out = String::new();
    if with_nd {
        out.push_str("| d | Q_d | 4d+1 | N_d |\n|---:|---:|---:|---:|\n");
    } else {
        out.push_str("| d | Q_d | 4d+1 |\n|---:|---:|---:|\n");
    }
    for r in rows {
        let mark = if r.caveat.is_some() { "*" } else { "" };
        write!(out, "| {}{mark} | {} | {} |", r.d, r.q_d, r.n_points).unwrap();
        if with_nd {
            write!(out, " {} |", r.n_d).unwrap();
        }
        out.push('\n');
    }
    let notes: Vec<_> = rows.iter().filter_map(|r| r.caveat.map(|c| (r.d, c))).collect();
    if !notes.is_empty() {
        out.push('\n');
        for (d, c) in notes {
            writeln!(out, "\\* d={d}: {c}").unwrap();
        }
    }
    out
}

fn render_csv(rows: &[DegreeTableRow], with_nd: bool) -> String {
    let mut out = String::from(if with_nd { "d,q_d,n_points,n_d,caveat\n" } else { "d,q_d,n_points,caveat\n" });
    for r in rows {
        write!(out, "{},{},{}", r.d, r.q_d, r.n_points).unwrap();
        if with_nd {
            write!(out, ",{}", r.n_d).unwrap();
        }
        let caveat = r.caveat.map(|c| format!("\"{}\"", c.replace('"', "\"\""))).unwrap_or_default();
        writeln!(out, ",{caveat}").unwrap();
    }
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
struct JsonRow {
    d: u32,
    q_d: String,
    n_points: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    n_d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    caveat: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTable {
    rows: Vec<JsonRow>,
}

fn render_json(rows: &[DegreeTableRow], with_nd: bool) -> String {
    let table = JsonTable {
        rows: rows
            .iter()
            .map(|r| JsonRow {
                d: r.d,
                q_d: r.q_d.to_string(),
                n_points: r.n_points,
                n_d: with_nd.then(|| r.n_d.to_string()),
                caveat: r.caveat.map(str::to_string),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&table).expect("serializable");
    s.push('\n');
    s
}

/// Reads back `(d, Q_d, N_d)` from JSON table output.
pub fn parse_json_table(text: &str) -> Result<Vec<(u32, BigInt, Option<BigInt>)>, String> {
    let table: JsonTable = serde_json::from_str(text).map_err(|e| e.to_string())?;
    table
        .rows
        .into_iter()
        .map(|r| {
            let q = r.q_d.parse::<BigInt>().map_err(|e| format!("q_d of row {}: {e}", r.d))?;
            let n = r
                .n_d
                .map(|s| s.parse::<BigInt>().map_err(|e| format!("n_d of row {}: {e}", r.d)))
                .transpose()?;
            Ok((r.d, q, n))
        })
        .collect()
}
