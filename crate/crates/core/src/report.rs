//! Flat tabular payloads rendered as CSV or JSON.
//!
//! Both renderers consume the same [`Table`], so a CSV file and a JSON
//! document produced for one run carry the same numbers. Floats are
//! rounded to [`SIG_DIGITS`] significant digits before rendering.

use std::io::{self, Write};

use serde_json::{Map, Value};

pub const SIG_DIGITS: usize = 10;

pub const SPECTRUM_COLUMNS: [&str; 12] = ["family", "W", "L", "R", "strategy", "w", "N", "index", "re", "im", "class", "verdict"];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_owned())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Rounds to `SIG_DIGITS` significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text that parses back to `round_sig(x)`.
pub fn format_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Num(x) => format_num(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Empty => String::new(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

fn json_value(cell: &Cell) -> Value {
    match cell {
        Cell::Num(x) => serde_json::Number::from_f64(round_sig(*x)).map_or(Value::Null, Value::Number),
        Cell::Int(i) => Value::from(*i),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(s) => Value::String(s.clone()),
        Cell::Empty => Value::Null,
    }
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(csv_field).collect();
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    /// Rows as JSON objects keyed by column name.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (col, cell) in self.columns.iter().zip(row) {
                        obj.insert((*col).to_owned(), json_value(cell));
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Run metadata kept apart from the data payload.
pub fn meta(command: &str) -> Value {
    serde_json::json!({
        "program": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
    })
}

pub fn write_json<W: Write + ?Sized>(out: &mut W, command: &str, data: Value) -> io::Result<()> {
    let doc = serde_json::json!({ "meta": meta(command), "data": data });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}
