//! Row tables and their deterministic CSV and JSON renderings.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Self::Float(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Self::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Self::Int(x as u64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Self::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Self::Text(x.to_owned())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Self::Text(x)
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Self::Float(x) => format_float(*x),
            Self::Int(n) => n.to_string(),
            Self::Bool(b) => b.to_string(),
            Self::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Float(x) if x.is_finite() => json!(x),
            Self::Float(_) => Value::Null,
            Self::Int(n) => json!(n),
            Self::Bool(b) => json!(b),
            Self::Text(s) => json!(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, metadata: Value) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(map)
            })
            .collect();
        let doc = json!({ "metadata": metadata, "columns": self.columns, "records": records });
        let mut text = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format, metadata: Value) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(metadata),
        }
    }
}

/// Header pair `Re <name> [unit]`, `Im <name> [unit]`.
pub fn complex_columns(name: &str, unit: &str) -> [String; 2] {
    [format!("Re {name} [{unit}]"), format!("Im {name} [{unit}]")]
}

pub fn complex_cells(z: Complex64) -> [Cell; 2] {
    [Cell::Float(z.re), Cell::Float(z.im)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_round_trip() {
        for x in [0.1, -2.5, 1e-12, 3.0e8, 123.456, 0.0] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(0.25), "0.25");
        assert_eq!(format_float(1e-12), "1e-12");
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn csv_has_header_and_lf_rows() {
        let mut t = Table::new(["p [p0]", "ok"]);
        t.push(vec![0.5.into(), true.into()]);
        assert_eq!(t.to_csv(), "p [p0],ok\n0.5,true\n");
    }

    #[test]
    fn json_records_keep_column_order() {
        let mut t = Table::new(["b", "a"]);
        t.push(vec![1.0.into(), f64::NAN.into()]);
        let v: Value = serde_json::from_str(&t.to_json(json!({}))).unwrap();
        let rec = v["records"][0].as_object().unwrap();
        assert_eq!(rec.keys().collect::<Vec<_>>(), ["b", "a"]);
        assert!(rec["a"].is_null());
    }
}
