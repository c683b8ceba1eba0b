//! Tabular results with CSV and JSON encodings.
//!
//! CSV is the canonical form: a header row, `\n` line endings, floats in
//! Rust's shortest round-trip notation and absent values as empty cells.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Absent,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Float(v)
        } else {
            Cell::Absent
        }
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Absent, Into::into)
    }
}

impl Cell {
    fn csv(&self, out: &mut String) {
        match self {
            Cell::Int(v) => write!(out, "{v}").unwrap(),
            Cell::Float(v) => write!(out, "{v}").unwrap(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                write!(out, "\"{}\"", s.replace('"', "\"\"")).unwrap()
            }
            Cell::Text(s) => out.push_str(s),
            Cell::Absent => {}
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Absent => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [&'static str],
    rows: Vec<Vec<Value>>,
}

impl ResultTable {
    pub fn new(columns: &[&'static str]) -> Self {
        ResultTable {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    /// Panics when the row width differs from the header; rows are built by
    /// this crate only.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[&'static str] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Values of one column, `None` where the cell is absent or textual.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let j = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[j].as_f64()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                cell.csv(&mut out);
            }
            out.push('\n');
        }
        out
    }

    /// `{"meta": .., "columns": [..], "rows": [[..], ..]}`.
    pub fn to_json(&self, meta: &Value) -> String {
        let table = JsonTable {
            columns: &self.columns,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::json).collect())
                .collect(),
        };
        let mut doc = serde_json::to_value(table).expect("table serializes");
        doc["meta"] = meta.clone();
        let mut s = serde_json::to_string_pretty(&doc).expect("value serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = ResultTable::new(&["a", "b", "c"]);
        t.push(vec![1u64.into(), 0.1.into(), Cell::Absent]);
        t.push(vec![Cell::from("x,y"), f64::NAN.into(), 1e-7.into()]);
        assert_eq!(t.to_csv(), "a,b,c\n1,0.1,\n\"x,y\",,0.0000001\n");
    }

    #[test]
    fn floats_round_trip() {
        let v = 0.1 + 0.2;
        let mut t = ResultTable::new(&["v"]);
        t.push(vec![v.into()]);
        let csv = t.to_csv();
        let parsed: f64 = csv.lines().nth(1).unwrap().parse().unwrap();
        assert_eq!(parsed, v);
    }

    #[test]
    fn json_layout() {
        let mut t = ResultTable::new(&["n", "f"]);
        t.push(vec![3u64.into(), Cell::Absent]);
        let doc: Value = serde_json::from_str(&t.to_json(&json!({"seed": 1}))).unwrap();
        assert_eq!(doc["columns"], json!(["n", "f"]));
        assert_eq!(doc["rows"], json!([[3, null]]));
        assert_eq!(doc["meta"]["seed"], json!(1));
    }

    #[test]
    fn column_access() {
        let mut t = ResultTable::new(&["x"]);
        t.push(vec![2u64.into()]);
        t.push(vec![Cell::Absent]);
        assert_eq!(t.column("x").unwrap(), vec![Some(2.0), None]);
        assert!(t.column("y").is_none());
    }
}
