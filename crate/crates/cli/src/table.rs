//! Result tables and their CSV/JSON output.

use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Flag(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) if v.is_nan() => "NaN".into(),
            Cell::Num(v) => format!("{v:.12e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(b) => u8::from(*b).to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // NaN has no JSON form; serde_json writes null.
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    /// Numeric values of one column, `None` for non-numeric cells.
    pub fn values(&self, name: &str) -> Vec<Option<f64>> {
        let k = self.column(name).expect("unknown column");
        self.rows.iter().map(|r| r[k].as_f64()).collect()
    }

    /// `# `-prefixed comment lines, then the header, then one line per row.
    pub fn write_csv<W: Write>(&self, w: W, comments: &[String]) -> io::Result<()> {
        let mut w = w;
        for c in comments {
            writeln!(w, "# {c}")?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.flush()
    }

    pub fn write_json<W: Write>(&self, w: W, comments: &[String]) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(m)
            })
            .collect();
        let doc = serde_json::json!({ "meta": comments, "columns": self.columns, "rows": rows });
        serde_json::to_writer_pretty(w, &doc).map_err(io::Error::other)
    }
}
