//! Row emission: CSV with a header row and a footer comment, or JSON with
//! the same rows as objects. Numeric cells print with full round-trip
//! precision, so identical runs emit identical bytes.

use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub enum Cell {
    UInt(u64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::UInt(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// `key=value` pairs recorded in the footer comment and JSON meta.
    pub params: String,
}

impl Table {
    pub fn render(&self, format: Format, seed: u64) -> String {
        match format {
            Format::Csv => self.render_csv(seed),
            Format::Json => self.render_json(seed),
        }
    }

    fn render_csv(&self, seed: u64) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            debug_assert!(fields.iter().all(|f| !f.contains(',')));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out.push_str(&format!(
            "# seed={seed} version={} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.params
        ));
        out
    }

    fn render_json(&self, seed: u64) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| (c.to_string(), cell.json()))
                        .collect(),
                )
            })
            .collect();
        let doc = json!({
            "rows": rows,
            "meta": {
                "seed": seed,
                "version": env!("CARGO_PKG_VERSION"),
                "params": self.params,
            },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
