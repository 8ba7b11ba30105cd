use std::io::{self, Write};

use num_rational::BigRational;
use permgrowth::numeric::format_decimal;
use permgrowth::series::GrowthRate;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Tabular part of a report (check results, CSV rows).
#[derive(Debug, Clone, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub passed: bool,
    pub timing: Timing,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub millis: u128,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            inputs: Map::new(),
            outputs: Map::new(),
            table: None,
            passed: true,
            timing: Timing { millis: 0 },
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) {
        self.outputs.insert(key.to_string(), value.into());
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.emit_csv(out),
            Format::Text => self.emit_text(out),
        }
    }

    fn emit_csv(&self, out: &mut impl Write) -> io::Result<()> {
        if let Some(table) = &self.table {
            writeln!(out, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
            return Ok(());
        }
        writeln!(out, "key,value")?;
        let mut lines = Vec::new();
        flatten("", &Value::Object(self.outputs.clone()), &mut lines);
        for (k, v) in lines {
            writeln!(out, "{},{}", csv_cell(&k), csv_cell(&v))?;
        }
        Ok(())
    }

    fn emit_text(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{}", self.command)?;
        let mut lines = Vec::new();
        flatten("", &Value::Object(self.outputs.clone()), &mut lines);
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &lines {
            writeln!(out, "  {k:<width$}  {v}")?;
        }
        if let Some(table) = &self.table {
            let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
            for row in &table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                format!("  {}", padded.join("  ")).trim_end().to_string()
            };
            writeln!(out, "{}", line(&table.columns))?;
            for row in &table.rows {
                writeln!(out, "{}", line(row))?;
            }
        }
        writeln!(out, "{}", if self.passed { "ok" } else { "FAILED" })
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Dotted-key rendering of nested JSON; rationals collapse to `num/den`.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) if map.len() == 2 && map.contains_key("num") && map.contains_key("den") => {
            let (n, d) = (map["num"].as_str().unwrap_or(""), map["den"].as_str().unwrap_or(""));
            out.push((prefix.to_string(), if d == "1" { n.to_string() } else { format!("{n}/{d}") }));
        }
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), parts.join(",")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn rational(x: &BigRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

/// Decimal rendering of the bracket midpoint, the bracket width, and both
/// exact ends.
pub fn rate(g: &GrowthRate, precision: usize) -> Value {
    json!({
        "decimal": format_decimal(&g.midpoint(), precision),
        "width": format_decimal(&g.width(), 2),
        "lo": rational(&g.lo),
        "hi": rational(&g.hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening() {
        let v = json!({"a": {"b": 1, "c": [1, 2]}, "q": {"num": "3", "den": "4"}});
        let mut lines = Vec::new();
        flatten("", &v, &mut lines);
        assert_eq!(
            lines,
            vec![
                ("a.b".to_string(), "1".to_string()),
                ("a.c".to_string(), "1,2".to_string()),
                ("q".to_string(), "3/4".to_string()),
            ]
        );
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_cell("1,2"), "\"1,2\"");
        assert_eq!(csv_cell("plain"), "plain");
    }
}
