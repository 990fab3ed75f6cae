use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One invocation's worth of output.
///
/// JSON: `{schema_version, command, inputs, results, diagnostics}`; a
/// tabular command puts its rows under `results.rows`.
/// CSV: header plus one row of inputs and results, or the table rows.
/// Text: `key = value` lines with numbers at 9 significant digits.
#[derive(Debug, Clone, Default)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
    pub rows: Option<Vec<Map<String, Value>>>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut results = self.results.clone();
        if let Some(rows) = &self.rows {
            results.insert(
                "rows".into(),
                Value::Array(rows.iter().cloned().map(Value::Object).collect()),
            );
        }
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": results,
            "diagnostics": self.diagnostics,
        });
        let mut s = v.to_string();
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Map<String, Value>> = match &self.rows {
            Some(rows) => rows.clone(),
            None => {
                let mut row = self.inputs.clone();
                row.extend(self.results.clone());
                vec![row]
            }
        };
        let mut out = String::new();
        if let Some(first) = rows.first() {
            out.push_str(&first.keys().cloned().collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        for row in &rows {
            let cells: Vec<String> = row.values().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let width = self
            .inputs
            .keys()
            .chain(self.results.keys())
            .chain(self.diagnostics.keys())
            .map(String::len)
            .max()
            .unwrap_or(0);
        for (title, map) in [
            ("inputs", &self.inputs),
            ("results", &self.results),
            ("diagnostics", &self.diagnostics),
        ] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(out, "  {title}:");
            for (k, v) in map {
                let _ = writeln!(out, "    {k:<width$} = {}", text_cell(v));
            }
        }
        if let Some(rows) = &self.rows {
            if let Some(first) = rows.first() {
                let header: Vec<String> = first.keys().map(|k| format!("{k:>16}")).collect();
                let _ = writeln!(out, "  {}", header.join(" "));
            }
            for row in rows {
                let cells: Vec<String> = row
                    .values()
                    .map(|v| format!("{:>16}", text_cell(v)))
                    .collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_sig9(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Nine significant digits, fixed notation where it stays readable.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..9).contains(&magnitude) {
        let decimals = (8 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}
