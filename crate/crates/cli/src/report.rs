//! Report envelope and output formatting.
//!
//! Every subcommand emits one `Report`: a `command` tag, the effective
//! `inputs`, the `results` payload, and `diagnostics`. JSON is the
//! machine-readable form; `csv` flattens table-shaped results; `text` is a
//! human-readable rendering of the same content. Identical configuration
//! (including the seed) produces byte-identical JSON.

use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{other}' (json|csv|text)")),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
}

impl Report {
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<(), CliError> {
        let rendered = match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        };
        match out {
            Some(path) => std::fs::write(path, rendered).map_err(|e| {
                CliError::input(format!("cannot write {}: {e}", path.display()), None)
            }),
            None => {
                print!("{rendered}");
                std::io::stdout().flush().ok();
                Ok(())
            }
        }
    }

    /// Tables become CSV rows; scalar results become `key,value` lines.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.results {
            Value::Array(rows) => render_rows_csv(rows, &mut out),
            Value::Object(map) => {
                // One table per array-valued key, scalars as key,value.
                let mut scalars = Vec::new();
                for (k, v) in map {
                    match v {
                        Value::Array(rows) => {
                            out.push_str(&format!("# {k}\n"));
                            render_rows_csv(rows, &mut out);
                        }
                        other => scalars.push((k, other)),
                    }
                }
                for (k, v) in scalars {
                    out.push_str(&format!("{k},{}\n", csv_scalar(v)));
                }
            }
            other => out.push_str(&format!("value,{}\n", csv_scalar(other))),
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str(&format!(
            "inputs: {}\n",
            serde_json::to_string(&self.inputs).unwrap()
        ));
        out.push_str("results:\n");
        render_text_value(&self.results, 2, &mut out);
        if !self.diagnostics.is_null() {
            out.push_str(&format!(
                "diagnostics: {}\n",
                serde_json::to_string(&self.diagnostics).unwrap()
            ));
        }
        out
    }
}

fn render_rows_csv(rows: &[Value], out: &mut String) {
    let Some(Value::Object(first)) = rows.first() else {
        for row in rows {
            out.push_str(&format!("{}\n", csv_scalar(row)));
        }
        return;
    };
    let headers: Vec<&String> = first.keys().collect();
    out.push_str(
        &headers
            .iter()
            .map(|h| h.as_str())
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for row in rows {
        if let Value::Object(map) = row {
            let line: Vec<String> = headers
                .iter()
                .map(|h| map.get(*h).map(csv_scalar).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
}

fn csv_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render_text_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text_value(val, indent + 2, out);
                    }
                    scalar => out.push_str(&format!("{pad}{k}: {scalar}\n")),
                }
            }
        }
        Value::Array(rows) => {
            for row in rows {
                match row {
                    Value::Object(map) => {
                        let line: Vec<String> =
                            map.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        out.push_str(&format!("{pad}- {}\n", line.join(" ")));
                    }
                    scalar => out.push_str(&format!("{pad}- {scalar}\n")),
                }
            }
        }
        scalar => out.push_str(&format!("{pad}{scalar}\n")),
    }
}

/// Error carrying the machine-readable object printed on failure.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub line: Option<usize>,
}

impl CliError {
    pub fn input(message: String, line: Option<usize>) -> Self {
        Self {
            kind: "input",
            message,
            line,
        }
    }

    pub fn usage(message: String) -> Self {
        Self {
            kind: "usage",
            message,
            line: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({ "kind": self.kind, "message": self.message });
        if let Some(line) = self.line {
            obj["line"] = json!(line);
        }
        json!({ "error": obj })
    }
}

impl From<lxdisc::Error> for CliError {
    fn from(e: lxdisc::Error) -> Self {
        Self {
            kind: "compute",
            message: e.to_string(),
            line: None,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "{} (line {line}): {}", self.kind, self.message),
            None => write!(f, "{}: {}", self.kind, self.message),
        }
    }
}
