//! Output rendering: every value is an exact integer or a `p/q` rational
//! string, never a float. JSON documents follow the fixed schema
//! `{command, params, provenance: {routes_compared}, values}` and are
//! byte-stable across runs.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Serialize)]
pub struct Document {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub provenance: Provenance,
    pub values: serde_json::Value,
}

#[derive(Serialize)]
pub struct Provenance {
    pub routes_compared: Vec<String>,
}

impl Document {
    pub fn new(command: &str, routes: &[&str]) -> Self {
        Document {
            command: command.to_string(),
            params: BTreeMap::new(),
            provenance: Provenance {
                routes_compared: routes.iter().map(|r| r.to_string()).collect(),
            },
            values: serde_json::Value::Null,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

/// A rectangular table of exact value strings.
pub struct Table {
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn render_pretty(&self) -> String {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(String::len)
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(c, v)| format!("{v:>width$}", width = widths[c]))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    serde_json::Value::Array(
                        r.iter()
                            .map(|v| serde_json::Value::String(v.clone()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// A labeled sequence, rendered as `label,value` CSV lines or
/// `name(label) = value` pretty lines.
pub struct Sequence {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Sequence {
    pub fn render_csv(&self, header: &str) -> String {
        let mut out = vec![header.to_string()];
        out.extend(self.entries.iter().map(|(l, v)| format!("{l},{v}")));
        out.join("\n")
    }

    pub fn render_pretty(&self) -> String {
        self.entries
            .iter()
            .map(|(l, v)| format!("{}({}) = {}", self.name, l, v))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(l, v)| serde_json::json!({ "index": l, "value": v }))
                .collect(),
        )
    }
}
