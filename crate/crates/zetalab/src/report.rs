//! Versioned result documents.
//!
//! Every command emits one `Document`: a schema tag, the command line, the
//! full config snapshot, the constants actually consumed, and the results.
//! A document with no constants block fails validation — no run may hide
//! what it multiplied by.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    pub command: String,
    pub config: Value,
    pub constants: Value,
    pub results: Value,
    pub timing_ms: u64,
}

impl Document {
    pub fn new(
        command: &str,
        config: &RunConfig,
        constants: Value,
        results: Value,
        timing_ms: u64,
    ) -> Result<Self> {
        let doc = Document {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config: serde_json::to_value(config).map_err(|e| Error::Usage(e.to_string()))?,
            constants,
            results,
            timing_ms,
        };
        doc.validate()?;
        Ok(doc)
    }

    /// Schema validation: version match and a non-empty constants block.
    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Usage(format!(
                "unsupported schema version {}, expected {}",
                self.schema, SCHEMA_VERSION
            )));
        }
        match &self.constants {
            Value::Object(m) if !m.is_empty() => Ok(()),
            _ => Err(Error::Usage(
                "document lacks a recorded constants block".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad document: {}", e)))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Flatten the results into CSV rows.
    ///
    /// Arrays of objects become one row per element; a plain object becomes
    /// a single row.  Nested values are flattened with dotted column names.
    /// The constants block is not repeated per row; plotting consumers read
    /// it from the JSON document when they need it.
    pub fn to_csv(&self) -> String {
        let rows: Vec<&Value> = match &self.results {
            Value::Array(items) => items.iter().collect(),
            other => vec![other],
        };
        let mut columns: Vec<String> = Vec::new();
        let mut flat_rows: Vec<Vec<(String, String)>> = Vec::new();
        for row in rows {
            let mut flat = Vec::new();
            flatten("", row, &mut flat);
            for (k, _) in &flat {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
            flat_rows.push(flat);
        }
        let mut out = String::new();
        out.push_str(&columns.join(","));
        out.push('\n');
        for flat in flat_rows {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| {
                    flat.iter()
                        .find(|(k, _)| k == c)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_default()
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{}.{}", prefix, k)
                };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{}.{}", prefix, i), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), format!("\"{}\"", s.replace('"', "\"\"")))),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
