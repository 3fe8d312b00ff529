//! Versioned JSON envelope shared by every report.

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

pub const SCHEMA: &str = "lelong-kit/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a report was computed from.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Provenance {
    /// Input name to source text, in insertion order.
    pub inputs: Vec<(String, String)>,
    pub vars: Vec<String>,
    pub order: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn input(mut self, name: &str, text: &str) -> Self {
        self.inputs.push((name.to_string(), text.to_string()));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

fn provenance_value(p: &Provenance) -> Value {
    let inputs: serde_json::Map<String, Value> =
        p.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    serde_json::json!({
        "inputs": inputs,
        "vars": p.vars,
        "order": p.order,
        "seed": p.seed,
        "version": VERSION,
    })
}

fn envelope(command: &str, provenance: &Provenance, status: &str, key: &str, body: Value) -> String {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    map.insert("command".into(), Value::String(command.into()));
    map.insert("status".into(), Value::String(status.into()));
    map.insert("provenance".into(), provenance_value(provenance));
    map.insert(key.into(), body);
    let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
    out.push('\n');
    out
}

/// Pretty-printed success envelope around `result`.
pub fn emit_report<T: Serialize>(command: &str, provenance: &Provenance, result: &T) -> String {
    let body = serde_json::to_value(result).expect("report types serialize");
    envelope(command, provenance, "ok", "result", body)
}

/// Pretty-printed error envelope.
pub fn emit_error(command: &str, provenance: &Provenance, err: &Error) -> String {
    let body = ErrorBody { kind: err.kind(), message: err.to_string(), exit_code: err.exit_code() };
    envelope(command, provenance, "error", "error", serde_json::to_value(body).expect("serializable"))
}
