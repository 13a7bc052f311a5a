//! JSON envelope shared by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// JSON Schema of [`ResultDocument`], shipped with the crate.
pub const SCHEMA: &str = include_str!("../schema/result-document.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    pub command: String,
    /// The validated configuration that produced the payload.
    pub parameters: Value,
    pub payload: Value,
    pub provenance: Provenance,
}

impl ResultDocument {
    pub fn new(command: &str, parameters: &impl Serialize, payload: Value, seed: Option<u64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            parameters: serde_json::to_value(parameters).expect("configs serialize"),
            payload,
            provenance: Provenance { tool_version: env!("CARGO_PKG_VERSION").into(), seed },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// Checks a parsed document against the envelope in [`SCHEMA`]: required
/// keys, their types, and no unknown top-level keys.
pub fn validate_envelope(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("document is not an object")?;
    const KEYS: [&str; 5] = ["schema_version", "command", "parameters", "payload", "provenance"];
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(format!("unknown key `{k}`"));
    }
    for k in KEYS {
        if !obj.contains_key(k) {
            return Err(format!("missing key `{k}`"));
        }
    }
    if obj["schema_version"] != SCHEMA_VERSION {
        return Err("schema_version must be \"1\"".into());
    }
    let commands = ["matrix", "verify", "search", "pattern", "beamsim", "bench"];
    if !obj["command"].as_str().is_some_and(|c| commands.contains(&c)) {
        return Err("unknown command".into());
    }
    if !obj["parameters"].is_object() || !obj["payload"].is_object() {
        return Err("parameters and payload must be objects".into());
    }
    let prov = obj["provenance"].as_object().ok_or("provenance must be an object")?;
    if !prov.get("tool_version").is_some_and(Value::is_string) {
        return Err("provenance.tool_version must be a string".into());
    }
    if !prov.get("seed").is_some_and(|s| s.is_null() || s.is_u64()) {
        return Err("provenance.seed must be an unsigned integer or null".into());
    }
    Ok(())
}
