//! Output documents: the run manifest embedded in every report and the
//! named pass/fail checks the verifiers emit.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Keys that differ between otherwise identical runs.
pub const VOLATILE_KEYS: [&str; 2] = ["timestamp", "elapsed_ms"];

/// One named check with an optional witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            holds,
            witness,
        }
    }
}

/// Provenance of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: String,
    pub timestamp: String,
    /// File path -> hex SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        RunManifest {
            command: command.to_string(),
            args,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            inputs: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.insert(path.to_string(), sha256_hex(bytes));
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Removes [`VOLATILE_KEYS`] at any depth.
pub fn strip_volatile(value: &mut Value) {
    match value {
        Value::Object(map) => {
            for key in VOLATILE_KEYS {
                map.remove(key);
            }
            map.values_mut().for_each(strip_volatile);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}
