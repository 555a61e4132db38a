//! Content-addressed result cache.
//!
//! An entry is keyed by the SHA-256 of the operation name, its canonical
//! parameters and a code-version tag. The stored file repeats the key and
//! carries a digest of its payload; anything that fails either check is
//! treated as a miss and overwritten.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped whenever a cached payload's meaning changes.
pub const CACHE_TAG: &str = concat!("cwilf-", env!("CARGO_PKG_VERSION"), "-r1");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub ok: bool,
    pub payload: Value,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    digest: String,
    outcome: Outcome,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn key(op: &str, params: &Value) -> String {
    let material = serde_json::json!({ "op": op, "params": params, "tag": CACHE_TAG });
    sha256_hex(material.to_string().as_bytes())
}

fn digest(outcome: &Outcome) -> String {
    sha256_hex(serde_json::to_string(outcome).expect("serializable").as_bytes())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored outcome, if present and intact.
    pub fn load(&self, key: &str) -> Option<Outcome> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.digest == digest(&entry.outcome)).then_some(entry.outcome)
    }

    /// Best effort: a cache that cannot be written only costs recomputation.
    pub fn store(&self, key: &str, outcome: &Outcome) {
        let entry = Entry {
            key: key.to_string(),
            digest: digest(outcome),
            outcome: outcome.clone(),
        };
        let _ = fs::create_dir_all(&self.dir).and_then(|_| {
            let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
            fs::write(&tmp, serde_json::to_vec(&entry).expect("serializable"))?;
            fs::rename(&tmp, self.path(key))
        });
    }
}
