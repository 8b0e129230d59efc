use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sharpflat_core::padic::{Ring, RingDescriptor, RingKind};

use crate::error::{CliError, CliResult};

/// The effective parameters of one run, embedded in every output.
#[derive(Serialize, Clone, Debug, Default)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub subcommand: String,
    pub p: u32,
    pub ap: i64,
    pub prec_p: Option<i64>,
    pub prec_x: Option<usize>,
    pub prec_y: Option<usize>,
    pub level: Option<u32>,
    pub nmax: Option<u32>,
    pub mmax: Option<u32>,
    pub seed: Option<u64>,
    pub inputs: Vec<String>,
    pub out: Option<String>,
    pub verify: bool,
    pub flags: BTreeMap<String, String>,
}

impl RunConfig {
    /// Checks `p` and `a_p` against the ring invariants.
    pub fn validate(&self) -> CliResult<()> {
        RingDescriptor::new(self.p, self.ap, RingKind::Base, self.prec_p.unwrap_or(1).max(1))
            .map_err(|e| CliError::malformed(e.to_string()))?;
        if let Some(n) = self.prec_p {
            if n < 1 {
                return Err(CliError::malformed(format!("--prec-p {n} must be positive")));
            }
        }
        for (name, cap) in [("--prec-x", self.prec_x), ("--prec-y", self.prec_y)] {
            if cap == Some(0) {
                return Err(CliError::malformed(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn prec(&self) -> i64 {
        self.prec_p.expect("defaulted")
    }

    pub fn cap(&self) -> usize {
        self.prec_x.expect("defaulted")
    }

    pub fn caps(&self) -> (usize, usize) {
        (self.cap(), self.prec_y.expect("defaulted"))
    }

    pub fn base_ring(&self, prec: i64) -> CliResult<Ring> {
        Ok(RingDescriptor::new(self.p, self.ap, RingKind::Base, prec)?)
    }

    pub fn input(&self, k: usize) -> CliResult<&str> {
        self.inputs
            .get(k)
            .map(String::as_str)
            .ok_or_else(|| CliError::malformed(format!("{} needs an --in file", self.subcommand)))
    }
}

/// `{"config", "result", "digest"}` with the digest the SHA-256 of the
/// compact serialization of `{"config", "result"}`.
pub fn envelope(config: &RunConfig, result: Value) -> Value {
    let body = json!({ "config": config, "result": result });
    let bytes = serde_json::to_vec(&body).expect("serializable");
    let digest = hex::encode(Sha256::digest(&bytes));
    let mut out = body;
    out["digest"] = Value::String(format!("sha256:{digest}"));
    out
}

pub fn read_json(path: &str) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("{path}: {e}")))
}

/// Reads a file, unwrapping the `result` of an output envelope.
pub fn read_payload<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    let v = read_json(path)?;
    let v = match v {
        Value::Object(mut m) if m.contains_key("result") && m.contains_key("config") => m.remove("result").expect("checked"),
        other => other,
    };
    serde_json::from_value(v).map_err(|e| CliError::malformed(format!("{path}: {e}")))
}

/// Writes to `--out`, or to standard output when it is absent.
pub fn write_output(out: Option<&Path>, doc: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn path_string(p: &Path) -> String {
    p.to_string_lossy().into_owned()
}

pub fn out_path(c: &RunConfig) -> Option<PathBuf> {
    c.out.as_ref().map(PathBuf::from)
}
