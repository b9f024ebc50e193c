use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Default numerical tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Environment variable overriding [`DEFAULT_TOL`].
pub const TOL_ENV: &str = "CAVITY_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TolSource {
    Default,
    Environment,
    Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerance {
    pub tol: f64,
    pub source: TolSource,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputChecksum {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

impl OutputChecksum {
    pub fn of(name: &str, data: &[u8]) -> Self {
        Self { name: name.into(), bytes: data.len(), sha256: sha256_hex(data) }
    }
}

/// Provenance record of one run. Contains no timestamps, so equal inputs give equal manifests.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub version: String,
    pub core_version: String,
    pub tolerances: Tolerance,
    pub outputs: Vec<OutputChecksum>,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}
