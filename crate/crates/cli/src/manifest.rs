use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Versions {
    pub lrows: &'static str,
    pub laurent_rows: &'static str,
}

/// Provenance of one invocation.
#[derive(Serialize)]
pub struct RunManifest {
    pub schema: &'static str,
    pub command: String,
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub versions: Versions,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub wall_time: String,
}

pub fn digest(path: &Path) -> std::io::Result<FileDigest> {
    let bytes = std::fs::read(path)?;
    Ok(FileDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>, inputs: &[&Path], outputs: &[&Path], elapsed: Duration) -> std::io::Result<Self> {
        Ok(RunManifest {
            schema: "v1/RunManifest",
            command: command.to_string(),
            args: std::env::args().skip(1).collect(),
            seed,
            versions: Versions {
                lrows: env!("CARGO_PKG_VERSION"),
                laurent_rows: laurent_rows::VERSION,
            },
            inputs: inputs.iter().map(|p| digest(p)).collect::<std::io::Result<_>>()?,
            outputs: outputs.iter().map(|p| digest(p)).collect::<std::io::Result<_>>()?,
            wall_time: laurent_rows::gb::format_seconds(elapsed),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// `<out>.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}
