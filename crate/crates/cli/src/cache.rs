//! Content-addressed report store.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::report::{Report, VERSION};

pub struct Cache {
    dir: PathBuf,
}

/// SHA-256 over the tool version, the config echo and the contents of
/// every input file.
pub fn cache_key(cfg: &ExperimentConfig) -> Result<String> {
    let mut h = Sha256::new();
    h.update(b"atomlab\0");
    h.update(VERSION.as_bytes());
    h.update(b"\0");
    h.update(serde_json::to_string(&cfg.params())?.as_bytes());
    for path in cfg.input_files() {
        let bytes = fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
        h.update(b"\0file\0");
        h.update(path.to_string_lossy().as_bytes());
        h.update(b"\0");
        h.update(Sha256::digest(&bytes));
    }
    Ok(hex::encode(h.finalize()))
}

impl Cache {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored report, or `None` when missing or unreadable. Unreadable
    /// entries are reported on stderr.
    pub fn lookup(&self, key: &str) -> Option<Report> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Report>(&text) {
            Ok(r) => Some(r),
            Err(e) => {
                eprintln!("warning: ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &str, report: &Report) -> Result<()> {
        let mut clean = report.clone();
        clean.elapsed_ms = None;
        clean.verified = None;
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, clean.to_json())?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
