//! On-disk cache of lattice sets, one JSON file per instantiated system.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use pbw_core::enumeration::LatticeSetJson;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Bumped whenever enumeration output could change.
pub const VERSION_TAG: &str = concat!("pbw-cache-1/", env!("CARGO_PKG_VERSION"));

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Caching is silently disabled when the directory cannot be created.
    pub fn new(dir: Option<PathBuf>) -> Self {
        let dir = dir.filter(|d| fs::create_dir_all(d).is_ok());
        Cache { dir }
    }

    pub fn key<T: Serialize>(parts: &T) -> String {
        let mut h = Sha256::new();
        h.update(VERSION_TAG.as_bytes());
        h.update(serde_json::to_vec(parts).expect("serializable key"));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<LatticeSetJson> {
        let bytes = fs::read(self.path(key)?).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put(&self, key: &str, value: &LatticeSetJson) -> Result<()> {
        if let Some(path) = self.path(key) {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, serde_json::to_vec(value)?).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, &path)?;
        }
        Ok(())
    }
}
