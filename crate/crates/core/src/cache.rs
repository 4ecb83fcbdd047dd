//! Content-addressed on-disk cache of canonical result texts.
//!
//! An entry lives at `<dir>/<k[0..2]>/<k>` and holds a checksum line
//! followed by the payload. Writes go to a temporary file that is renamed
//! into place, so concurrent writers never expose partial entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use log::{debug, warn};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "COHASTAB_CACHE_DIR";

const HEADER: &str = "sha256:";

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Hex SHA-256 of the length-prefixed parts, so `["ab", "c"]` and `["a", "bc"]` differ.
pub fn request_key(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update((p.len() as u64).to_le_bytes());
        hasher.update(p.as_bytes());
    }
    hex::encode(hasher.finalize())
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: Some(dir.into()) }
    }

    /// The environment variable wins over `dir`; no directory at all disables caching.
    pub fn resolve(dir: Option<&Path>, disabled: bool) -> Cache {
        if disabled {
            return Cache::disabled();
        }
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(env) if !env.is_empty() => Cache::at(env),
            _ => dir.map_or_else(Cache::disabled, Cache::at),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let shard = key.get(..2).unwrap_or("__");
        Some(dir.join(shard).join(key))
    }

    /// A missing, unreadable or corrupted entry is a miss.
    pub fn get(&self, key: &str) -> Option<String> {
        let path = self.path(key)?;
        let raw = match fs::read_to_string(&path) {
            Ok(raw) => raw,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                warn!("cache entry {} unreadable: {e}", path.display());
                return None;
            }
        };
        let parsed = raw
            .split_once('\n')
            .and_then(|(head, payload)| Some((head.strip_prefix(HEADER)?, payload)));
        match parsed {
            Some((sum, payload)) if sum == checksum(payload) => {
                debug!("cache hit {key}");
                Some(payload.to_string())
            }
            _ => {
                warn!("cache entry {} is corrupted; recomputing", path.display());
                None
            }
        }
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<()> {
        let Some(path) = self.path(key) else {
            return Ok(());
        };
        let parent = path.parent().expect("entry has a shard directory");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut file = fs::File::create(&tmp)?;
        write!(file, "{HEADER}{}\n{payload}", checksum(payload))?;
        file.sync_all()?;
        drop(file);
        if let Err(e) = fs::rename(&tmp, &path) {
            let _ = fs::remove_file(&tmp);
            return Err(e.into());
        }
        debug!("cache store {key}");
        Ok(())
    }

    /// Returns the cached payload or computes, stores and returns it.
    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Result<String>) -> Result<String> {
        if let Some(hit) = self.get(key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }
}
