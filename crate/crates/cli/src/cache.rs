//! On-disk cache of class tables.
//!
//! One JSON file per `(law, q, m)`, named by a SHA-256 of the canonical law
//! print, `q`, `m` and the schema version. Each file records the schema
//! version and a checksum of its payload; files with another version or a
//! bad checksum are ignored and recomputed.

use std::path::{Path, PathBuf};

use asai_core::points::{ClassTable, TableKey};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bump whenever the layout of [`ClassTable`] or of the file changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u32,
    pub misses: u32,
    pub rejected: u32,
    pub writes: u32,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    checksum: String,
    /// Serialized [`ClassTable`].
    payload: String,
}

#[derive(Debug)]
pub struct ClassCache {
    dir: PathBuf,
    stats: CacheStats,
    warnings: Vec<String>,
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

pub fn cache_key(key: &TableKey) -> String {
    sha256_hex(format!("schema {SCHEMA_VERSION}\nq {}\nm {}\n{}", key.q, key.m, key.law).as_bytes())
}

impl ClassCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: dir.into(),
            stats: CacheStats::default(),
            warnings: Vec::new(),
        }
    }

    pub fn path_for(&self, key: &TableKey) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(key)))
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    /// Reasons files were ignored, in the order encountered.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Loads the table for `key`, or `None` if absent or unusable.
    pub fn load(&mut self, key: &TableKey, order: usize) -> Option<ClassTable> {
        let path = self.path_for(key);
        let Ok(bytes) = std::fs::read(&path) else {
            self.stats.misses += 1;
            return None;
        };
        match decode(&bytes, key, order) {
            Ok(t) => {
                self.stats.hits += 1;
                Some(t)
            }
            Err(why) => {
                self.stats.rejected += 1;
                self.warnings.push(format!("ignoring cache file {}: {why}", path.display()));
                None
            }
        }
    }

    pub fn store(&mut self, table: &ClassTable) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_string(table).expect("class tables serialize");
        let file = CacheFile {
            schema: SCHEMA_VERSION,
            checksum: sha256_hex(payload.as_bytes()),
            payload,
        };
        let path = self.path_for(table.key());
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&file).expect("cache files serialize"))?;
        std::fs::rename(&tmp, &path)?;
        self.stats.writes += 1;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

fn decode(bytes: &[u8], key: &TableKey, order: usize) -> Result<ClassTable, String> {
    let file: CacheFile = serde_json::from_slice(bytes).map_err(|e| format!("unreadable ({e})"))?;
    if file.schema != SCHEMA_VERSION {
        return Err(format!("schema version {} (expected {SCHEMA_VERSION})", file.schema));
    }
    if sha256_hex(file.payload.as_bytes()) != file.checksum {
        return Err("checksum mismatch".into());
    }
    let table: ClassTable = serde_json::from_str(&file.payload).map_err(|e| format!("bad payload ({e})"))?;
    if table.key() != key {
        return Err("key mismatch".into());
    }
    if table.group_order() != order || !table.is_consistent() {
        return Err("table is not a partition of the group".into());
    }
    Ok(table)
}
