//! Persistent JSON-lines cache of evaluated MZVs.
//!
//! Each line is `{"index": "(1,2)", "precision": 60, "value": "...", "err": 1.5}`
//! where `value` is the exact decimal expansion of the dyadic mantissa, so a
//! cache hit reproduces the computed mantissa bit for bit.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::Index;
use crate::real::BigReal;

pub const CACHE_ENV: &str = "MZV_CACHE_PATH";

#[derive(Serialize, Deserialize)]
struct Entry {
    index: String,
    precision: u32,
    value: String,
    err: f64,
}

pub struct ValueCache {
    path: PathBuf,
    entries: RwLock<HashMap<(Index, u32), BigReal>>,
    writer: Mutex<()>,
}

impl ValueCache {
    /// Opens (or creates on first write) the cache at `path`.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::Cache(e.to_string()))?;
            for (lineno, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| Error::Cache(e.to_string()))?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: Entry = serde_json::from_str(&line)
                    .map_err(|e| Error::Cache(format!("line {}: {e}", lineno + 1)))?;
                let index: Index = entry.index.parse()?;
                let value = BigReal::from_exact_decimal(&entry.value, entry.precision, entry.err)?;
                entries.insert((index, entry.precision), value);
            }
        }
        Ok(ValueCache {
            path,
            entries: RwLock::new(entries),
            writer: Mutex::new(()),
        })
    }

    /// Opens the cache named by `MZV_CACHE_PATH`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Self::open(p).map(Some),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, k: &Index, digits: u32) -> Option<BigReal> {
        self.entries
            .read()
            .expect("cache lock")
            .get(&(k.clone(), digits))
            .cloned()
    }

    /// Records a value; existing entries are kept and nothing is rewritten.
    pub fn insert(&self, k: &Index, value: &BigReal) -> Result<()> {
        let key = (k.clone(), value.digits());
        let _guard = self.writer.lock().expect("cache writer");
        if self.entries.read().expect("cache lock").contains_key(&key) {
            return Ok(());
        }
        let entry = Entry {
            index: k.to_string(),
            precision: value.digits(),
            value: value.to_exact_decimal(),
            err: value.err_ulps(),
        };
        let mut line = serde_json::to_string(&entry).map_err(|e| Error::Cache(e.to_string()))?;
        line.push('\n');
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::Cache(e.to_string()))?;
        file.write_all(line.as_bytes())
            .map_err(|e| Error::Cache(e.to_string()))?;
        self.entries
            .write()
            .expect("cache lock")
            .insert(key, value.clone());
        Ok(())
    }
}
