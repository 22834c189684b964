//! JSON-lines caches with a versioned header line.
//!
//! Every persisted table in the crate uses the same shape: the first line is
//! a small JSON header identifying format, version, and the parameter the
//! table was built for; each following line is one JSON record. A header that
//! does not match what the reader expects is a hard `CacheFormat` error, so a
//! stale or foreign file never silently feeds wrong data downstream.

use crate::error::{Error, Result};
use serde::{de::DeserializeOwned, Serialize};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

/// Environment variable naming the cache directory used by the CLI.
pub const CACHE_DIR_ENV: &str = "CUBIC_LMOMENT_CACHE_DIR";

/// A directory of JSONL cache files.
#[derive(Clone, Debug)]
pub struct JsonlStore {
    dir: PathBuf,
}

impl JsonlStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Store rooted at `$CUBIC_LMOMENT_CACHE_DIR`, when the variable is set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(|d| Self::new(PathBuf::from(d)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Reads `name` if present. Returns `Ok(None)` when the file does not
    /// exist, `Err(CacheFormat)` when it exists but the header or any row
    /// fails to parse or the header disagrees with `expected`.
    pub fn load<H, R>(&self, name: &str, expected: &H) -> Result<Option<Vec<R>>>
    where
        H: Serialize,
        R: DeserializeOwned,
    {
        let path = self.path(name);
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut lines = BufReader::new(file).lines();
        let header_line = lines
            .next()
            .ok_or_else(|| Error::CacheFormat(format!("{name}: empty cache file")))??;
        let got: serde_json::Value = serde_json::from_str(&header_line)
            .map_err(|e| Error::CacheFormat(format!("{name}: bad header: {e}")))?;
        let want = serde_json::to_value(expected)
            .map_err(|e| Error::CacheFormat(format!("{name}: header encode: {e}")))?;
        if got != want {
            return Err(Error::CacheFormat(format!(
                "{name}: header mismatch: found {got}, expected {want}"
            )));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: R = serde_json::from_str(&line)
                .map_err(|e| Error::CacheFormat(format!("{name}: row {}: {e}", i + 2)))?;
            rows.push(row);
        }
        Ok(Some(rows))
    }

    /// Writes header and rows to `name` via a temporary file and rename, so
    /// concurrent readers never observe a half-written cache.
    pub fn store<H, R>(&self, name: &str, header: &H, rows: &[R]) -> Result<()>
    where
        H: Serialize,
        R: Serialize,
    {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.path(&format!(".{name}.tmp-{}", std::process::id()));
        {
            let mut w = std::io::BufWriter::new(fs::File::create(&tmp)?);
            serde_json::to_writer(&mut w, header)
                .map_err(|e| Error::CacheFormat(format!("{name}: header encode: {e}")))?;
            w.write_all(b"\n")?;
            for row in rows {
                serde_json::to_writer(&mut w, row)
                    .map_err(|e| Error::CacheFormat(format!("{name}: row encode: {e}")))?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, self.path(name))?;
        Ok(())
    }
}
