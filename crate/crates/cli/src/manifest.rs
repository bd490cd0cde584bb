//! Run manifests and atomic output files.
//!
//! Every command writes a line-oriented `key = value` manifest echoing the
//! configuration, the tool version, wall time, and an FNV-1a checksum per
//! output file, so reruns with identical configs are byte-checkable.

use crate::config::Config;
use anyhow::{Context, Result};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Write a file atomically (temp file + rename in the same directory).
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("renaming {} into place", tmp.display()))?;
    Ok(())
}

/// Lossless decimal formatting for CSV payloads (17 significant digits).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Accumulates manifest entries for one run.
pub struct Manifest {
    entries: BTreeMap<String, String>,
    dir: PathBuf,
    written: Vec<PathBuf>,
    started: std::time::Instant,
}

impl Manifest {
    pub fn new(out_dir: &Path, config: &Config) -> Manifest {
        let mut entries = BTreeMap::new();
        entries.insert(
            "tool.version".to_string(),
            env!("CARGO_PKG_VERSION").to_string(),
        );
        for (k, v) in config.entries() {
            entries.insert(format!("config.{k}"), v.to_string());
        }
        Manifest {
            entries,
            dir: out_dir.to_path_buf(),
            written: Vec::new(),
            started: std::time::Instant::now(),
        }
    }

    pub fn record(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    /// Write an output file and record its size and checksum.
    pub fn write_output(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes)?;
        self.entries
            .insert(format!("file.{name}.bytes"), bytes.len().to_string());
        self.entries
            .insert(format!("file.{name}.fnv1a64"), format!("{:016x}", fnv1a64(bytes)));
        self.written.push(path.clone());
        Ok(path)
    }

    /// Finalize: write `<experiment>.manifest.txt` and return every path
    /// produced by the run.
    pub fn finish(mut self, experiment: &str) -> Result<Vec<PathBuf>> {
        self.entries.insert(
            "wall_ms".to_string(),
            self.started.elapsed().as_millis().to_string(),
        );
        let mut text = String::new();
        for (k, v) in &self.entries {
            text.push_str(k);
            text.push_str(" = ");
            text.push_str(v);
            text.push('\n');
        }
        let path = self.dir.join(format!("{experiment}.manifest.txt"));
        write_atomic(&path, text.as_bytes())?;
        self.written.push(path);
        Ok(self.written)
    }
}
