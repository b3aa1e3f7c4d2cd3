//! Append-only certificate log, one JSON object per line.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::canon::canonical_form;
use crate::error::{Result, ZsrError};
use crate::graph::Graph;
use crate::ramsey::RamseyCertificate;

pub const CACHE_FILE: &str = "certificates.jsonl";

/// Certificates keyed by (canonical graph6, k). Entries are re-verified on
/// load; lines that fail to parse or verify are skipped and counted. A later
/// line for the same key replaces an earlier one.
#[derive(Debug)]
pub struct CertificateCache {
    path: PathBuf,
    entries: BTreeMap<(String, u8), RamseyCertificate>,
    rejected: usize,
}

impl CertificateCache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let path = dir.join(CACHE_FILE);
        let mut entries = BTreeMap::new();
        let mut rejected = 0;
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<RamseyCertificate>(&line) {
                    Ok(cert) if cert.verify().unwrap_or(false) => {
                        entries.insert((cert.target.clone(), cert.k), cert);
                    }
                    _ => rejected += 1,
                }
            }
        }
        Ok(CertificateCache { path, entries, rejected })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines dropped on load.
    pub fn rejected(&self) -> usize {
        self.rejected
    }

    pub fn get(&self, g: &Graph, k: u8) -> Option<&RamseyCertificate> {
        let key = canonical_form(g).as_str().to_string();
        self.entries.get(&(key, k))
    }

    pub fn insert(&mut self, cert: RamseyCertificate) -> Result<()> {
        if !cert.verify()? {
            return Err(ZsrError::PreconditionViolated(format!(
                "certificate for {} does not verify",
                cert.target
            )));
        }
        let line = serde_json::to_string(&cert).map_err(|e| ZsrError::Parse(e.to_string()))?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        f.flush()?;
        self.entries.insert((cert.target.clone(), cert.k), cert);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = &RamseyCertificate> {
        self.entries.values()
    }
}
