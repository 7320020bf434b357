//! Output directory management. Every run writes its resolved spec
//! first, its data files next, and `manifest.txt` last: a sorted list
//! of `sha256  filename` lines covering everything except the manifest
//! itself. A complete directory therefore always carries a manifest,
//! and an interrupted one never does.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::CliError;

pub const MANIFEST: &str = "manifest.txt";
pub const RESOLVED_SPEC: &str = "spec.resolved";

pub struct Emitter {
    dir: PathBuf,
    hashes: BTreeMap<String, String>,
}

fn io_err(what: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::Runtime(format!("cannot {what} {}: {e}", path.display()))
}

impl Emitter {
    /// Claims `dir` for this run. A manifest from a previous complete
    /// run blocks reuse unless `overwrite` is set; the old manifest is
    /// removed up front so an interrupted rerun is not mistaken for a
    /// complete one.
    pub fn prepare(dir: &Path, overwrite: bool) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| io_err("create output directory", dir, e))?;
        let manifest = dir.join(MANIFEST);
        if manifest.exists() {
            if !overwrite {
                return Err(CliError::Validation(format!(
                    "output directory {} already holds a completed run \
                     (found {MANIFEST}); pass --overwrite to replace it",
                    dir.display()
                )));
            }
            fs::remove_file(&manifest).map_err(|e| io_err("remove", &manifest, e))?;
        }
        Ok(Emitter {
            dir: dir.to_path_buf(),
            hashes: BTreeMap::new(),
        })
    }

    /// Rewriting the same name replaces its manifest entry, so files
    /// flushed incrementally hash to their final content.
    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| io_err("write", &path, e))?;
        self.hashes
            .insert(name.to_string(), format!("{:x}", Sha256::digest(bytes)));
        Ok(())
    }

    /// Writes `manifest.txt` and consumes the emitter; call last.
    pub fn finish(self) -> Result<(), CliError> {
        let mut listing = String::new();
        for (name, hash) in &self.hashes {
            listing.push_str(hash);
            listing.push_str("  ");
            listing.push_str(name);
            listing.push('\n');
        }
        let path = self.dir.join(MANIFEST);
        fs::write(&path, listing).map_err(|e| io_err("write", &path, e))
    }
}
