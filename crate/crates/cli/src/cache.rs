//! Content-addressed cache of generated states.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::document::SCHEMA_VERSION;
use crate::CliError;
use fkf_core::Ansatz;

pub const CACHE_ENV: &str = "FKF_CACHE_DIR";

pub fn key(ansatz: Ansatz, cycles: u32) -> String {
    let mut h = Sha256::new();
    h.update(format!("fkf-state\0{}\0{cycles}\0{SCHEMA_VERSION}", ansatz.name()).as_bytes());
    hex::encode(h.finalize())
}

pub fn path(dir: &Path, ansatz: Ansatz, cycles: u32) -> PathBuf {
    dir.join(format!("{}.json", key(ansatz, cycles)))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(target: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match target.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(target).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

pub fn read(dir: &Path, ansatz: Ansatz, cycles: u32) -> Option<String> {
    fs::read_to_string(path(dir, ansatz, cycles)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_distinct_and_stable() {
        assert_eq!(key(Ansatz::P4, 1), key(Ansatz::P4, 1));
        assert_ne!(key(Ansatz::P4, 1), key(Ansatz::A5, 1));
        assert_ne!(key(Ansatz::P4, 1), key(Ansatz::P4, 2));
        assert_eq!(key(Ansatz::P4, 1).len(), 64);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
