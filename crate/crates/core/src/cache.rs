//! Append-only JSON-lines store of invariant records, keyed by canonical key.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::error::Result;
use crate::matroid::CanonicalKey;
use crate::record::InvariantRecord;

/// Environment variable that overrides any cache path given on the command line.
pub const CACHE_ENV: &str = "MATROID_CACHE";

/// Lines that fail to parse (a torn final write, typically) are skipped on load.
/// Later records for a key shadow earlier ones.
#[derive(Debug)]
pub struct RecordCache {
    path: PathBuf,
    index: Mutex<HashMap<CanonicalKey, InvariantRecord>>,
    skipped: usize,
}

impl RecordCache {
    pub fn open(path: impl AsRef<Path>) -> Result<RecordCache> {
        let path = path.as_ref().to_path_buf();
        let mut index = HashMap::new();
        let mut skipped = 0;
        if path.exists() {
            let mut text = String::new();
            File::open(&path)?.read_to_string(&mut text)?;
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                match serde_json::from_str::<InvariantRecord>(line) {
                    Ok(r) => {
                        index.insert(r.key.clone(), r);
                    }
                    Err(_) => skipped += 1,
                }
            }
        }
        Ok(RecordCache {
            path,
            index: Mutex::new(index),
            skipped,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Unparseable lines seen while loading.
    pub fn skipped_lines(&self) -> usize {
        self.skipped
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<InvariantRecord> {
        self.index
            .lock()
            .expect("cache lock poisoned")
            .get(key)
            .cloned()
    }

    /// Appends the record unless an identical one is already latest for its key.
    pub fn put(&self, record: &InvariantRecord) -> Result<()> {
        let mut index = self.index.lock().expect("cache lock poisoned");
        if index.get(&record.key) == Some(record) {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&self.path)?;
        // a torn previous write leaves no trailing newline; start a fresh line
        let len = file.metadata()?.len();
        let mut line = String::new();
        if len > 0 {
            let mut last = [0u8; 1];
            file.seek(SeekFrom::End(-1))?;
            file.read_exact(&mut last)?;
            if last[0] != b'\n' {
                line.push('\n');
            }
        }
        line.push_str(&record.to_json_line());
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.flush()?;
        index.insert(record.key.clone(), record.clone());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.index.lock().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The cache path to use: `MATROID_CACHE` if set, else the flag value.
pub fn resolve_cache_path(flag: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}
