//! On-disk memo for cover boundary ranks.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use agrarian::raag::RankStore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    rank: usize,
}

/// One JSON file per rank, named by the SHA-256 of its descriptor.
///
/// The descriptor is stored alongside the rank and compared on lookup, so a
/// hash collision reads as a miss. Unreadable entries are ignored.
#[derive(Debug, Clone)]
pub struct DiskRankStore {
    dir: PathBuf,
}

impl DiskRankStore {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskRankStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }
}

impl RankStore for DiskRankStore {
    fn get(&self, key: &str) -> Option<usize> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry.rank)
    }

    fn put(&self, key: &str, rank: usize) {
        let entry = Entry { key: key.to_string(), rank };
        let text = serde_json::to_string(&entry).expect("entry serialises");
        // a failed write only costs a recomputation later
        let _ = write_atomically(&self.path(key), text.as_bytes());
    }
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
