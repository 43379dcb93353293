//! On-disk cache of KL tables.
//!
//! One JSON file per table, named by the SHA-256 of the algebra, the block
//! signature, the interval and the engine convention. Writes go to a
//! temporary file in the same directory followed by a rename, so readers
//! never see a partial file. Anything unreadable is treated as a miss.

use crate::error::Result;
use crate::interval::Interval;
use crate::super_kl::{KlTable, CONVENTION, FORMAT_VERSION};
use crate::weights::{Algebra, Weight};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

/// Content key of a table.
pub fn cache_key(alg: &Algebra, signature: &BTreeMap<i64, i64>, interval: &Interval) -> String {
    let mut h = Sha256::new();
    h.update(format!("{alg};{signature:?};{interval};{FORMAT_VERSION};{CONVENTION}"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl DiskCache {
    pub fn new<P: AsRef<Path>>(dir: P) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(DiskCache { dir: dir.as_ref().to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, alg: &Algebra, signature: &BTreeMap<i64, i64>, interval: &Interval) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(alg, signature, interval)))
    }

    /// The cached table, if present, parseable and describing the same data.
    pub fn get(&self, alg: &Algebra, signature: &BTreeMap<i64, i64>, interval: &Interval) -> Option<KlTable> {
        let text = fs::read_to_string(self.path_for(alg, signature, interval)).ok()?;
        let t = KlTable::from_json(&text).ok()?;
        let same_block = t.weights().first().is_none_or(|w: &Weight| &w.signature() == signature);
        (t.algebra == *alg && t.interval == *interval && same_block).then_some(t)
    }

    pub fn put(&self, table: &KlTable, signature: &BTreeMap<i64, i64>) -> Result<()> {
        let path = self.path_for(&table.algebra, signature, &table.interval);
        let mut tmp = tempfile_in(&self.dir)?;
        tmp.1.write_all(table.to_json()?.as_bytes())?;
        tmp.1.sync_all()?;
        drop(tmp.1);
        fs::rename(&tmp.0, &path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp.0);
        })?;
        Ok(())
    }
}

/// A fresh file next to the cache entries; the name includes the process id
/// and a counter so concurrent writers never collide.
fn tempfile_in(dir: &Path) -> Result<(PathBuf, fs::File)> {
    use std::sync::atomic::{AtomicU64, Ordering};
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    loop {
        let n = COUNTER.fetch_add(1, Ordering::Relaxed);
        let p = dir.join(format!(".tmp-{}-{n}", std::process::id()));
        match fs::OpenOptions::new().write(true).create_new(true).open(&p) {
            Ok(f) => return Ok((p, f)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::super_kl::build_kl_table;

    #[test]
    fn round_trip_and_poison() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path()).unwrap();
        let alg = Algebra::gl(2, 1).unwrap();
        let seed: Weight = "0,0|0".parse().unwrap();
        let i = Interval { a: -1, b: 2 };
        let sig = seed.signature();
        assert!(cache.get(&alg, &sig, &i).is_none());
        let t = build_kl_table(&alg, &seed, &i).unwrap();
        cache.put(&t, &sig).unwrap();
        let back = cache.get(&alg, &sig, &i).unwrap();
        assert_eq!(back.to_json().unwrap(), t.to_json().unwrap());

        let path = cache.path_for(&alg, &sig, &i);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, &text[..text.len() / 2]).unwrap();
        assert!(cache.get(&alg, &sig, &i).is_none());
        // no temp files left behind
        let stray = fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".tmp"));
        assert_eq!(stray.count(), 0);
    }

    #[test]
    fn keys_separate_intervals_and_algebras() {
        let sig: BTreeMap<i64, i64> = [(0, 1)].into_iter().collect();
        let a = cache_key(&Algebra::gl(2, 1).unwrap(), &sig, &Interval { a: 0, b: 1 });
        let b = cache_key(&Algebra::gl(2, 1).unwrap(), &sig, &Interval { a: 0, b: 2 });
        let c = cache_key(&Algebra::sl(2, 1).unwrap(), &sig, &Interval { a: 0, b: 1 });
        assert!(a != b && a != c && b != c);
        assert_eq!(a.len(), 64);
    }
}
