use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use super::{instance_hash, oracle_max_chorded_cycle, OracleError, OracleResult};
use crate::graph::Graph;

/// One JSON document per instance hash.
#[derive(Clone, Debug)]
pub struct OracleCache {
    dir: PathBuf,
}

impl OracleCache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(OracleCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, hash: &str) -> Option<OracleResult> {
        let text = fs::read_to_string(self.path_for(hash)).ok()?;
        serde_json::from_str::<OracleResult>(&text)
            .ok()
            .filter(|r| r.instance_hash == hash)
    }

    pub fn put(&self, result: &OracleResult) -> io::Result<()> {
        let target = self.path_for(&result.instance_hash);
        let tmp = target.with_extension("json.tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string_pretty(result)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, target)
    }

    pub fn max_chorded_cycle(&self, g: &Graph, limit_n: usize) -> Result<OracleResult, OracleError> {
        let hash = instance_hash(g);
        if let Some(hit) = self.get(&hash) {
            return Ok(hit);
        }
        let result = oracle_max_chorded_cycle(g, limit_n)?;
        // A failed write only costs a recomputation later.
        let _ = self.put(&result);
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::petersen;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OracleCache::new(dir.path()).unwrap();
        let g = petersen();
        let first = cache.max_chorded_cycle(&g, 14).unwrap();
        assert!(cache.get(&first.instance_hash).is_some());
        let second = cache.max_chorded_cycle(&g, 14).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OracleCache::new(dir.path()).unwrap();
        std::fs::write(dir.path().join("abc.json"), "not json").unwrap();
        assert!(cache.get("abc").is_none());
    }
}
