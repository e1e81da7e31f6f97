use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{PipelineConfig, PipelineError};
use crate::gadgets::{CycleExtender, NiceSpider};
use crate::graph::{ChordedCycle, Vertex};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub avg_degree: f64,
    pub girth_at_most_4: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub name: String,
    pub ok: bool,
    pub detail: String,
    pub sizes: BTreeMap<String, usize>,
}

impl StageRecord {
    pub(super) fn new(name: &str) -> Self {
        StageRecord {
            name: name.to_string(),
            ok: true,
            detail: String::new(),
            sizes: BTreeMap::new(),
        }
    }

    pub(super) fn fail(&mut self, detail: impl Into<String>) {
        self.ok = false;
        self.detail = detail.into();
    }

    pub(super) fn size(&mut self, key: &str, value: usize) {
        self.sizes.insert(key.to_string(), value);
    }
}

/// Gadget lists use input vertex ids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetInventory {
    pub spiders: usize,
    pub extenders: usize,
    pub chained_spiders: usize,
    pub chained_extenders: usize,
    pub spider_list: Vec<NiceSpider>,
    pub extender_list: Vec<CycleExtender>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleSource {
    Chain,
    ExtenderCycle,
    LongCycle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultSummary {
    pub length: usize,
    pub chords: usize,
    pub chord_list: Vec<(Vertex, Vertex)>,
    pub cycle: Vec<Vertex>,
    pub chords_per_length: f64,
    /// `chords * log2(length)^2 / length`.
    pub normalized: f64,
    pub source: CycleSource,
}

impl ResultSummary {
    pub fn new(cc: ChordedCycle, source: CycleSource) -> Self {
        let l = cc.len();
        let lf = l as f64;
        let chords = cc.chord_count();
        ResultSummary {
            length: l,
            chords,
            chords_per_length: chords as f64 / lf,
            normalized: chords as f64 * lf.log2().powi(2) / lf,
            cycle: cc.cycle.vertices().to_vec(),
            chord_list: cc.chords,
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub max_chords: usize,
    pub per_length: BTreeMap<usize, usize>,
    /// Pipeline chords over oracle chords; `1` when both are zero.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: InputSummary,
    pub config: PipelineConfig,
    pub seed: u64,
    pub stages: Vec<StageRecord>,
    pub gadgets: GadgetInventory,
    pub result: Option<ResultSummary>,
    pub oracle: Option<OracleSummary>,
    pub internal_error: Option<String>,
    /// Milliseconds per stage plus `total`; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_json_without_timings(&self) -> String {
        let mut copy = self.clone();
        copy.timings.clear();
        copy.to_json()
    }

    /// 0 with a cycle, 1 without, 3 on an internal verification failure.
    pub fn exit_code(&self) -> i32 {
        match (&self.internal_error, &self.result) {
            (Some(_), _) => 3,
            (None, Some(_)) => 0,
            (None, None) => 1,
        }
    }
}

/// Writes through a sibling temp file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), PipelineError> {
    let io = |source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    };
    let name = path
        .file_name()
        .ok_or_else(|| PipelineError::Input(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::complete;
    use crate::graph::{chords_of, Cycle};

    #[test]
    fn normalized_ratio() {
        let g = complete(4);
        let cc = chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3]).unwrap()).unwrap();
        let r = ResultSummary::new(cc, CycleSource::LongCycle);
        assert_eq!(r.chords, 2);
        assert!((r.normalized - 2.0).abs() < 1e-12);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
