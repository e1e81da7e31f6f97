use std::collections::BTreeMap;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run_pipeline, write_atomic, ConfigOverrides, PipelineError, Report};
use crate::graph::{generate, load_graph, GeneratorKind, GeneratorParams, Graph, InputFormat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub overrides: ConfigOverrides,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    /// Aggregation key; defaults to the generator kind or `file`.
    #[serde(default)]
    pub family: Option<String>,
    #[serde(flatten)]
    pub source: EntrySource,
    #[serde(default)]
    pub overrides: ConfigOverrides,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntrySource {
    /// Relative paths resolve against the manifest's directory.
    File { path: PathBuf, format: String },
    Generator {
        kind: String,
        n: usize,
        #[serde(default)]
        d: usize,
        #[serde(default)]
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub name: String,
    pub family: String,
    pub n: Option<usize>,
    pub length: Option<usize>,
    pub chords: Option<usize>,
    pub normalized: Option<f64>,
    pub oracle_max_chords: Option<usize>,
    pub ratio: Option<f64>,
    pub report_file: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub family: String,
    pub n: usize,
    pub runs: usize,
    pub median_length: f64,
    pub median_chords: f64,
    pub median_normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub entries: Vec<EntryRecord>,
    pub aggregate: Vec<AggregateRow>,
}

impl CorpusEntry {
    fn family(&self) -> String {
        self.family.clone().unwrap_or_else(|| match &self.source {
            EntrySource::File { .. } => "file".into(),
            EntrySource::Generator { kind, d, .. } if *d > 0 => format!("{kind}-{d}"),
            EntrySource::Generator { kind, .. } => kind.clone(),
        })
    }

    fn load(&self, base: &Path) -> Result<Graph, PipelineError> {
        match &self.source {
            EntrySource::File { path, format } => {
                let format: InputFormat = format.parse().map_err(PipelineError::Input)?;
                let path = base.join(path);
                let file = std::fs::File::open(&path).map_err(|source| PipelineError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                load_graph(BufReader::new(file), format)
                    .map(|l| l.graph)
                    .map_err(|e| PipelineError::Input(e.to_string()))
            }
            EntrySource::Generator { kind, n, d, seed } => {
                let kind: GeneratorKind = kind.parse().map_err(PipelineError::Input)?;
                generate(kind, GeneratorParams::new(*n, *d), *seed).map_err(|e| PipelineError::Input(e.to_string()))
            }
        }
    }
}

fn parse_manifest(path: &Path) -> Result<Manifest, PipelineError> {
    let text = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| PipelineError::Manifest(e.to_string()))?;
    if manifest.entries.is_empty() {
        return Err(PipelineError::Manifest("no entries".into()));
    }
    let mut names: Vec<&str> = manifest.entries.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(PipelineError::Manifest(format!("duplicate entry name '{}'", w[0])));
    }
    if let Some(bad) = names.iter().find(|s| s.is_empty() || s.contains(['/', '\\']) || s.starts_with('.')) {
        return Err(PipelineError::Manifest(format!("entry name '{bad}' is not a plain file name")));
    }
    Ok(manifest)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

fn aggregate(entries: &[EntryRecord]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(String, usize), Vec<&EntryRecord>> = BTreeMap::new();
    for e in entries {
        if let (Some(n), Some(_)) = (e.n, e.length) {
            groups.entry((e.family.clone(), n)).or_default().push(e);
        }
    }
    groups
        .into_iter()
        .map(|((family, n), rs)| AggregateRow {
            family,
            n,
            runs: rs.len(),
            median_length: median(rs.iter().filter_map(|r| r.length).map(|x| x as f64).collect()),
            median_chords: median(rs.iter().filter_map(|r| r.chords).map(|x| x as f64).collect()),
            median_normalized: median(rs.iter().filter_map(|r| r.normalized).collect()),
        })
        .collect()
}

fn run_entry(entry: &CorpusEntry, base: &Path, global: &ConfigOverrides, out: Option<&Path>) -> EntryRecord {
    let mut rec = EntryRecord {
        name: entry.name.clone(),
        family: entry.family(),
        n: None,
        length: None,
        chords: None,
        normalized: None,
        oracle_max_chords: None,
        ratio: None,
        report_file: None,
        error: None,
    };
    let g = match entry.load(base) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.n = Some(g.n());
    let cfg = global.merged(&entry.overrides).resolve(g.n());
    let report: Report = run_pipeline(&g, &cfg);
    if let Some(r) = &report.result {
        rec.length = Some(r.length);
        rec.chords = Some(r.chords);
        rec.normalized = Some(r.normalized);
    }
    if let Some(o) = &report.oracle {
        rec.oracle_max_chords = Some(o.max_chords);
        rec.ratio = o.ratio;
    }
    rec.error = report.internal_error.clone();
    if let Some(dir) = out {
        let file = format!("{}.json", entry.name);
        match write_atomic(&dir.join(&file), &report.to_json()) {
            Ok(()) => rec.report_file = Some(file),
            Err(e) => rec.error = Some(e.to_string()),
        }
    }
    rec
}

/// Runs every manifest entry on up to `workers` threads. Per-entry reports
/// and `summary.json` go to `out` when given; entry failures are recorded
/// and do not stop the run.
pub fn run_corpus(
    manifest_path: &Path,
    overrides: &ConfigOverrides,
    workers: usize,
    out: Option<&Path>,
) -> Result<CorpusSummary, PipelineError> {
    let manifest = parse_manifest(manifest_path)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let global = manifest.overrides.merged(overrides);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| PipelineError::Config(e.to_string()))?;
    let entries: Vec<EntryRecord> = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|e| run_entry(e, base, &global, out))
            .collect()
    });
    let summary = CorpusSummary {
        aggregate: aggregate(&entries),
        entries,
    };
    if let Some(dir) = out {
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
        write_atomic(&dir.join("summary.json"), &json)?;
    }
    Ok(summary)
}
