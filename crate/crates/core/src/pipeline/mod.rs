//! End-to-end run: C4-free subgraph, expander extraction, degree classes,
//! gadget collection, chaining, and a fallback cycle when nothing chains.
//! Every stage records its outcome in the [`Report`]; only the final
//! re-verification can flag an internal error.

mod config;
mod corpus;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use thiserror::Error;

use crate::cycles::find_long_cycle;
use crate::expander::{extract_expander_subgraph, verify_sublinear_expansion, CheckMode, ExpansionProfile, EXACT_LIMIT};
use crate::gadgets::{
    build_cycle_extender, chain_gadgets, classify_degrees, find_nice_spiders, ChainOutcome, CycleExtender,
    GadgetParams, NiceSpider,
};
use crate::graph::{chords_of, extract_c4_free_subgraph, is_c4_free, ChordedCycle, Graph, Subgraph, Vertex};
use crate::oracle::oracle_max_chorded_cycle;

pub use config::{ConfigOverrides, Mode, PipelineConfig};
pub use corpus::{run_corpus, AggregateRow, CorpusEntry, CorpusSummary, EntryRecord, EntrySource, Manifest};
pub use report::{
    write_atomic, CycleSource, GadgetInventory, InputSummary, OracleSummary, Report, ResultSummary, StageRecord,
    SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Sampled verification budget for graphs above the exact limit.
const SAMPLE_BUDGET: usize = 2_000;
/// Extender attempts in a row that may fail before the search stops.
const EXTENDER_PATIENCE: usize = 2;

struct Run<'a> {
    g: &'a Graph,
    cfg: &'a PipelineConfig,
    stages: Vec<StageRecord>,
    timings: BTreeMap<String, f64>,
}

impl<'a> Run<'a> {
    fn stage<T>(&mut self, name: &str, f: impl FnOnce(&mut StageRecord) -> T) -> T {
        let start = Instant::now();
        let mut rec = StageRecord::new(name);
        let out = f(&mut rec);
        self.timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
        self.stages.push(rec);
        out
    }
}

fn summarize_input(g: &Graph) -> InputSummary {
    let has_triangle = (0..g.n()).any(|u| {
        let nu = g.neighbors(u);
        nu.iter().any(|&v| v > u && g.neighbors(v).iter().any(|&w| w > v && nu.binary_search(&w).is_ok()))
    });
    InputSummary {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        avg_degree: g.avg_degree(),
        girth_at_most_4: has_triangle || !is_c4_free(g),
    }
}

/// Runs every stage on `g`. Failures are recorded per stage; a report is
/// always produced.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Report {
    let total = Instant::now();
    let mut run = Run {
        g,
        cfg,
        stages: Vec::new(),
        timings: BTreeMap::new(),
    };
    let input = summarize_input(g);

    let valid = run.stage("config", |rec| match cfg.validate() {
        Ok(()) => true,
        Err(e) => {
            rec.fail(e.to_string());
            false
        }
    });

    let mut spiders: Vec<NiceSpider> = Vec::new();
    let mut extenders: Vec<CycleExtender> = Vec::new();
    let mut chained: Option<(ChainOutcome, Subgraph)> = None;
    if valid {
        let h = gadget_host(&mut run);
        let (sp, ex) = collect_gadgets(&mut run, &h);
        chained = chain_with_retry(&mut run, &h, &sp, &ex).map(|c| (c, h.clone()));
        spiders = sp.iter().map(|s| lift_spider(s, &h)).collect();
        extenders = ex.iter().map(|e| lift_extender(e, &h)).collect();
    }

    let mut result = None;
    let mut internal_error = None;
    if let Some((outcome, h)) = &chained {
        let lifted = outcome.cycle.cycle.map(|v| h.host(v));
        match chords_of(g, &lifted) {
            Ok(cc) if cc.chord_count() >= outcome.cycle.chord_count() => {
                result = Some(ResultSummary::new(cc, CycleSource::Chain));
            }
            Ok(cc) => {
                internal_error = Some(format!(
                    "chained cycle has {} chords in the input, {} in the gadget host",
                    cc.chord_count(),
                    outcome.cycle.chord_count()
                ));
            }
            Err(e) => internal_error = Some(format!("chained cycle fails re-verification: {e}")),
        }
    }
    if result.is_none() && internal_error.is_none() {
        result = fallback(&mut run, &extenders);
    }
    if let Some(r) = &result {
        // Never trust the stored count: recompute from the input graph.
        match chords_of(g, &crate::graph::Cycle::new_unchecked(r.cycle.clone())) {
            Ok(cc) if cc.chords == r.chord_list => {}
            Ok(cc) => {
                internal_error = Some(format!(
                    "final chord list disagrees: stored {}, recomputed {}",
                    r.chords,
                    cc.chord_count()
                ))
            }
            Err(e) => internal_error = Some(format!("final cycle fails re-verification: {e}")),
        }
    }

    let oracle = if g.n() <= cfg.oracle_limit {
        run.stage("oracle", |rec| match oracle_max_chorded_cycle(g, cfg.oracle_limit) {
            Ok(o) => {
                rec.size("max_chords", o.max_chords);
                let ratio = result.as_ref().map(|r| {
                    if o.max_chords == 0 {
                        1.0
                    } else {
                        r.chords as f64 / o.max_chords as f64
                    }
                });
                Some(OracleSummary {
                    max_chords: o.max_chords,
                    per_length: o.per_length_table,
                    ratio,
                })
            }
            Err(e) => {
                rec.fail(e.to_string());
                None
            }
        })
    } else {
        None
    };
    if let (Some(o), Some(r)) = (&oracle, &result) {
        if r.chords > o.max_chords && internal_error.is_none() {
            internal_error = Some(format!("{} chords exceed the oracle maximum {}", r.chords, o.max_chords));
        }
    }

    let gadgets = GadgetInventory {
        spiders: spiders.len(),
        extenders: extenders.len(),
        chained_spiders: chained.as_ref().map_or(0, |(c, _)| c.spiders.len()),
        chained_extenders: chained.as_ref().map_or(0, |(c, _)| c.extenders.len()),
        spider_list: spiders,
        extender_list: extenders,
    };
    run.timings.insert("total".into(), total.elapsed().as_secs_f64() * 1e3);
    Report {
        schema_version: SCHEMA_VERSION,
        input,
        config: cfg.clone(),
        seed: cfg.seed,
        stages: run.stages,
        gadgets,
        result,
        oracle,
        internal_error,
        timings: run.timings,
    }
}

/// Stages 1 and 2: the C4-free subgraph and an expander inside it, composed
/// back to input ids.
fn gadget_host(run: &mut Run) -> Subgraph {
    let (g, cfg) = (run.g, run.cfg);
    let c4 = run.stage("c4-free", |rec| {
        let out = extract_c4_free_subgraph(g, cfg.min_degree_c as f64);
        rec.size("edges", out.graph.m());
        rec.size("removed_edges", out.removed_edges);
        rec.detail = format!(
            "average degree {:.3} (target {:.1}{})",
            out.avg_degree,
            out.target_avg_degree,
            if out.shortfall { ", short" } else { "" }
        );
        out.graph
    });
    let profile = ExpansionProfile::new(cfg.epsilon1, cfg.k);
    let ext = run.stage("expander", |rec| {
        let ext = extract_expander_subgraph(&c4, profile, cfg.seed);
        rec.size("vertices", ext.stats.vertices);
        rec.size("min_degree", ext.stats.min_degree);
        rec.size("splits", ext.stats.splits);
        rec.size("peeled", ext.stats.peeled);
        rec.detail = format!("average degree {:.3}", ext.stats.avg_degree);
        if ext.stats.degenerate {
            rec.fail("no edges left after C4 removal");
        }
        ext
    });
    let h = ext.subgraph;
    run.stage("expander-check", |rec| {
        let mode = if cfg.mode == Mode::Exact && h.graph.n() <= EXACT_LIMIT {
            CheckMode::Exact
        } else {
            CheckMode::Sampled {
                budget: SAMPLE_BUDGET,
                seed: cfg.seed,
            }
        };
        let label = if matches!(mode, CheckMode::Exact) { "exact" } else { "sampled" };
        rec.detail = label.to_string();
        match verify_sublinear_expansion(&h.graph, profile, mode) {
            Ok(cert) => {
                rec.size("sets_checked", cert.sets_checked as usize);
                if !cert.passed() {
                    rec.fail(format!("{label}: violating set of size {}", cert.witness.map_or(0, |w| w.len())));
                }
            }
            Err(e) => rec.fail(format!("{label}: {e}")),
        }
    });
    h
}

fn gadget_params(cfg: &PipelineConfig, n: usize, i: usize) -> GadgetParams {
    let base = GadgetParams::for_n(n);
    GadgetParams {
        anchor_size: cfg.anchor_size,
        max_cycle_len: cfg.max_cycle_len,
        max_path_len: cfg.max_path_len,
        danger_threshold: (cfg.anchor_size / 16).max(2),
        seed: cfg.seed.wrapping_add(i as u64),
        ..base
    }
}

/// Stages 3 and 4: spiders first, then extenders on what they leave, all
/// vertex-disjoint, up to the gadget budget. Ids are local to `h`.
fn collect_gadgets(run: &mut Run, h: &Subgraph) -> (Vec<NiceSpider>, Vec<CycleExtender>) {
    let cfg = run.cfg;
    let hg = &h.graph;
    let l = run.stage("classify", |rec| {
        let (l, r) = classify_degrees(hg, cfg.degree_threshold_m);
        rec.size("L", l.len());
        rec.size("R", r.len());
        l
    });
    let spiders = run.stage("spiders", |rec| {
        // Spiders may take half the budget; extenders fill the rest.
        let want = cfg.gadget_budget / 2;
        let out = if want == 0 {
            Vec::new()
        } else {
            find_nice_spiders(hg, &l, &[], cfg.max_path_len, want)
        };
        rec.size("found", out.len());
        out
    });
    let extenders = run.stage("extenders", |rec| {
        let mut forbidden: Vec<Vertex> = spiders.iter().flat_map(|s| s.vertices()).collect();
        let mut out: Vec<CycleExtender> = Vec::new();
        let (mut misses, mut attempt) = (0, 0);
        let mut errors: Vec<String> = Vec::new();
        while spiders.len() + out.len() < cfg.gadget_budget && misses < EXTENDER_PATIENCE {
            match build_cycle_extender(hg, &forbidden, &gadget_params(cfg, hg.n(), attempt)) {
                Ok(e) => {
                    forbidden.extend(e.vertices());
                    out.push(e);
                    misses = 0;
                }
                Err(e) => {
                    misses += 1;
                    errors.push(format!("attempt {attempt}: {e}"));
                }
            }
            attempt += 1;
        }
        rec.size("found", out.len());
        rec.size("attempts", attempt);
        rec.detail = errors.join("; ");
        out
    });
    (spiders, extenders)
}

/// Stages 5 and 6: chain everything, then ever shorter prefixes.
fn chain_with_retry(
    run: &mut Run,
    h: &Subgraph,
    spiders: &[NiceSpider],
    extenders: &[CycleExtender],
) -> Option<ChainOutcome> {
    let cfg = run.cfg;
    run.stage("chain", |rec| {
        let total = spiders.len() + extenders.len();
        rec.size("gadgets", total);
        if total == 0 {
            rec.fail("no gadgets");
            return None;
        }
        let mut keep = total;
        let mut last_err = String::new();
        while keep > 0 {
            // Prefixes keep extenders first: they carry the long pieces.
            let ne = extenders.len().min(keep);
            let ns = keep - ne;
            match chain_gadgets(&h.graph, &spiders[..ns], &extenders[..ne], cfg.max_link_len) {
                Ok(out) => {
                    assert!(out.cycle.chord_count() >= out.spiders.len() + out.extenders.len());
                    rec.size("prefix", keep);
                    rec.size("chained", out.spiders.len() + out.extenders.len());
                    rec.size("length", out.cycle.len());
                    rec.size("chords", out.cycle.chord_count());
                    return Some(out);
                }
                Err(e) => last_err = e.to_string(),
            }
            keep /= 2;
        }
        rec.fail(last_err);
        None
    })
}

/// Stage 7: the chorded cycle with the most chords among the extender
/// cycles and a long cycle of the input.
fn fallback(run: &mut Run, extenders: &[CycleExtender]) -> Option<ResultSummary> {
    let (g, seed) = (run.g, run.cfg.seed);
    run.stage("fallback", |rec| {
        let mut best: Option<(ChordedCycle, CycleSource)> = None;
        let mut offer = |cc: ChordedCycle, src: CycleSource| {
            let better = best
                .as_ref()
                .is_none_or(|(b, _)| (cc.chord_count(), cc.len()) > (b.chord_count(), b.len()));
            if better {
                best = Some((cc, src));
            }
        };
        for e in extenders {
            if let Ok(cc) = chords_of(g, &e.cycle) {
                offer(cc, CycleSource::ExtenderCycle);
            }
        }
        match find_long_cycle(g, 3, seed) {
            Ok(lc) => {
                if let Ok(cc) = chords_of(g, &lc.cycle) {
                    offer(cc, CycleSource::LongCycle);
                }
            }
            Err(e) => rec.detail = e.to_string(),
        }
        match best {
            Some((cc, src)) => {
                rec.size("length", cc.len());
                rec.size("chords", cc.chord_count());
                Some(ResultSummary::new(cc, src))
            }
            None => {
                rec.fail("no cycle found");
                None
            }
        }
    })
}

fn lift_spider(s: &NiceSpider, h: &Subgraph) -> NiceSpider {
    let f = |v: Vertex| h.host(v);
    NiceSpider {
        center: f(s.center),
        leaves: s.leaves.map(f),
        legs: s.legs.clone().map(|p| p.map(f)),
        max_leg_len: s.max_leg_len,
    }
}

fn lift_extender(e: &CycleExtender, h: &Subgraph) -> CycleExtender {
    let f = |v: Vertex| h.host(v);
    CycleExtender {
        cycle: e.cycle.map(f),
        p1: e.p1.map(f),
        p2: e.p2.map(f),
        a1: h.lift(&e.a1),
        a2: h.lift(&e.a2),
        ..e.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::validate_extender;
    use crate::graph::generate::{complete, cycle};
    use crate::graph::{generate, GeneratorKind, GeneratorParams};

    #[test]
    fn c50_falls_back_to_itself() {
        let g = cycle(50);
        let r = run_pipeline(&g, &PipelineConfig::for_n(50));
        let res = r.result.unwrap();
        assert_eq!((res.length, res.chords), (50, 0));
        assert_eq!(r.gadgets.spiders + r.gadgets.extenders, 0);
        assert!(r.internal_error.is_none());
    }

    #[test]
    fn forest_has_no_cycle() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let r = run_pipeline(&g, &PipelineConfig::for_n(5));
        assert!(r.result.is_none());
        assert!(r.internal_error.is_none());
    }

    #[test]
    fn k20_has_many_chords() {
        let g = complete(20);
        let r = run_pipeline(&g, &PipelineConfig::for_n(20));
        assert!(r.result.unwrap().chords >= 5);
    }

    #[test]
    fn small_complete_graph_matches_oracle_bound() {
        let g = complete(8);
        let r = run_pipeline(&g, &PipelineConfig::for_n(8));
        let o = r.oracle.unwrap();
        assert_eq!(o.max_chords, 20);
        assert!(r.result.unwrap().chords <= o.max_chords);
    }

    #[test]
    fn invalid_config_still_reports() {
        let mut cfg = PipelineConfig::for_n(30);
        cfg.max_path_len = cfg.max_cycle_len + 1;
        let r = run_pipeline(&cycle(30), &cfg);
        assert!(!r.stages[0].ok);
        assert_eq!(r.result.unwrap().length, 30);
    }

    #[test]
    fn random_regular_report_is_deterministic() {
        let g = generate(GeneratorKind::RandomRegular, GeneratorParams::new(512, 16), 3).unwrap();
        let cfg = PipelineConfig::for_n(512);
        let a = run_pipeline(&g, &cfg);
        let b = run_pipeline(&g, &cfg);
        assert_eq!(a.to_json_without_timings(), b.to_json_without_timings());
        for e in &a.gadgets.extender_list {
            validate_extender(&g, e).unwrap();
        }
        assert!(a.internal_error.is_none());
    }
}
