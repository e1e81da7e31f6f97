//! Brute-force ground truth for small instances. Nothing here shares code
//! with the heuristic engines beyond the graph type and `chords_of`, which is
//! only used to re-verify the final answer.

mod cache;

use std::collections::{BTreeMap, VecDeque};
use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::expander::{
    CheckMode, ExpansionCertificate, ExpansionCriterion, Verdict,
};
use crate::graph::{chords_of, ChordedCycle, Cycle, Graph, Path, Vertex};

pub use cache::OracleCache;

pub const DEFAULT_LIMIT_N: usize = 14;
/// Bitmask enumeration bound for [`oracle_expansion`].
pub const EXPANSION_LIMIT_N: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub best_cycle: Option<ChordedCycle>,
    pub max_chords: usize,
    pub per_length_table: BTreeMap<usize, usize>,
    pub instance_hash: String,
    pub cycle_count: u64,
}

/// SHA-256 over the vertex count and sorted edge list.
pub fn instance_hash(g: &Graph) -> String {
    let mut h = Sha256::new();
    h.update(format!("n {}\n", g.n()).as_bytes());
    for (u, v) in g.edges() {
        h.update(format!("{u} {v}\n").as_bytes());
    }
    hex::encode(h.finalize())
}

/// Every simple cycle exactly once: it starts at its smallest vertex and its
/// second vertex is smaller than its last.
pub fn enumerate_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        walk_from(g, s, &mut |c: &[Vertex], _mask| out.push(c.to_vec()));
    }
    out
}

fn walk_from(g: &Graph, s: Vertex, visit: &mut impl FnMut(&[Vertex], u64)) {
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path = vec![s];
    on_path[s] = true;
    let mut iters: Vec<usize> = vec![0];
    let mut mask: u64 = if n <= 64 { 1 << s } else { 0 };
    while let Some(&last) = path.last() {
        let depth = path.len() - 1;
        let i = iters[depth];
        let nbrs = g.neighbors(last);
        if i == nbrs.len() {
            on_path[last] = false;
            if n <= 64 {
                mask &= !(1u64 << last);
            }
            path.pop();
            iters.pop();
            continue;
        }
        iters[depth] += 1;
        let w = nbrs[i];
        if w == s && path.len() >= 3 && path[1] < last {
            visit(&path, mask);
        }
        if w > s && !on_path[w] {
            on_path[w] = true;
            if n <= 64 {
                mask |= 1 << w;
            }
            path.push(w);
            iters.push(0);
        }
    }
}

#[derive(Default)]
struct Partial {
    table: BTreeMap<usize, usize>,
    best: Option<(usize, Vec<Vertex>)>,
    count: u64,
}

impl Partial {
    fn offer(&mut self, chords: usize, cycle: &[Vertex]) {
        self.count += 1;
        let e = self.table.entry(cycle.len()).or_insert(0);
        *e = (*e).max(chords);
        let better = match &self.best {
            None => true,
            Some((c, seq)) => chords > *c || (chords == *c && cycle < seq.as_slice()),
        };
        if better {
            self.best = Some((chords, cycle.to_vec()));
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        for (l, c) in other.table {
            let e = self.table.entry(l).or_insert(0);
            *e = (*e).max(c);
        }
        if let Some((c, seq)) = other.best {
            let better = match &self.best {
                None => true,
                Some((bc, bseq)) => c > *bc || (c == *bc && seq < *bseq),
            };
            if better {
                self.best = Some((c, seq));
            }
        }
        self
    }
}

/// Exhaustive maximum-chord cycle. Chords of a cycle are counted as
/// induced edges minus cycle edges, independently of `chords_of`.
pub fn oracle_max_chorded_cycle(g: &Graph, limit_n: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > limit_n || n > 64 {
        return Err(OracleError::TooLarge {
            n,
            limit: limit_n.min(64),
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let merged = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut part = Partial::default();
            walk_from(g, s, &mut |c: &[Vertex], mask: u64| {
                let induced: u32 = c.iter().map(|&v| (adj[v] & mask).count_ones()).sum();
                let chords = induced as usize / 2 - c.len();
                part.offer(chords, c);
            });
            part
        })
        .reduce(Partial::default, Partial::merge);

    let best_cycle = merged.best.as_ref().map(|(chords, seq)| {
        let cc = chords_of(g, &Cycle::new_unchecked(seq.clone()))
            .expect("enumerated cycle is valid");
        assert_eq!(cc.chord_count(), *chords, "chord count disagrees with chords_of");
        cc
    });
    Ok(OracleResult {
        max_chords: merged.best.map_or(0, |b| b.0),
        best_cycle,
        per_length_table: merged.table,
        instance_hash: instance_hash(g),
        cycle_count: merged.count,
    })
}

/// Longest cycle length (circumference), or `None` when acyclic.
pub fn oracle_circumference(g: &Graph, limit_n: usize) -> Result<Option<usize>, OracleError> {
    Ok(oracle_max_chorded_cycle(g, limit_n)?
        .per_length_table
        .keys()
        .next_back()
        .copied())
}

/// All free endpoints reachable by rotation sequences, found by BFS over
/// whole paths (no deduplication by endpoint).
pub fn oracle_rotation_closure(
    g: &Graph,
    p: &Path,
    fixed: Vertex,
) -> Result<Vec<Vertex>, OracleError> {
    if g.n() > DEFAULT_LIMIT_N {
        return Err(OracleError::TooLarge {
            n: g.n(),
            limit: DEFAULT_LIMIT_N,
        });
    }
    if !p.is_valid_in(g) {
        return Err(OracleError::InvalidPath("not a path of the graph".into()));
    }
    let start: Vec<Vertex> = if p.first() == fixed {
        p.vertices().to_vec()
    } else if p.last() == fixed {
        p.reversed().vertices().to_vec()
    } else {
        return Err(OracleError::InvalidPath(format!("{fixed} is not an endpoint")));
    };
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut endpoints = vec![false; g.n()];
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(path) = queue.pop_front() {
        let k = path.len();
        let end = path[k - 1];
        endpoints[end] = true;
        for &w in g.neighbors(end) {
            // w = path[i] with i <= k - 3 gives a new path ending at path[i + 1].
            let Some(i) = path.iter().position(|&x| x == w) else { continue };
            if i + 2 >= k {
                continue;
            }
            let mut next = path[..=i].to_vec();
            next.extend(path[i + 1..].iter().rev());
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok((0..g.n()).filter(|&v| endpoints[v]).collect())
}

/// Literal subset enumeration over bitmasks; the witness is the
/// lexicographically least violating set (as a sorted sequence).
pub fn oracle_expansion(
    g: &Graph,
    criterion: ExpansionCriterion,
) -> Result<ExpansionCertificate, OracleError> {
    let n = g.n();
    if n > EXPANSION_LIMIT_N {
        return Err(OracleError::TooLarge {
            n,
            limit: EXPANSION_LIMIT_N,
        });
    }
    let (lo, hi) = criterion.size_range(n);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut witness: Option<Vec<Vertex>> = None;
    let mut checked = 0u64;
    if lo <= hi {
        for set in 1u32..(1u32 << n) {
            let size = set.count_ones() as usize;
            if size < lo || size > hi {
                continue;
            }
            checked += 1;
            let mut nb = 0u32;
            for v in 0..n {
                if set >> v & 1 == 1 {
                    nb |= adj[v];
                }
            }
            let boundary = (nb & !set).count_ones() as usize;
            if (boundary as f64) < criterion.required(size) {
                let members: Vec<Vertex> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                if witness.as_ref().is_none_or(|w| members < *w) {
                    witness = Some(members);
                }
            }
        }
    }
    Ok(ExpansionCertificate {
        mode: CheckMode::Exact,
        criterion,
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        witness,
        checked_sizes: (lo, hi),
        sets_checked: checked,
    })
}
