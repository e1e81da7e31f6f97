//! Gadgets that each contribute one chord to the final cycle: nice spiders
//! and cycle extenders, the routing that attaches extenders to anchor sets,
//! and the chaining that threads many gadgets onto one cycle.
//!
//! Every gadget built here passes [`validate_spider`] or
//! [`validate_extender`] before it is returned.

mod chain;
mod danger;
mod extender;
mod spiders;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Cycle, Graph, Path, Vertex};

pub use chain::{chain_gadgets, ChainOutcome, Gadget};
pub use danger::{dangerous_vertices, route_to_anchor_sets, AnchorRoutes, DangerousSet, RootedTree};
pub use extender::{build_cycle_extender, GadgetParams};
pub use spiders::{classify_degrees, find_nice_spiders};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GadgetError {
    #[error("invalid gadget: {0}")]
    Invalid(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("stage {stage} failed: {reason}")]
    Stage { stage: &'static str, reason: String },
    #[error("routing failed: {0}")]
    Routing(String),
    #[error("link {index} failed: {reason}")]
    Link { index: usize, reason: String },
    #[error("nothing to chain")]
    NothingToChain,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, GadgetError> {
    Err(GadgetError::Invalid(msg.into()))
}

/// Three legs from `center` to the leaves `z1, z2, z3`; the `z2` leg is a
/// single edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceSpider {
    pub center: Vertex,
    pub leaves: [Vertex; 3],
    pub legs: [Path; 3],
    pub max_leg_len: usize,
}

impl NiceSpider {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.center];
        for leg in &self.legs {
            out.extend(&leg.vertices()[1..]);
        }
        out
    }
}

/// A short cycle, two paths leaving it from consecutive cycle vertices, and
/// the anchor sets at their far ends. `p1` and `p2` start on the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleExtender {
    pub cycle: Cycle,
    pub p1: Path,
    pub p2: Path,
    pub a1: Vec<Vertex>,
    pub a2: Vec<Vertex>,
    pub anchor_size: usize,
    pub max_cycle_len: usize,
    pub max_path_len: usize,
}

impl CycleExtender {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = self.cycle.vertices().to_vec();
        out.extend(&self.p1.vertices()[1..]);
        out.extend(&self.p2.vertices()[1..]);
        out.extend(self.a1.iter().filter(|&&v| v != self.p1.last()));
        out.extend(self.a2.iter().filter(|&&v| v != self.p2.last()));
        out
    }
}

fn distinct(n: usize, vs: impl IntoIterator<Item = Vertex>) -> Result<Vec<bool>, GadgetError> {
    let mut seen = vec![false; n];
    for v in vs {
        if v >= n {
            return invalid(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return invalid(format!("vertex {v} repeated"));
        }
        seen[v] = true;
    }
    Ok(seen)
}

fn check_path(g: &Graph, p: &Path, what: &str) -> Result<(), GadgetError> {
    if !p.is_valid_in(g) {
        return invalid(format!("{what} is not a path"));
    }
    Ok(())
}

/// Full invariant check for a spider whose leaves must lie in `l_mask`.
pub fn validate_spider(g: &Graph, s: &NiceSpider, l_mask: &[bool]) -> Result<(), GadgetError> {
    for (i, leg) in s.legs.iter().enumerate() {
        check_path(g, leg, "leg")?;
        if leg.first() != s.center || leg.last() != s.leaves[i] {
            return invalid(format!("leg {i} does not join center to its leaf"));
        }
        if leg.is_empty() {
            return invalid(format!("leg {i} is empty"));
        }
    }
    // Legs share only the center.
    distinct(g.n(), s.vertices())?;
    if s.legs[1].len() != 1 {
        return invalid("leg to z2 is not a single edge");
    }
    for i in [0, 2] {
        if s.legs[i].len() > s.max_leg_len {
            return invalid(format!("leg {i} longer than {}", s.max_leg_len));
        }
    }
    if let Some(&z) = s.leaves.iter().find(|&&z| !l_mask.get(z).copied().unwrap_or(false)) {
        return invalid(format!("leaf {z} outside L"));
    }
    Ok(())
}

/// Full invariant check for a cycle extender.
pub fn validate_extender(g: &Graph, e: &CycleExtender) -> Result<(), GadgetError> {
    let n = g.n();
    if Cycle::new(g, e.cycle.vertices().to_vec()).is_err() {
        return invalid("cycle is not a cycle of the graph");
    }
    if e.cycle.len() > e.max_cycle_len {
        return invalid(format!("cycle length {} exceeds {}", e.cycle.len(), e.max_cycle_len));
    }
    for (p, name) in [(&e.p1, "p1"), (&e.p2, "p2")] {
        check_path(g, p, name)?;
        if p.is_empty() {
            return invalid(format!("{name} is empty"));
        }
        if p.len() > e.max_path_len {
            return invalid(format!("{name} longer than {}", e.max_path_len));
        }
    }
    let on_cycle = distinct(n, e.cycle.vertices().iter().copied())?;
    let (s1, s2) = (e.p1.first(), e.p2.first());
    if !on_cycle[s1] || !on_cycle[s2] || !e.cycle.are_consecutive(s1, s2) {
        return invalid("paths do not start at consecutive cycle vertices");
    }
    let rest = e.p1.vertices()[1..].iter().chain(&e.p2.vertices()[1..]);
    if rest.clone().any(|&v| on_cycle[v]) {
        return invalid("paths meet the cycle internally");
    }
    // Disjoint paths, disjoint from the cycle beyond their first vertex.
    let used = distinct(n, e.cycle.vertices().iter().chain(rest).copied())?;
    if e.a1.len() != e.anchor_size || e.a2.len() != e.anchor_size {
        return invalid(format!("anchor sizes differ from {}", e.anchor_size));
    }
    let anchors = distinct(n, e.a1.iter().chain(&e.a2).copied())?;
    for (a, end) in [(&e.a1, e.p1.last()), (&e.a2, e.p2.last())] {
        if !a.contains(&end) {
            return invalid(format!("anchor misses path end {end}"));
        }
        if a.iter().any(|&v| v != end && used[v]) {
            return invalid("anchor meets the cycle or a path");
        }
        if !g.is_connected_set(a) {
            return invalid("anchor is not connected");
        }
    }
    // Anchors contain exactly the two path ends among the used vertices.
    let shared = (0..n).filter(|&v| used[v] && anchors[v]).count();
    if shared != 2 {
        return invalid("anchor overlaps the wrong path");
    }
    Ok(())
}
