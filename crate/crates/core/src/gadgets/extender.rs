use serde::{Deserialize, Serialize};

use super::{route_to_anchor_sets, validate_extender, CycleExtender, GadgetError};
use crate::cycles::{extend_via_disjoint_paths, find_interlaced_cycle, shorten_chorded_cycle};
use crate::expander::{clean_for_expansion, find_low_diameter_set_in};
use crate::graph::{mask_of, min_degree_core, ChordedCycle, Cycle, Graph, Path, Subgraph, Vertex};

/// Sizes for one cycle extender. `max_path_len` bounds each route from the
/// cycle to an anchor; the assembled paths also carry up to one cycle arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetParams {
    /// Preferred core degree; lowered towards `core_floor` while the core
    /// is empty.
    pub core_degree: usize,
    pub core_floor: usize,
    pub anchor_size: usize,
    pub anchor_diameter: usize,
    pub max_cycle_len: usize,
    pub max_path_len: usize,
    pub danger_threshold: usize,
    pub clean_alpha: f64,
    pub seed: u64,
}

impl GadgetParams {
    pub fn for_n(n: usize) -> GadgetParams {
        let log = (n.max(2) as f64).log2();
        let anchor_size = ((n as f64).powf(0.25).floor() as usize).max(4);
        GadgetParams {
            core_degree: 10,
            core_floor: 6,
            anchor_size,
            anchor_diameter: (2 * log.ceil() as usize).max(2),
            max_cycle_len: (log.powi(3).ceil() as usize).max(4),
            max_path_len: (log.powi(2).ceil() as usize).max(1),
            danger_threshold: (anchor_size / 16).max(2),
            clean_alpha: 0.1,
            seed: 0,
        }
    }
}

fn stage<E: std::fmt::Display>(name: &'static str) -> impl Fn(E) -> GadgetError {
    move |e| GadgetError::Stage {
        stage: name,
        reason: e.to_string(),
    }
}

/// Builds one cycle extender in `g - forbidden`: minimum-degree core, a
/// cycle with interlacing chords, cleaning around it, a long cycle in the rest,
/// extension, shortening, three anchors, routing, and assembly.
pub fn build_cycle_extender(
    g: &Graph,
    forbidden: &[Vertex],
    params: &GadgetParams,
) -> Result<CycleExtender, GadgetError> {
    let mut keep = vec![true; g.n()];
    for &v in forbidden {
        keep[v] = false;
    }
    let free = g.induced(&keep);
    let floor = params.core_floor.clamp(3, params.core_degree.max(3));
    let core = (floor..=params.core_degree.max(floor))
        .rev()
        .map(|d| min_degree_core(&free.graph, d))
        .find(|c| c.graph.n() > 0)
        .ok_or_else(|| stage("core")(format!("empty {floor}-core")))?;
    let core = largest_component(&core).compose(&core).compose(&free);
    let h = &core.graph;

    let ic = find_interlaced_cycle(h).map_err(stage("interlaced-cycle"))?;
    let clean = clean_for_expansion(h, ic.chorded.vertices(), params.clean_alpha, true)
        .map_err(stage("clean"))?;

    let mut allowed = vec![false; h.n()];
    for &v in &clean.residual.lift(&(0..clean.residual.graph.n()).collect::<Vec<_>>()) {
        allowed[v] = true;
    }
    let c_prime = crate::cycles::long_cycle_within(h, &allowed, params.seed)
        .ok_or_else(|| stage("long-cycle")("no cycle in the cleaned region"))?;
    let extended = extend_via_disjoint_paths(h, &ic, &Cycle::new_unchecked(c_prime)).map_err(stage("extend"))?;

    // The cycle arcs end up inside p1 and p2, so aim for the path bound.
    let hi = params.max_path_len.clamp(8, params.max_cycle_len.max(8));
    let cc = if extended.len() > hi {
        let lo = (hi / 2).max(4);
        let out = shorten_chorded_cycle(h, &extended, lo, hi).map_err(stage("shorten"))?;
        if !out.in_range {
            return Err(stage("shorten")(format!("stuck at length {}", out.cycle.len())));
        }
        out.cycle
    } else {
        extended
    };

    let anchors = find_anchors(h, &cc, params).map_err(stage("anchors"))?;
    let routes = route_to_anchor_sets(h, &cc, &anchors, params.max_path_len, params.danger_threshold)
        .map_err(|e| stage("route")(e))?;
    let local = assemble(h, &cc, &routes, params);
    validate_extender(h, &local).map_err(stage("assemble"))?;

    let lift = |v: Vertex| core.host(v);
    let ext = CycleExtender {
        cycle: local.cycle.map(lift),
        p1: local.p1.map(lift),
        p2: local.p2.map(lift),
        a1: core.lift(&local.a1),
        a2: core.lift(&local.a2),
        ..local
    };
    validate_extender(g, &ext).expect("lifted extender is valid");
    Ok(ext)
}

fn largest_component(s: &Subgraph) -> Subgraph {
    let comps = s.graph.components();
    let best = comps.iter().max_by_key(|c| c.len()).cloned().unwrap_or_default();
    s.graph.induced_by(&best)
}

/// Three disjoint low-diameter sets off the cycle, grown from the vertices
/// nearest to it.
fn find_anchors(g: &Graph, cc: &ChordedCycle, params: &GadgetParams) -> Result<[Vec<Vertex>; 3], GadgetError> {
    let n = g.n();
    let on_cycle = mask_of(n, cc.vertices());
    let mut allowed: Vec<bool> = on_cycle.iter().map(|&b| !b).collect();
    let dist = g.bfs_distances(cc.vertices(), None);
    let mut roots: Vec<Vertex> = (0..n).filter(|&v| allowed[v] && dist[v].is_some()).collect();
    roots.sort_by_key(|&v| (dist[v], v));
    let mut out: [Vec<Vertex>; 3] = Default::default();
    for slot in &mut out {
        let set = find_low_diameter_set_in(g, params.anchor_size, params.anchor_diameter, &allowed, &roots)
            .map_err(|e| GadgetError::Stage {
                stage: "anchors",
                reason: e.to_string(),
            })?;
        for &v in &set {
            allowed[v] = false;
        }
        roots.retain(|&v| allowed[v]);
        *slot = set;
    }
    Ok(out)
}

/// The cycle keeps the arc from `y` round to `x` and closes through the
/// chord; `p1` walks from `x` to the first route start, `p2` from `y` back
/// to the second.
fn assemble(g: &Graph, cc: &ChordedCycle, r: &super::AnchorRoutes, params: &GadgetParams) -> CycleExtender {
    let cyc = cc.vertices();
    let l = cyc.len();
    let (x, y) = r.chord;
    let at = |v: Vertex| cyc.iter().position(|&w| w == v).unwrap();
    let px = at(x);
    let rank = |v: Vertex| (at(v) + l - px) % l;
    let (ri, rj, ry) = (rank(r.p_i.first()), rank(r.p_j.first()), rank(y));
    debug_assert!(ri < rj && rj <= ry);
    let cycle: Vec<Vertex> = (ry..=l).map(|k| cyc[(px + k) % l]).collect();
    let mut p1: Vec<Vertex> = (0..ri).map(|k| cyc[(px + k) % l]).collect();
    p1.extend(r.p_i.vertices());
    let mut p2: Vec<Vertex> = (rj + 1..=ry).rev().map(|k| cyc[(px + k) % l]).collect();
    p2.extend(r.p_j.vertices());

    let size = r.a_i.len().min(r.a_j.len());
    let a1 = trim_connected(g, &r.a_i, r.p_i.last(), size);
    let a2 = trim_connected(g, &r.a_j, r.p_j.last(), size);
    CycleExtender {
        cycle: Cycle::new_unchecked(cycle),
        p1: Path::new_unchecked(p1),
        p2: Path::new_unchecked(p2),
        a1,
        a2,
        anchor_size: size,
        max_cycle_len: params.max_cycle_len,
        max_path_len: params.max_path_len + params.max_cycle_len,
    }
}

/// The first `size` vertices of a BFS of `g[set]` from `root`, sorted.
fn trim_connected(g: &Graph, set: &[Vertex], root: Vertex, size: usize) -> Vec<Vertex> {
    let tree = super::RootedTree::bfs(g, set, root).expect("anchor part is connected");
    let mut out = tree.order[..size].to_vec();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle};

    fn small_params() -> GadgetParams {
        GadgetParams {
            anchor_size: 3,
            anchor_diameter: 2,
            max_cycle_len: 12,
            max_path_len: 4,
            ..GadgetParams::for_n(30)
        }
    }

    #[test]
    fn k30_yields_extender() {
        let g = complete(30);
        let e = build_cycle_extender(&g, &[], &small_params()).unwrap();
        validate_extender(&g, &e).unwrap();
        assert_eq!(e.anchor_size, 3);
    }

    #[test]
    fn forbidden_vertices_are_avoided() {
        let g = complete(40);
        let forbidden: Vec<Vertex> = (0..10).collect();
        let e = build_cycle_extender(&g, &forbidden, &small_params()).unwrap();
        assert!(e.vertices().iter().all(|&v| v >= 10));
    }

    #[test]
    fn long_cycle_has_empty_core() {
        let err = build_cycle_extender(&cycle(100), &[], &small_params()).unwrap_err();
        assert!(matches!(err, GadgetError::Stage { stage: "core", .. }));
    }
}
