use serde::{Deserialize, Serialize};

use super::{CycleExtender, GadgetError, NiceSpider};
use crate::expander::connect::bfs_path;
use crate::graph::{chords_of, mask_of, ChordedCycle, Cycle, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Gadget {
    Spider(NiceSpider),
    Extender(CycleExtender),
}

impl Gadget {
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Gadget::Spider(s) => s.vertices(),
            Gadget::Extender(e) => e.vertices(),
        }
    }

    /// The edge this gadget turns into a chord of the chained cycle.
    pub fn chord(&self) -> (Vertex, Vertex) {
        let (u, v) = match self {
            Gadget::Spider(s) => (s.center, s.leaves[1]),
            Gadget::Extender(e) => (e.p1.first(), e.p2.first()),
        };
        (u.min(v), u.max(v))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainOutcome {
    pub cycle: ChordedCycle,
    /// Indices into the input spider and extender lists that were chained.
    pub spiders: Vec<usize>,
    pub extenders: Vec<usize>,
    pub dropped: usize,
}

/// One stretch of the chained cycle entered through `entry` and left
/// through `exit`.
enum Segment {
    /// `z1`, leg, center, leg, `z3`.
    Body(usize),
    /// Entered from the even half of `N(z2)`, left by the odd half.
    Hub(usize, Vec<Vertex>, Vec<Vertex>),
    /// `a1`, `p1`, the long way round the cycle, `p2`, `a2`.
    Extender(usize),
}

impl Segment {
    fn gadget(&self) -> usize {
        match self {
            Segment::Body(i) | Segment::Hub(i, _, _) | Segment::Extender(i) => *i,
        }
    }
}

struct Chain<'a> {
    g: &'a Graph,
    gadgets: &'a [Gadget],
    max_link_len: usize,
}

impl Chain<'_> {
    fn entry(&self, s: &Segment) -> Vec<Vertex> {
        match s {
            Segment::Body(i) => match &self.gadgets[*i] {
                Gadget::Spider(sp) => vec![sp.leaves[0]],
                _ => unreachable!(),
            },
            Segment::Hub(_, l, _) => l.clone(),
            Segment::Extender(i) => match &self.gadgets[*i] {
                Gadget::Extender(e) => e.a1.clone(),
                _ => unreachable!(),
            },
        }
    }

    fn exit(&self, s: &Segment) -> Vec<Vertex> {
        match s {
            Segment::Body(i) => match &self.gadgets[*i] {
                Gadget::Spider(sp) => vec![sp.leaves[2]],
                _ => unreachable!(),
            },
            Segment::Hub(_, _, r) => r.clone(),
            Segment::Extender(i) => match &self.gadgets[*i] {
                Gadget::Extender(e) => e.a2.clone(),
                _ => unreachable!(),
            },
        }
    }

    /// Walk through the segment from `e` to `x`.
    fn realize(&self, s: &Segment, e: Vertex, x: Vertex) -> Vec<Vertex> {
        match s {
            Segment::Body(i) => {
                let Gadget::Spider(sp) = &self.gadgets[*i] else { unreachable!() };
                let mut w: Vec<Vertex> = sp.legs[0].vertices().iter().rev().copied().collect();
                w.extend(&sp.legs[2].vertices()[1..]);
                w
            }
            Segment::Hub(i, _, _) => {
                let Gadget::Spider(sp) = &self.gadgets[*i] else { unreachable!() };
                vec![e, sp.leaves[1], x]
            }
            Segment::Extender(i) => {
                let Gadget::Extender(ext) = &self.gadgets[*i] else { unreachable!() };
                let mut w = self.inside(&ext.a1, e, ext.p1.last());
                w.extend(ext.p1.vertices().iter().rev().skip(1));
                let cyc = ext.cycle.vertices();
                let l = cyc.len();
                let s1 = cyc.iter().position(|&v| v == ext.p1.first()).unwrap();
                let s2 = cyc.iter().position(|&v| v == ext.p2.first()).unwrap();
                // Step away from the p2 attachment.
                let step = if (s1 + 1) % l == s2 { l - 1 } else { 1 };
                w.extend((1..l).map(|k| cyc[(s1 + k * step) % l]));
                w.extend(&ext.p2.vertices()[1..]);
                w.extend(&self.inside(&ext.a2, ext.p2.last(), x)[1..]);
                w
            }
        }
    }

    /// Shortest path from `from` to `to` inside `g[set]`.
    fn inside(&self, set: &[Vertex], from: Vertex, to: Vertex) -> Vec<Vertex> {
        let blocked: Vec<bool> = mask_of(self.g.n(), set).into_iter().map(|b| !b).collect();
        let mut target = vec![false; self.g.n()];
        target[to] = true;
        bfs_path(self.g, &[from], &target, &blocked, None).expect("anchor is connected")
    }

    /// Links every segment to the next, cyclically, then assembles.
    fn run(&self, segments: &[Segment], reserved: &[bool]) -> Result<Vec<Vertex>, (usize, Vec<bool>)> {
        let n = self.g.n();
        let k = segments.len();
        let mut used = vec![false; n];
        let mut links: Vec<Vec<Vertex>> = Vec::with_capacity(k);
        for t in 0..k {
            let from: Vec<Vertex> = self.exit(&segments[t]).into_iter().filter(|&v| !used[v]).collect();
            let to: Vec<Vertex> = self.entry(&segments[(t + 1) % k]).into_iter().filter(|&v| !used[v]).collect();
            let mut blocked: Vec<bool> = (0..n).map(|v| reserved[v] || used[v]).collect();
            let mut target = vec![false; n];
            for &v in &to {
                target[v] = true;
                blocked[v] = false;
            }
            for &v in &from {
                blocked[v] = false;
            }
            let Some(p) = bfs_path(self.g, &from, &target, &blocked, Some(self.max_link_len)) else {
                return Err((t, used));
            };
            if p.len() < 2 {
                return Err((t, used));
            }
            for &v in &p {
                used[v] = true;
            }
            links.push(p);
        }
        let mut seq = Vec::new();
        for t in 0..k {
            let e = *links[(t + k - 1) % k].last().unwrap();
            let x = links[t][0];
            seq.extend(self.realize(&segments[t], e, x));
            let l = &links[t];
            seq.extend(&l[1..l.len() - 1]);
        }
        Ok(seq)
    }
}

/// Order gadgets greedily: each next gadget is the one nearest (by BFS
/// distance) to the previous.
fn nearest_neighbour_order(g: &Graph, gadgets: &[Gadget], alive: &[usize]) -> Vec<usize> {
    if alive.is_empty() {
        return Vec::new();
    }
    let mut order = vec![alive[0]];
    let mut left: Vec<usize> = alive[1..].to_vec();
    while !left.is_empty() {
        let cur = *order.last().unwrap();
        let dist = g.bfs_distances(&gadgets[cur].vertices(), None);
        let (pos, _) = left
            .iter()
            .enumerate()
            .map(|(p, &i)| {
                let d = gadgets[i].vertices().iter().filter_map(|&v| dist[v]).min().unwrap_or(usize::MAX);
                (p, (d, i))
            })
            .min_by_key(|&(_, key)| key)
            .unwrap();
        order.push(left.remove(pos));
    }
    order
}

const HUB_CAP: usize = 8;

/// Threads the gadgets onto one cycle by vertex-disjoint links of length at
/// most `max_link_len`: spider bodies and extenders in a forward pass, then
/// the spiders' `z2` hubs in reverse. Each gadget's chord survives. After a
/// failed link the gadget with the fewest free vertices around its ports is
/// dropped and chaining restarts.
pub fn chain_gadgets(
    g: &Graph,
    spiders: &[NiceSpider],
    extenders: &[CycleExtender],
    max_link_len: usize,
) -> Result<ChainOutcome, GadgetError> {
    let n = g.n();
    let gadgets: Vec<Gadget> = spiders
        .iter()
        .cloned()
        .map(Gadget::Spider)
        .chain(extenders.iter().cloned().map(Gadget::Extender))
        .collect();
    if gadgets.is_empty() {
        return Err(GadgetError::NothingToChain);
    }
    let mut owner = vec![usize::MAX; n];
    for (i, gd) in gadgets.iter().enumerate() {
        for v in gd.vertices() {
            if v >= n || owner[v] != usize::MAX {
                return Err(GadgetError::InvalidInput(format!("gadgets overlap at {v}")));
            }
            owner[v] = i;
        }
    }
    let chain = Chain {
        g,
        gadgets: &gadgets,
        max_link_len: max_link_len.max(1),
    };
    // Hubs: free neighbours of z2 claimed round-robin, at most HUB_CAP per
    // spider, halved by sorted parity.
    let mut claimed = vec![usize::MAX; n];
    let mut hubs: Vec<Vec<Vertex>> = vec![Vec::new(); gadgets.len()];
    let candidates: Vec<Vec<Vertex>> = gadgets
        .iter()
        .map(|gd| match gd {
            Gadget::Spider(s) => {
                let mut nb: Vec<Vertex> =
                    g.neighbors(s.leaves[1]).iter().copied().filter(|&w| owner[w] == usize::MAX).collect();
                nb.sort_unstable();
                nb
            }
            Gadget::Extender(_) => Vec::new(),
        })
        .collect();
    let mut cursor = vec![0usize; gadgets.len()];
    for _ in 0..HUB_CAP {
        for (i, cand) in candidates.iter().enumerate() {
            while cursor[i] < cand.len() && claimed[cand[cursor[i]]] != usize::MAX {
                cursor[i] += 1;
            }
            if let Some(&w) = cand.get(cursor[i]) {
                claimed[w] = i;
                hubs[i].push(w);
            }
        }
    }
    let hub_sets: Vec<Option<(Vec<Vertex>, Vec<Vertex>)>> = hubs
        .into_iter()
        .map(|mut nb| {
            nb.sort_unstable();
            let l: Vec<Vertex> = nb.iter().copied().step_by(2).collect();
            let r: Vec<Vertex> = nb.iter().copied().skip(1).step_by(2).collect();
            (!l.is_empty() && !r.is_empty()).then_some((l, r))
        })
        .collect();

    let mut alive: Vec<usize> = (0..gadgets.len())
        .filter(|&i| !matches!(gadgets[i], Gadget::Spider(_)) || hub_sets[i].is_some())
        .collect();
    let mut dropped = gadgets.len() - alive.len();
    loop {
        if alive.is_empty() {
            return Err(GadgetError::Link {
                index: 0,
                reason: "every gadget was dropped".into(),
            });
        }
        // Dropped gadgets release their vertices and hubs.
        let mut live = vec![false; gadgets.len()];
        for &i in &alive {
            live[i] = true;
        }
        let reserved: Vec<bool> = (0..n)
            .map(|v| [owner[v], claimed[v]].iter().any(|&o| o != usize::MAX && live[o]))
            .collect();
        let order = nearest_neighbour_order(g, &gadgets, &alive);
        let mut segments: Vec<Segment> = order
            .iter()
            .map(|&i| match gadgets[i] {
                Gadget::Spider(_) => Segment::Body(i),
                Gadget::Extender(_) => Segment::Extender(i),
            })
            .collect();
        for &i in order.iter().rev() {
            if let Some((l, r)) = &hub_sets[i] {
                segments.push(Segment::Hub(i, l.clone(), r.clone()));
            }
        }
        match chain.run(&segments, &reserved) {
            Ok(seq) => {
                let cycle = Cycle::new(g, seq).map_err(|e| GadgetError::Invalid(e.to_string()))?;
                let cc = chords_of(g, &cycle).map_err(|e| GadgetError::Invalid(e.to_string()))?;
                for &i in &order {
                    let c = gadgets[i].chord();
                    assert!(cc.chords.binary_search(&c).is_ok(), "gadget chord {c:?} missing");
                }
                assert!(cc.chord_count() >= order.len());
                let (mut sp, mut ex): (Vec<usize>, Vec<usize>) = order.iter().partition(|&&i| i < spiders.len());
                sp.sort_unstable();
                ex.sort_unstable();
                return Ok(ChainOutcome {
                    cycle: cc,
                    spiders: sp,
                    extenders: ex.into_iter().map(|i| i - spiders.len()).collect(),
                    dropped,
                });
            }
            Err((index, used)) => {
                if alive.len() == 1 {
                    return Err(GadgetError::Link {
                        index,
                        reason: "no link within the length bound".into(),
                    });
                }
                let free_ports = |i: usize| -> usize {
                    let ports: Vec<Vertex> = match &gadgets[i] {
                        Gadget::Spider(s) => vec![s.leaves[0], s.leaves[1], s.leaves[2]],
                        Gadget::Extender(e) => e.a1.iter().chain(&e.a2).copied().collect(),
                    };
                    g.neighborhood(&ports).iter().filter(|&&w| !reserved[w] && !used[w]).count()
                };
                // Drop one of the two gadgets the failed link was meant to join.
                let k = segments.len();
                let ends = [segments[index].gadget(), segments[(index + 1) % k].gadget()];
                let worst = ends.into_iter().min_by_key(|&i| (free_ports(i), i)).unwrap();
                alive.retain(|&i| i != worst);
                dropped += 1;
            }
        }
    }
}
