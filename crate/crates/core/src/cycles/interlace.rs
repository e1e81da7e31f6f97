use serde::{Deserialize, Serialize};

use super::longpath::longest_path_heuristic;
use super::rotation::posa_closure_bounded;
use super::{position_map, CycleError};
use crate::expander::connect::bfs_path;
use crate::graph::{chords_of, ChordedCycle, Cycle, Graph, GraphError, Vertex};

/// A chorded cycle with two chords `(a, b)`, `(c, d)` whose endpoints occur
/// around the cycle in the order `a, c, b, d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacedCycle {
    pub chorded: ChordedCycle,
    pub pair: [(Vertex, Vertex); 2],
}

impl InterlacedCycle {
    pub fn verify(&self, g: &Graph) -> Result<(), GraphError> {
        self.chorded.verify(g)?;
        let bad = |m: &str| Err(GraphError::InvalidChords(m.to_string()));
        let [(a, b), (c, d)] = self.pair;
        for (x, y) in self.pair {
            let key = (x.min(y), x.max(y));
            if self.chorded.chords.binary_search(&key).is_err() {
                return bad("pair chord missing from chord set");
            }
        }
        let cyc = self.chorded.vertices();
        let k = cyc.len();
        let Some(pa) = cyc.iter().position(|&v| v == a) else {
            return bad("pair endpoint off the cycle");
        };
        let rel = |v: Vertex| cyc.iter().position(|&x| x == v).map(|p| (p + k - pa) % k);
        match (rel(c), rel(b), rel(d)) {
            (Some(rc), Some(rb), Some(rd)) if 0 < rc && rc < rb && rb < rd => Ok(()),
            _ => bad("pair chords do not interlace"),
        }
    }
}

/// Two chords of `cc` that cross, oriented so their endpoints read
/// `a, c, b, d` along the cycle. Chords sharing an endpoint never cross.
pub fn find_crossing_pair(cc: &ChordedCycle) -> Option<[(Vertex, Vertex); 2]> {
    let cyc = cc.vertices();
    let mut pos = std::collections::HashMap::with_capacity(cyc.len());
    for (i, &v) in cyc.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut iv: Vec<(usize, usize)> = cc
        .chords
        .iter()
        .map(|&(x, y)| {
            let (p, q) = (pos[&x], pos[&y]);
            (p.min(q), p.max(q))
        })
        .collect();
    iv.sort_unstable_by(|l, r| l.0.cmp(&r.0).then(r.1.cmp(&l.1)));
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in &iv {
        while stack.last().is_some_and(|&(_, e)| e <= a) {
            stack.pop();
        }
        if let Some(&(ta, tb)) = stack.last() {
            if tb < b {
                debug_assert!(ta < a && a < tb);
                return Some([(cyc[ta], cyc[tb]), (cyc[a], cyc[b])]);
            }
        }
        stack.push((a, b));
    }
    None
}

fn try_cycle(g: &Graph, seq: Vec<Vertex>) -> Option<InterlacedCycle> {
    let cc = chords_of(g, &Cycle::new_unchecked(seq)).ok()?;
    let pair = find_crossing_pair(&cc)?;
    Some(InterlacedCycle { chorded: cc, pair })
}

const MAX_FALLBACK: usize = 256;

/// Long path, rotation closure from one end, then the cycle closed by each
/// reachable endpoint through its furthest neighbour, scanned for crossing
/// chords; the first hit is compacted.
pub fn find_interlaced_cycle(g: &Graph) -> Result<InterlacedCycle, CycleError> {
    let start = (0..g.n())
        .max_by_key(|&v| (g.degree(v), usize::MAX - v))
        .ok_or(CycleError::NoInterlacedCycle)?;
    if g.degree(start) < 3 {
        return Err(CycleError::NoInterlacedCycle);
    }
    let path = longest_path_heuristic(g, start);
    let found = scan_path(g, path.vertices()).or_else(|| {
        let closure = posa_closure_bounded(g, &path, path.first(), 64).ok()?;
        closure
            .endpoint_set
            .iter()
            .filter(|&&e| e != path.last())
            .find_map(|&e| closure.replay(e).and_then(|p| scan_path(g, p.vertices())))
    });
    let ic = found
        .or_else(|| fallback_scan(g, path.vertices()))
        .ok_or(CycleError::NoInterlacedCycle)?;
    let ic = compact_interlaced_cycle(g, &ic);
    debug_assert!(ic.verify(g).is_ok());
    Ok(ic)
}

/// Cycles through either end of `path` and its furthest path neighbour.
fn scan_path(g: &Graph, path: &[Vertex]) -> Option<InterlacedCycle> {
    let pos = position_map(g.n(), path);
    let k = path.len().checked_sub(1)?;
    let y = path[k];
    let j = g.neighbors(y).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).min()?;
    if k >= j + 3 {
        if let Some(ic) = try_cycle(g, path[j..].to_vec()) {
            return Some(ic);
        }
    }
    let x = path[0];
    let j = g.neighbors(x).iter().map(|&w| pos[w]).filter(|&p| p != usize::MAX).max()?;
    if j >= 3 {
        return try_cycle(g, path[..=j].to_vec());
    }
    None
}

/// Every path vertex closed to its furthest earlier neighbour.
fn fallback_scan(g: &Graph, path: &[Vertex]) -> Option<InterlacedCycle> {
    let pos = position_map(g.n(), path);
    let mut tried = 0;
    for (i, &v) in path.iter().enumerate() {
        let Some(j) = g.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p + 3 <= i).min() else {
            continue;
        };
        tried += 1;
        if let Some(ic) = try_cycle(g, path[j..=i].to_vec()) {
            return Some(ic);
        }
        if tried >= MAX_FALLBACK {
            break;
        }
    }
    None
}

/// Replaces each of the four arcs between the pair's endpoints by a shortest
/// path avoiding the other three arcs, keeping both interlacing chords.
pub fn compact_interlaced_cycle(g: &Graph, ic: &InterlacedCycle) -> InterlacedCycle {
    let cyc = ic.chorded.vertices();
    let k = cyc.len();
    let [(a, b), (c, d)] = ic.pair;
    let pa = cyc.iter().position(|&v| v == a).unwrap();
    let at = |v: Vertex| (cyc.iter().position(|&x| x == v).unwrap() + k - pa) % k;
    let (rc, rb, rd) = (at(c), at(b), at(d));
    let walk = |from: usize, to: usize| -> Vec<Vertex> { (from..=to).map(|r| cyc[(pa + r) % k]).collect() };
    let mut arcs = vec![walk(0, rc), walk(rc, rb), walk(rb, rd), walk(rd, k)];

    let n = g.n();
    for i in 0..4 {
        let mut blocked = vec![false; n];
        for (j, arc) in arcs.iter().enumerate() {
            if j != i {
                for &v in arc {
                    blocked[v] = true;
                }
            }
        }
        let (s, t) = (arcs[i][0], *arcs[i].last().unwrap());
        blocked[s] = false;
        blocked[t] = false;
        let len = arcs[i].len() - 1;
        if len <= 1 {
            continue;
        }
        let mut target = vec![false; n];
        target[t] = true;
        if let Some(p) = bfs_path(g, &[s], &target, &blocked, Some(len - 1)) {
            arcs[i] = p;
        }
    }
    let mut seq: Vec<Vertex> = arcs[0].clone();
    seq.extend(&arcs[1][1..]);
    seq.extend(&arcs[2][1..]);
    seq.extend(&arcs[3][1..arcs[3].len() - 1]);
    let chorded = chords_of(g, &Cycle::new_unchecked(seq)).expect("compacted arcs form a cycle");
    InterlacedCycle {
        chorded,
        pair: ic.pair,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle};

    #[test]
    fn k5_has_interlacing_chords() {
        let g = complete(5);
        let ic = find_interlaced_cycle(&g).unwrap();
        ic.verify(&g).unwrap();
        let manual = InterlacedCycle {
            chorded: chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3, 4]).unwrap()).unwrap(),
            pair: [(0, 2), (1, 3)],
        };
        manual.verify(&g).unwrap();
    }

    #[test]
    fn chordless_cycle_fails() {
        assert_eq!(find_interlaced_cycle(&cycle(6)), Err(CycleError::NoInterlacedCycle));
    }

    #[test]
    fn k10_compacts_to_four() {
        let g = complete(10);
        let ic = find_interlaced_cycle(&g).unwrap();
        ic.verify(&g).unwrap();
        assert_eq!(ic.chorded.len(), 4);
    }

    #[test]
    fn shared_endpoint_chords_do_not_cross() {
        let g = complete(6);
        let cc = ChordedCycle {
            cycle: Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap(),
            chords: vec![(0, 2), (0, 3), (0, 4)],
        };
        assert_eq!(find_crossing_pair(&cc), None);
        let cc = ChordedCycle {
            chords: vec![(0, 3), (1, 4)],
            ..cc
        };
        assert_eq!(find_crossing_pair(&cc), Some([(0, 3), (1, 4)]));
    }

    #[test]
    fn verify_rejects_nested_pair() {
        let g = complete(6);
        let cc = chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap()).unwrap();
        let ic = InterlacedCycle {
            chorded: cc,
            pair: [(0, 4), (1, 3)],
        };
        assert!(ic.verify(&g).is_err());
    }
}
