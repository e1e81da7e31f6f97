use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{position_map, CycleError};
use crate::graph::{chords_of, ChordedCycle, Cycle, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortenOutcome {
    pub cycle: ChordedCycle,
    /// False when no further shortcut existed while still above `hi`.
    pub in_range: bool,
    pub iterations: usize,
}

/// Number of shortcut origins tried per iteration.
const ORIGINS: usize = 8;

struct Candidate {
    new_len: usize,
    x: usize,
    y: usize,
    /// Replace the arc running forward from `x` to `y`.
    forward: bool,
    /// Shortcut from `x` to `y`, internally off the cycle.
    path: Vec<Vertex>,
}

/// Repeatedly replaces an arc of the cycle by a shorter path through
/// vertices off the cycle. The first chord `(a, b)` is protected: the
/// cycle vertices within distance `max(1, hi/8)` of `a` or `b` along the
/// cycle are never removed, so `(a, b)` remains a chord throughout.
pub fn shorten_chorded_cycle(
    g: &Graph,
    cc: &ChordedCycle,
    lo: usize,
    hi: usize,
) -> Result<ShortenOutcome, CycleError> {
    if lo >= hi {
        return Err(CycleError::InvalidInput(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    let mut current = chords_of(g, &cc.cycle)?;
    let Some(&(a, b)) = cc.chords.first() else {
        return Err(CycleError::InvalidInput("cycle has no chord".into()));
    };
    if current.chords.binary_search(&(a, b)).is_err() {
        return Err(CycleError::InvalidInput(format!("({a},{b}) is not a chord")));
    }
    if current.len() < lo {
        return Err(CycleError::TooShort {
            len: current.len(),
            lo,
        });
    }
    let radius = (hi / 8).max(1);
    let mut iterations = 0;
    while current.len() > hi {
        let Some(c) = best_shortcut(g, current.vertices(), (a, b), radius, lo, hi) else {
            return Ok(ShortenOutcome {
                cycle: current,
                in_range: false,
                iterations,
            });
        };
        let next = apply(current.vertices(), &c);
        let next = chords_of(g, &Cycle::new_unchecked(next)).expect("shortcut yields a cycle");
        assert!(next.len() < current.len(), "shortening must strictly decrease length");
        assert!(next.chords.binary_search(&(a, b)).is_ok(), "protected chord lost");
        current = next;
        iterations += 1;
    }
    Ok(ShortenOutcome {
        cycle: current,
        in_range: true,
        iterations,
    })
}

fn apply(cyc: &[Vertex], c: &Candidate) -> Vec<Vertex> {
    let l = cyc.len();
    let walk = |from: usize, to: usize| -> Vec<Vertex> {
        let steps = (to + l - from) % l;
        (0..=steps).map(|s| cyc[(from + s) % l]).collect()
    };
    let q = &c.path;
    if c.forward {
        // keep y .. x, return to y through the shortcut
        let mut seq = walk(c.y, c.x);
        seq.extend(&q[1..q.len() - 1]);
        seq
    } else {
        let mut seq = walk(c.x, c.y);
        seq.extend(q[1..q.len() - 1].iter().rev());
        seq
    }
}

fn best_shortcut(
    g: &Graph,
    cyc: &[Vertex],
    chord: (Vertex, Vertex),
    radius: usize,
    lo: usize,
    hi: usize,
) -> Option<Candidate> {
    let n = g.n();
    let l = cyc.len();
    let pos = position_map(n, cyc);
    let mut protected = vec![false; l];
    for v in [chord.0, chord.1] {
        let p = pos[v];
        for d in 0..=radius.min(l) {
            protected[(p + d) % l] = true;
            protected[(p + l - d % l) % l] = true;
        }
    }
    // prefix[i] = protected positions among 0..i, over two laps
    let mut prefix = vec![0usize; 2 * l + 1];
    for i in 0..2 * l {
        prefix[i + 1] = prefix[i] + protected[i % l] as usize;
    }
    let interior_clear = |from: usize, to: usize| {
        // open interval from -> to, walking forward
        let end = if to > from { to } else { to + l };
        prefix[end] - prefix[from + 1] == 0
    };
    let free: Vec<usize> = (0..l).filter(|&i| !protected[i]).collect();
    if free.len() < 2 {
        return None;
    }
    let origins: Vec<usize> = (0..ORIGINS.min(free.len()))
        .map(|i| free[i * free.len() / ORIGINS.min(free.len())])
        .collect();

    let mut best: Option<Candidate> = None;
    let better = |c: &Candidate, b: &Candidate| -> bool {
        let in_c = c.new_len <= hi;
        let in_b = b.new_len <= hi;
        match (in_c, in_b) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => c.new_len > b.new_len,
            (false, false) => c.new_len < b.new_len,
        }
    };
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for &px in &origins {
        let x = cyc[px];
        let touched = off_cycle_bfs(g, x, &pos, &mut dist, &mut parent);
        for &py in &free {
            if py == px {
                continue;
            }
            let y = cyc[py];
            let (q, via) = shortcut_to(g, x, y, &pos, &dist);
            let Some(q) = q else { continue };
            let fwd = (py + l - px) % l;
            for (forward, arc) in [(true, fwd), (false, l - fwd)] {
                if arc < 2 || q >= arc {
                    continue;
                }
                let clear = if forward { interior_clear(px, py) } else { interior_clear(py, px) };
                if !clear {
                    continue;
                }
                let new_len = l - arc + q;
                if new_len < lo || new_len < 3 {
                    continue;
                }
                let cand = Candidate {
                    new_len,
                    x: px,
                    y: py,
                    forward,
                    path: Vec::new(),
                };
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    let mut path = vec![y];
                    let mut cur = via;
                    while cur != usize::MAX {
                        path.push(cur);
                        cur = parent[cur];
                    }
                    if *path.last().unwrap() != x {
                        path.push(x);
                    }
                    path.reverse();
                    best = Some(Candidate { path, ..cand });
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    best
}

/// BFS from `x` through vertices off the cycle; returns touched vertices.
fn off_cycle_bfs(
    g: &Graph,
    x: Vertex,
    pos: &[usize],
    dist: &mut [usize],
    parent: &mut [usize],
) -> Vec<Vertex> {
    let mut touched = vec![x];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if pos[w] == usize::MAX && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = if u == x { usize::MAX } else { u };
                touched.push(w);
                queue.push_back(w);
            }
        }
    }
    dist[x] = usize::MAX;
    touched
}

/// Length of the shortest `x`–`y` path whose interior avoids the cycle, and
/// the last interior vertex (`usize::MAX` for a direct edge).
fn shortcut_to(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    pos: &[usize],
    dist: &[usize],
) -> (Option<usize>, usize) {
    if g.has_edge(x, y) {
        return (Some(1), usize::MAX);
    }
    g.neighbors(y)
        .iter()
        .copied()
        .filter(|&u| pos[u] == usize::MAX && dist[u] != usize::MAX)
        .min_by_key(|&u| (dist[u], u))
        .map_or((None, usize::MAX), |u| (Some(dist[u] + 1), u))
}
