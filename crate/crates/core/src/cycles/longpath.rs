use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CycleError;
use crate::expander::connect::bfs_path;
use crate::graph::{Cycle, Graph, Path, Vertex};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongCycle {
    pub cycle: Cycle,
    pub meets_min_len: bool,
}

/// A path kept together with its position index, supporting in-place
/// rotations.
struct Walk<'a> {
    g: &'a Graph,
    path: Vec<Vertex>,
    pos: Vec<usize>,
    /// Vertices that may be used at all.
    allowed: &'a [bool],
}

impl<'a> Walk<'a> {
    fn new(g: &'a Graph, allowed: &'a [bool], start: Vertex) -> Self {
        let mut pos = vec![NONE; g.n()];
        pos[start] = 0;
        Walk {
            g,
            path: vec![start],
            pos,
            allowed,
        }
    }

    fn free(&self, v: Vertex) -> bool {
        self.allowed[v] && self.pos[v] == NONE
    }

    fn unvisited_degree(&self, v: Vertex) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| self.free(w)).count()
    }

    fn end(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    fn push(&mut self, v: Vertex) {
        self.pos[v] = self.path.len();
        self.path.push(v);
    }

    fn reverse_from(&mut self, i: usize) {
        self.path[i..].reverse();
        for j in i..self.path.len() {
            self.pos[self.path[j]] = j;
        }
    }

    fn reverse_all(&mut self) {
        self.reverse_from(0);
    }

    /// Warnsdorff-style greedy extension at the end.
    fn extend_greedy(&mut self) {
        loop {
            let end = self.end();
            let next = self
                .g
                .neighbors(end)
                .iter()
                .copied()
                .filter(|&w| self.free(w))
                .min_by_key(|&w| (self.unvisited_degree(w), w));
            match next {
                Some(w) => self.push(w),
                None => return,
            }
        }
    }

    /// Looks for a rotation (depth at most two) after which the end has a
    /// free neighbour, applies it and returns true.
    fn rotate_to_extendable(&mut self, budget: &mut usize) -> bool {
        let k = self.path.len() - 1;
        let end = self.end();
        let nbrs: Vec<usize> = self
            .g
            .neighbors(end)
            .iter()
            .map(|&w| self.pos[w])
            .filter(|&i| i != NONE && i + 1 < k)
            .collect();
        for &i in &nbrs {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let e1 = self.path[i + 1];
            if self.unvisited_degree(e1) > 0 {
                self.reverse_from(i + 1);
                return true;
            }
        }
        for &i in &nbrs {
            let e1 = self.path[i + 1];
            // Position of v on the path after rotating at i.
            let pos1 = |v: usize| if v <= i { v } else { i + 1 + (k - v) };
            let at1 = |j: usize| if j <= i { self.path[j] } else { self.path[k - (j - i - 1)] };
            for &w in self.g.neighbors(e1) {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                let p = self.pos[w];
                if p == NONE {
                    continue;
                }
                let j = pos1(p);
                if j + 1 >= k {
                    continue;
                }
                let e2 = at1(j + 1);
                if self.unvisited_degree(e2) > 0 {
                    self.reverse_from(i + 1);
                    self.reverse_from(j + 1);
                    return true;
                }
            }
        }
        false
    }

    fn grow(&mut self, budget: &mut usize) {
        for _ in 0..2 {
            loop {
                self.extend_greedy();
                if !self.rotate_to_extendable(budget) {
                    break;
                }
            }
            self.reverse_all();
        }
    }
}

/// Long path by greedy extension plus Pósa rotations at both ends, starting
/// from `start`.
pub fn longest_path_heuristic(g: &Graph, start: Vertex) -> Path {
    let allowed = vec![true; g.n()];
    let mut budget = 64 * g.m().max(16);
    let mut walk = Walk::new(g, &allowed, start);
    walk.grow(&mut budget);
    Path::new_unchecked(walk.path)
}

pub(crate) fn long_path_within(g: &Graph, allowed: &[bool], start: Vertex) -> Vec<Vertex> {
    let mut budget = 64 * g.m().max(16);
    let mut walk = Walk::new(g, allowed, start);
    walk.grow(&mut budget);
    walk.path
}

/// Candidate cycles closing a maximal path; returns the longest.
fn close_path(g: &Graph, allowed: &[bool], path: &[Vertex]) -> Option<Vec<Vertex>> {
    let n = g.n();
    let k = path.len().checked_sub(1)?;
    let pos = super::position_map(n, path);
    let mut best: Option<Vec<Vertex>> = None;
    let x = path[0];
    let y = path[k];
    // End to its furthest path neighbour, both ends.
    if let Some(j) = g.neighbors(y).iter().map(|&w| pos[w]).filter(|&p| p != NONE).min() {
        if k >= j + 2 {
            offer(&mut best, path[j..].to_vec());
        }
    }
    if let Some(j) = g.neighbors(x).iter().map(|&w| pos[w]).filter(|&p| p != NONE).max() {
        if j >= 2 {
            offer(&mut best, path[..=j].to_vec());
        }
    }
    if k >= 2 {
        // x ~ path[j] and y ~ path[j-1] close the whole path.
        for &w in g.neighbors(x) {
            let j = pos[w];
            if j != NONE && j >= 2 && g.has_edge(y, path[j - 1]) {
                let mut c = path[..j].to_vec();
                c.extend(path[j..].iter().rev());
                offer(&mut best, c);
                break;
            }
        }
        if g.has_edge(x, y) {
            offer(&mut best, path.to_vec());
        }
        // A detour from y back to x through vertices off the path.
        let mut blocked: Vec<bool> = allowed.iter().map(|&a| !a).collect();
        for &v in &path[1..k] {
            blocked[v] = true;
        }
        blocked[y] = false;
        let mut target = vec![false; n];
        target[x] = true;
        let starts: Vec<Vertex> = g
            .neighbors(y)
            .iter()
            .copied()
            .filter(|&w| pos[w] == NONE && allowed[w])
            .collect();
        if !starts.is_empty() {
            blocked[y] = true;
            if let Some(detour) = bfs_path(g, &starts, &target, &blocked, None) {
                let mut c = path.to_vec();
                c.extend(detour[..detour.len() - 1].iter());
                offer(&mut best, c);
            }
        }
    }
    // Any path vertex back to its earliest path neighbour.
    for (i, &v) in path.iter().enumerate() {
        if let Some(j) = g.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p != NONE).min() {
            if j + 2 <= i && i - j + 1 > best.as_ref().map_or(0, |b| b.len()) {
                offer(&mut best, path[j..=i].to_vec());
            }
        }
    }
    // Rotations of the end, each closed to its furthest neighbour.
    let limit = 32;
    for &w in g.neighbors(y).iter().take(limit) {
        let i = pos[w];
        if i == NONE || i + 2 > k {
            continue;
        }
        let e = path[i + 1];
        let pos1 = |v: usize| if v <= i { v } else { i + 1 + (k - v) };
        if let Some(j) = g
            .neighbors(e)
            .iter()
            .map(|&u| pos[u])
            .filter(|&p| p != NONE)
            .map(pos1)
            .min()
        {
            if k >= j + 2 && k - j + 1 > best.as_ref().map_or(0, |b| b.len()) {
                let mut rotated = path.to_vec();
                rotated[i + 1..].reverse();
                offer(&mut best, rotated[j..].to_vec());
            }
        }
    }
    best
}

fn offer(best: &mut Option<Vec<Vertex>>, c: Vec<Vertex>) {
    if c.len() >= 3 && best.as_ref().is_none_or(|b| c.len() > b.len()) {
        *best = Some(c);
    }
}

/// Exhaustive longest cycle by backtracking, abandoned after `budget` steps.
fn backtrack_longest(g: &Graph, allowed: &[bool], budget: usize) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut best: Option<Vec<Vertex>> = None;
    let mut steps = 0usize;
    let limit = allowed.iter().filter(|&&a| a).count();
    for s in 0..n {
        if !allowed[s] {
            continue;
        }
        let mut on = vec![false; n];
        let mut path = vec![s];
        on[s] = true;
        let mut iters = vec![0usize];
        while let Some(&last) = path.last() {
            steps += 1;
            if steps > budget {
                return best;
            }
            let d = path.len() - 1;
            let nbrs = g.neighbors(last);
            if iters[d] == nbrs.len() {
                on[last] = false;
                path.pop();
                iters.pop();
                continue;
            }
            let w = nbrs[iters[d]];
            iters[d] += 1;
            if w == s && path.len() >= 3 && best.as_ref().is_none_or(|b| path.len() > b.len()) {
                best = Some(path.clone());
                if path.len() == limit {
                    return best;
                }
            }
            if w > s && allowed[w] && !on[w] {
                on[w] = true;
                path.push(w);
                iters.push(0);
            }
        }
    }
    best
}

fn has_cycle(g: &Graph) -> bool {
    let comps = g.components().len();
    g.m() + comps > g.n()
}

/// Longest cycle found by greedy paths with rotation extension from several
/// starts, each closed through its endpoints; small graphs additionally get
/// a budgeted exhaustive search.
pub fn find_long_cycle(g: &Graph, min_len: usize, seed: u64) -> Result<LongCycle, CycleError> {
    let allowed = vec![true; g.n()];
    let cycle = long_cycle_within(g, &allowed, seed).ok_or(CycleError::Acyclic)?;
    Ok(LongCycle {
        meets_min_len: cycle.len() >= min_len,
        cycle: Cycle::new_unchecked(cycle),
    })
}

pub(crate) fn long_cycle_within(g: &Graph, allowed: &[bool], seed: u64) -> Option<Vec<Vertex>> {
    if !has_cycle(g) {
        return None;
    }
    let n = g.n();
    let live: Vec<Vertex> = (0..n).filter(|&v| allowed[v] && g.degree(v) >= 2).collect();
    if live.is_empty() {
        return None;
    }
    let mut starts: Vec<Vertex> = Vec::new();
    let min_deg = live.iter().copied().min_by_key(|&v| (g.degree(v), v)).unwrap();
    let max_deg = live.iter().copied().max_by_key(|&v| (g.degree(v), usize::MAX - v)).unwrap();
    starts.extend([min_deg, live[0], max_deg]);
    let tries = if n <= 64 { 12 } else if n <= 2048 { 5 } else { 3 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < tries {
        starts.push(live[rng.gen_range(0..live.len())]);
    }
    starts.dedup();

    let mut best: Option<Vec<Vertex>> = None;
    for &s in &starts {
        let path = long_path_within(g, allowed, s);
        if let Some(c) = close_path(g, allowed, &path) {
            if best.as_ref().is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
    }
    if n <= 24 {
        if let Some(c) = backtrack_longest(g, allowed, 2_000_000) {
            if best.as_ref().is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, generate, GeneratorKind, GeneratorParams};
    use crate::oracle::oracle_circumference;

    #[test]
    fn cycle_graph_returns_itself() {
        let g = cycle(9);
        let lc = find_long_cycle(&g, 9, 0).unwrap();
        assert_eq!(lc.cycle.len(), 9);
        assert!(lc.meets_min_len);
        assert!(Cycle::new(&g, lc.cycle.vertices().to_vec()).is_ok());
    }

    #[test]
    fn tree_is_acyclic() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(find_long_cycle(&g, 3, 0), Err(CycleError::Acyclic));
    }

    #[test]
    fn cubic_twelve_within_three_quarters() {
        let g = generate(GeneratorKind::RandomRegular, GeneratorParams::new(12, 3), 5).unwrap();
        let best = oracle_circumference(&g, 14).unwrap().unwrap();
        let lc = find_long_cycle(&g, 0, 0).unwrap();
        assert!(4 * lc.cycle.len() >= 3 * best, "{} vs {best}", lc.cycle.len());
    }

    #[test]
    fn complete_graph_is_hamiltonian() {
        let g = complete(30);
        let lc = find_long_cycle(&g, 30, 1).unwrap();
        assert_eq!(lc.cycle.len(), 30);
    }

    #[test]
    fn random_regular_long_cycle() {
        let g = generate(GeneratorKind::RandomRegular, GeneratorParams::new(2000, 8), 2).unwrap();
        let lc = find_long_cycle(&g, 1000, 0).unwrap();
        assert!(Cycle::new(&g, lc.cycle.vertices().to_vec()).is_ok());
        assert!(lc.meets_min_len, "{}", lc.cycle.len());
    }
}
