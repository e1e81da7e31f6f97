use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExpansionCriterion;
use crate::graph::{Graph, Vertex};

/// Effort limits for heuristic violating-set search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// BFS / greedy-growth roots tried (lowest ids first, then random).
    pub roots: usize,
    /// Random connected sets sampled.
    pub samples: usize,
    /// Alive-vertex count at or below which the search is exhaustive.
    pub exhaustive_limit: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            roots: 16,
            samples: 64,
            exhaustive_limit: 20,
            seed: 0,
        }
    }
}

/// Looks for `X` inside the alive vertices with `lo <= |X| <= hi` and
/// `|N(X)|` (restricted to alive vertices) below the criterion. The result
/// is sorted and genuinely violating; `None` means none was found, which is
/// a proof of absence only when the search was exhaustive.
pub fn find_violation(
    g: &Graph,
    alive: &[bool],
    criterion: &ExpansionCriterion,
    lo: usize,
    hi: usize,
    budget: &SearchBudget,
) -> Option<Vec<Vertex>> {
    let lo = lo.max(1);
    let alive_count = alive.iter().filter(|&&a| a).count();
    let hi = hi.min(alive_count);
    if lo > hi {
        return None;
    }
    if alive_count <= budget.exhaustive_limit.min(super::EXACT_LIMIT) {
        return exhaustive(g, alive, criterion, lo, hi);
    }
    let mut s = Searcher::new(g, alive, criterion, lo, hi);
    if let Some(x) = s.components() {
        return Some(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let alive_ids: Vec<Vertex> = (0..g.n()).filter(|&v| alive[v]).collect();
    let mut roots: Vec<Vertex> = alive_ids.iter().copied().take(budget.roots / 2).collect();
    while roots.len() < budget.roots.min(alive_ids.len()) {
        roots.push(alive_ids[rng.gen_range(0..alive_ids.len())]);
    }
    for &r in &roots {
        if let Some(x) = s.balls(r) {
            return Some(x);
        }
        if let Some(x) = s.greedy_growth(r) {
            return Some(x);
        }
    }
    for _ in 0..budget.samples {
        let target = rng.gen_range(lo..=hi);
        let start = alive_ids[rng.gen_range(0..alive_ids.len())];
        if let Some(x) = s.random_set(start, target, &mut rng) {
            return Some(x);
        }
    }
    None
}

fn exhaustive(
    g: &Graph,
    alive: &[bool],
    criterion: &ExpansionCriterion,
    lo: usize,
    hi: usize,
) -> Option<Vec<Vertex>> {
    let sub = g.induced(alive);
    let local = &sub.graph;
    let n = local.n();
    let adj: Vec<u32> = (0..n)
        .map(|v| local.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut stack: Vec<(Vertex, u32, u32)> = Vec::new();
    let mut next = 0;
    loop {
        if next < n && stack.len() < hi {
            let (set, union) = stack.last().map_or((0, 0), |&(_, s, u)| (s, u));
            let set = set | (1 << next);
            let union = union | adj[next];
            stack.push((next, set, union));
            if stack.len() >= lo
                && criterion.violated(stack.len(), (union & !set).count_ones() as usize)
            {
                let mut x: Vec<Vertex> = stack.iter().map(|&(v, _, _)| sub.host(v)).collect();
                x.sort_unstable();
                return Some(x);
            }
            next += 1;
        } else {
            match stack.pop() {
                Some((v, _, _)) => next = v + 1,
                None => return None,
            }
        }
    }
}

struct Searcher<'a> {
    g: &'a Graph,
    alive: &'a [bool],
    criterion: &'a ExpansionCriterion,
    lo: usize,
    hi: usize,
    // 0 = outside, 1 = in X, 2 = in N(X)
    state: Vec<u8>,
    touched: Vec<Vertex>,
}

impl<'a> Searcher<'a> {
    fn new(
        g: &'a Graph,
        alive: &'a [bool],
        criterion: &'a ExpansionCriterion,
        lo: usize,
        hi: usize,
    ) -> Self {
        Searcher {
            g,
            alive,
            criterion,
            lo,
            hi,
            state: vec![0; g.n()],
            touched: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.state[v] = 0;
        }
        self.touched.clear();
    }

    fn accept(&self, size: usize, boundary: usize) -> bool {
        size >= self.lo && size <= self.hi && self.criterion.violated(size, boundary)
    }

    fn collect_x(&self) -> Vec<Vertex> {
        let mut x: Vec<Vertex> = self
            .touched
            .iter()
            .copied()
            .filter(|&v| self.state[v] == 1)
            .collect();
        x.sort_unstable();
        x
    }

    /// Unions of whole components have empty boundary; smallest first.
    fn components(&mut self) -> Option<Vec<Vertex>> {
        let n = self.g.n();
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        for s in 0..n {
            if !self.alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in self.g.neighbors(v) {
                    if self.alive[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            comps.push(members);
        }
        if comps.len() < 2 {
            return None;
        }
        comps.sort_by_key(|c| (c.len(), c[0]));
        let mut x: Vec<Vertex> = Vec::new();
        for c in comps {
            if x.len() + c.len() > self.hi {
                break;
            }
            x.extend(c);
            if self.accept(x.len(), 0) {
                x.sort_unstable();
                return Some(x);
            }
        }
        None
    }

    fn balls(&mut self, root: Vertex) -> Option<Vec<Vertex>> {
        let g = self.g;
        let mut dist: Vec<(Vertex, usize)> = vec![(root, 0)];
        self.state[root] = 1;
        self.touched.push(root);
        let mut queue = VecDeque::from([(root, 0usize)]);
        let mut layer_end = 1;
        let mut radius = 0;
        let result = loop {
            while let Some(&(u, d)) = queue.front() {
                if d != radius {
                    break;
                }
                queue.pop_front();
                for &w in g.neighbors(u) {
                    if self.alive[w] && self.state[w] == 0 {
                        self.state[w] = 2;
                        self.touched.push(w);
                        dist.push((w, d + 1));
                        queue.push_back((w, d + 1));
                    }
                }
            }
            let size = layer_end;
            let boundary = dist.len() - layer_end;
            if size > self.hi {
                break None;
            }
            if self.accept(size, boundary) {
                let mut x: Vec<Vertex> = dist[..layer_end].iter().map(|p| p.0).collect();
                x.sort_unstable();
                break Some(x);
            }
            if boundary == 0 {
                break None;
            }
            layer_end = dist.len();
            radius += 1;
        };
        self.reset();
        result
    }

    /// Grows `X` from `root`, always absorbing the boundary vertex that adds
    /// the fewest new boundary vertices (a local sparse-cut heuristic).
    fn greedy_growth(&mut self, root: Vertex) -> Option<Vec<Vertex>> {
        let g = self.g;
        let mut heap: BinaryHeap<Reverse<(usize, Vertex)>> = BinaryHeap::new();
        let mut size = 0usize;
        let mut boundary = 0usize;
        let mut costs: HashMap<Vertex, usize> = HashMap::new();
        let fresh = |state: &[u8], alive: &[bool], v: Vertex| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| alive[w] && state[w] == 0)
                .count()
        };
        self.state[root] = 2;
        self.touched.push(root);
        boundary += 1;
        heap.push(Reverse((0, root)));
        costs.insert(root, 0);
        let limit = self.hi;
        let mut result = None;
        while let Some(Reverse((c, v))) = heap.pop() {
            if self.state[v] != 2 || costs.get(&v) != Some(&c) {
                continue;
            }
            let actual = fresh(&self.state, self.alive, v);
            if actual != c {
                costs.insert(v, actual);
                heap.push(Reverse((actual, v)));
                continue;
            }
            self.state[v] = 1;
            size += 1;
            boundary -= 1;
            for &w in g.neighbors(v) {
                if self.alive[w] && self.state[w] == 0 {
                    self.state[w] = 2;
                    self.touched.push(w);
                    boundary += 1;
                    let cw = fresh(&self.state, self.alive, w);
                    costs.insert(w, cw);
                    heap.push(Reverse((cw, w)));
                }
            }
            if self.accept(size, boundary) {
                result = Some(self.collect_x());
                break;
            }
            if size >= limit {
                break;
            }
        }
        self.reset();
        result
    }

    fn random_set(
        &mut self,
        start: Vertex,
        target: usize,
        rng: &mut ChaCha8Rng,
    ) -> Option<Vec<Vertex>> {
        let g = self.g;
        let mut x = vec![start];
        self.state[start] = 1;
        self.touched.push(start);
        let mut frontier: Vec<Vertex> = g
            .neighbors(start)
            .iter()
            .copied()
            .filter(|&w| self.alive[w])
            .collect();
        while x.len() < target && !frontier.is_empty() {
            let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
            if self.state[v] == 1 {
                continue;
            }
            if self.state[v] == 0 {
                self.touched.push(v);
            }
            self.state[v] = 1;
            x.push(v);
            frontier.extend(
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| self.alive[w] && self.state[w] != 1),
            );
        }
        let mut boundary = 0;
        for &v in &x {
            for &w in g.neighbors(v) {
                if self.alive[w] && self.state[w] == 0 {
                    self.state[w] = 2;
                    self.touched.push(w);
                    boundary += 1;
                }
            }
        }
        let result = if self.accept(x.len(), boundary) {
            x.sort_unstable();
            Some(x)
        } else {
            None
        };
        self.reset();
        result
    }
}
