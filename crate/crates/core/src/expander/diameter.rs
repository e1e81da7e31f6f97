use std::collections::VecDeque;

use super::ExpansionError;
use crate::graph::{Graph, Vertex};

/// `m` vertices spanning a connected subgraph of diameter at most
/// `max_diameter`: the first `m` vertices of a depth-limited BFS (the BFS
/// tree with deepest leaves trimmed). Roots are tried in id order; odd
/// diameters also try BFS from an edge.
pub fn find_low_diameter_set(
    g: &Graph,
    m: usize,
    max_diameter: usize,
) -> Result<Vec<Vertex>, ExpansionError> {
    let allowed = vec![true; g.n()];
    let roots: Vec<Vertex> = (0..g.n()).collect();
    find_low_diameter_set_in(g, m, max_diameter, &allowed, &roots)
}

/// As [`find_low_diameter_set`], restricted to `allowed` vertices and trying
/// roots in the given order.
pub fn find_low_diameter_set_in(
    g: &Graph,
    m: usize,
    max_diameter: usize,
    allowed: &[bool],
    roots: &[Vertex],
) -> Result<Vec<Vertex>, ExpansionError> {
    if m > g.n() {
        return Err(ExpansionError::InvalidArguments(format!(
            "m = {m} exceeds vertex count {}",
            g.n()
        )));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let radius = max_diameter / 2;
    let mut bfs = Bfs::new(g.n());
    for &r in roots {
        if !allowed[r] {
            continue;
        }
        if let Some(set) = bfs.prefix(g, allowed, &[r], radius, m) {
            return Ok(set);
        }
        if max_diameter % 2 == 1 {
            for &w in g.neighbors(r) {
                if allowed[w] {
                    if let Some(set) = bfs.prefix(g, allowed, &[r, w], radius, m) {
                        return Ok(set);
                    }
                }
            }
        }
    }
    Err(ExpansionError::NoLowDiameterSet { m, radius })
}

struct Bfs {
    dist: Vec<usize>,
    order: Vec<Vertex>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            dist: vec![usize::MAX; n],
            order: Vec::new(),
        }
    }

    fn prefix(
        &mut self,
        g: &Graph,
        allowed: &[bool],
        sources: &[Vertex],
        radius: usize,
        m: usize,
    ) -> Option<Vec<Vertex>> {
        let mut queue = VecDeque::new();
        for &s in sources {
            self.dist[s] = 0;
            self.order.push(s);
            queue.push_back(s);
        }
        while self.order.len() < m {
            let Some(u) = queue.pop_front() else { break };
            if self.dist[u] == radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if allowed[w] && self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.order.push(w);
                    queue.push_back(w);
                    if self.order.len() == m {
                        break;
                    }
                }
            }
        }
        let result = (self.order.len() >= m).then(|| {
            let mut set = self.order[..m].to_vec();
            set.sort_unstable();
            set
        });
        for &v in &self.order {
            self.dist[v] = usize::MAX;
        }
        self.order.clear();
        result
    }
}
