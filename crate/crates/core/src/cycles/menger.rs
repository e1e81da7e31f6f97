use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Path, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DisjointPathsError {
    #[error("invalid terminal sets: {0}")]
    InvalidTerminals(String),
    /// `cut_vertex`, when present, has been checked to separate `s` from `t`.
    #[error("max flow is {flow} < 2 (cut vertex {cut_vertex:?})")]
    Insufficient {
        flow: usize,
        cut_vertex: Option<Vertex>,
    },
}

struct Network {
    head: Vec<usize>,
    cap: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Arc `2i` is forward, `2i + 1` its residual twin.
    fn arc(&mut self, from: usize, to: usize, cap: u8) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = a;
                    if w == sink {
                        let mut x = sink;
                        while x != src {
                            let a = via[x];
                            self.cap[a] -= 1;
                            self.cap[a ^ 1] += 1;
                            x = self.head[a ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn reachable(&self, src: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let w = self.head[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Two paths from `s` to `t`, vertex-disjoint except where a singleton
/// terminal set forces a shared endpoint, each internally avoiding `s ∪ t`.
/// Unit vertex capacities on the split graph; failure carries a verified
/// cut vertex when one exists.
pub fn two_disjoint_paths(
    g: &Graph,
    s: &[Vertex],
    t: &[Vertex],
) -> Result<(Path, Path), DisjointPathsError> {
    let n = g.n();
    if s.is_empty() || t.is_empty() {
        return Err(DisjointPathsError::InvalidTerminals("empty terminal set".into()));
    }
    let mut role = vec![0u8; n];
    for &v in s {
        if v >= n {
            return Err(DisjointPathsError::InvalidTerminals(format!("{v} out of range")));
        }
        role[v] = 1;
    }
    for &v in t {
        if v >= n {
            return Err(DisjointPathsError::InvalidTerminals(format!("{v} out of range")));
        }
        if role[v] == 1 {
            return Err(DisjointPathsError::InvalidTerminals(format!("{v} in both s and t")));
        }
        role[v] = 2;
    }
    let s_single = s.iter().all(|&v| v == s[0]);
    let t_single = t.iter().all(|&v| v == t[0]);
    let vcap = |v: Vertex| -> u8 {
        match role[v] {
            1 if s_single => 2,
            2 if t_single => 2,
            _ => 1,
        }
    };
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        net.arc(2 * v, 2 * v + 1, vcap(v));
    }
    for v in 0..n {
        if role[v] == 1 {
            net.arc(src, 2 * v, vcap(v));
        }
    }
    for u in 0..n {
        if role[u] == 2 {
            net.arc(2 * u + 1, sink, vcap(u));
            continue;
        }
        for &w in g.neighbors(u) {
            if role[w] != 1 {
                net.arc(2 * u + 1, 2 * w, 1);
            }
        }
    }
    let mut flow = 0;
    while flow < 2 && net.augment(src, sink) {
        flow += 1;
    }
    if flow < 2 {
        return Err(DisjointPathsError::Insufficient {
            flow,
            cut_vertex: cut_vertex(g, &net, s, t, n),
        });
    }
    let p1 = decompose(&mut net, src, sink, n);
    let p2 = decompose(&mut net, src, sink, n);
    let (p1, p2) = (Path::new_unchecked(p1), Path::new_unchecked(p2));
    debug_assert!(p1.is_valid_in(g) && p2.is_valid_in(g));
    Ok(if p1.vertices() <= p2.vertices() { (p1, p2) } else { (p2, p1) })
}

/// Follows one unit of flow from `src` to `sink`, consuming it, and erases
/// any loops from the vertex sequence.
fn decompose(net: &mut Network, src: usize, sink: usize, n: usize) -> Vec<Vertex> {
    let mut seq: Vec<Vertex> = Vec::new();
    let mut u = src;
    while u != sink {
        // Forward arcs have even index; flow on them is the twin's capacity.
        let a = *net.out[u]
            .iter()
            .find(|&&a| a % 2 == 0 && net.cap[a ^ 1] > 0)
            .expect("flow conservation");
        net.cap[a ^ 1] -= 1;
        u = net.head[a];
        if u < 2 * n && u % 2 == 0 {
            let v = u / 2;
            if let Some(i) = seq.iter().position(|&x| x == v) {
                seq.truncate(i);
            }
            seq.push(v);
        }
    }
    seq
}

fn cut_vertex(g: &Graph, net: &Network, s: &[Vertex], t: &[Vertex], n: usize) -> Option<Vertex> {
    let seen = net.reachable(2 * n);
    let mut candidates = Vec::new();
    for (u, arcs) in net.out.iter().enumerate() {
        if !seen[u] {
            continue;
        }
        for &a in arcs {
            let w = net.head[a];
            if a % 2 == 0 && !seen[w] {
                for node in [u, w] {
                    if node < 2 * n {
                        candidates.push(node / 2);
                    }
                }
            }
        }
    }
    candidates.into_iter().find(|&v| separates(g, v, s, t))
}

/// Whether every path from `s - {v}` to `t - {v}` meets `v`.
pub(crate) fn separates(g: &Graph, v: Vertex, s: &[Vertex], t: &[Vertex]) -> bool {
    let sources: Vec<Vertex> = s.iter().copied().filter(|&x| x != v).collect();
    let targets: Vec<Vertex> = t.iter().copied().filter(|&x| x != v).collect();
    if sources.is_empty() || targets.is_empty() {
        return false;
    }
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    let dist = g.bfs_distances(&sources, Some(&blocked));
    targets.iter().all(|&y| dist[y].is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangles_joined_by_two_edges() {
        let g = Graph::from_edge_list(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)],
        );
        let (p, q) = two_disjoint_paths(&g, &[0, 1, 2], &[3, 4, 5]).unwrap();
        assert_eq!(p.vertices(), &[0, 3]);
        assert_eq!(q.vertices(), &[1, 4]);
    }

    #[test]
    fn shared_vertex_is_reported() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let err = two_disjoint_paths(&g, &[0, 1], &[3, 4]).unwrap_err();
        assert_eq!(
            err,
            DisjointPathsError::Insufficient {
                flow: 1,
                cut_vertex: Some(2)
            }
        );
    }

    #[test]
    fn theta_graph_between_hubs() {
        // hubs 0 and 1, paths 0-2-1, 0-3-4-1, 0-5-6-7-1
        let g = Graph::from_edge_list(
            8,
            &[(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 7), (7, 1)],
        );
        let (p, q) = two_disjoint_paths(&g, &[0], &[1]).unwrap();
        for path in [&p, &q] {
            assert_eq!(path.first(), 0);
            assert_eq!(path.last(), 1);
            assert!(path.is_valid_in(&g));
        }
        let inner = |x: &Path| x.vertices()[1..x.vertices().len() - 1].to_vec();
        assert!(inner(&p).iter().all(|v| !inner(&q).contains(v)));
    }

    #[test]
    fn disconnected_has_zero_flow() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            two_disjoint_paths(&g, &[0], &[3]),
            Err(DisjointPathsError::Insufficient {
                flow: 0,
                cut_vertex: None
            })
        );
    }
}
