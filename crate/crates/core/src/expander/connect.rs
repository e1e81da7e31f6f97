use std::collections::VecDeque;

use super::{ExpansionCertificate, ExpansionCriterion, ExpansionError};
use crate::graph::{Graph, Path, Vertex};

/// `2 log_{1 + alpha/2} n`, the length bound for connecting paths in an
/// `alpha`-expander.
pub fn expander_path_bound(n: usize, alpha: f64) -> f64 {
    2.0 * (n.max(2) as f64).ln() / (1.0 + alpha / 2.0).ln()
}

/// Shortest path from `x` to `y` in `g - b` (multi-source BFS, lowest ids
/// expanded first).
pub fn connect_avoiding(
    g: &Graph,
    x: &[Vertex],
    y: &[Vertex],
    b: &[Vertex],
) -> Result<Path, ExpansionError> {
    let n = g.n();
    if x.is_empty() || y.is_empty() {
        return Err(ExpansionError::InvalidArguments("x and y must be non-empty".into()));
    }
    let mut role = vec![0u8; n];
    for (set, tag) in [(x, 1u8), (y, 2), (b, 4)] {
        for &v in set {
            if v >= n {
                return Err(ExpansionError::InvalidArguments(format!("vertex {v} out of range")));
            }
            if role[v] != 0 && role[v] != tag {
                return Err(ExpansionError::InvalidArguments(format!(
                    "vertex {v} lies in two of x, y, b"
                )));
            }
            role[v] = tag;
        }
    }
    let blocked: Vec<bool> = role.iter().map(|&r| r == 4).collect();
    let target: Vec<bool> = role.iter().map(|&r| r == 2).collect();
    let mut sources = x.to_vec();
    sources.sort_unstable();
    sources.dedup();
    bfs_path(g, &sources, &target, &blocked, None)
        .map(|p| Path::new_unchecked(p))
        .ok_or(ExpansionError::Disconnected)
}

/// As [`connect_avoiding`], additionally asserting the expander length bound
/// when `cert` certifies `g` as an `alpha`-expander and `|x|, |y| > 2|b|/alpha`.
pub fn connect_avoiding_certified(
    g: &Graph,
    x: &[Vertex],
    y: &[Vertex],
    b: &[Vertex],
    cert: &ExpansionCertificate,
) -> Result<Path, ExpansionError> {
    let path = connect_avoiding(g, x, y, b)?;
    if let (true, ExpansionCriterion::Alpha { alpha }) = (cert.passed(), cert.criterion) {
        let need = 2.0 * b.len() as f64 / alpha;
        if x.len() as f64 > need && y.len() as f64 > need {
            let bound = expander_path_bound(g.n(), alpha);
            assert!(
                path.len() as f64 <= bound,
                "connecting path of length {} exceeds {bound:.2}",
                path.len()
            );
        }
    }
    Ok(path)
}

/// BFS from `sources` to the first reached vertex with `target[v]`, avoiding
/// `blocked`; sources themselves may be targets (length-0 path). Paths longer
/// than `max_len` edges are not explored.
pub(crate) fn bfs_path(
    g: &Graph,
    sources: &[Vertex],
    target: &[bool],
    blocked: &[bool],
    max_len: Option<usize>,
) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if blocked[s] || dist[s] != usize::MAX {
            continue;
        }
        if target[s] {
            return Some(vec![s]);
        }
        dist[s] = 0;
        queue.push_back(s);
    }
    let limit = max_len.unwrap_or(usize::MAX);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= limit {
            continue;
        }
        for &w in g.neighbors(u) {
            if blocked[w] || dist[w] != usize::MAX {
                continue;
            }
            dist[w] = dist[u] + 1;
            parent[w] = u;
            if target[w] {
                let mut path = vec![w];
                let mut cur = w;
                while parent[cur] != usize::MAX {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}
