use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::CycleError;
use crate::graph::{Graph, Path, Vertex};

/// One rotation: from the path realising endpoint `parent` (or the base path
/// when `None`), add `inserted = (end, w)` and delete `broken = (w, next)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationStep {
    pub parent: Option<usize>,
    pub broken: (Vertex, Vertex),
    pub inserted: (Vertex, Vertex),
    pub endpoint: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationClosure {
    /// Oriented from `fixed_endpoint` to the free end.
    pub base_path: Path,
    pub fixed_endpoint: Vertex,
    /// Sorted.
    pub endpoint_set: Vec<Vertex>,
    /// One step per endpoint other than the base free end, in discovery order.
    pub rotation_log: Vec<RotationStep>,
    /// False when the state budget cut the search short.
    pub complete: bool,
}

impl RotationClosure {
    /// Rebuilds the path ending at `endpoint` by replaying its rotations.
    pub fn replay(&self, endpoint: Vertex) -> Option<Path> {
        if endpoint == self.base_path.last() {
            return Some(self.base_path.clone());
        }
        let idx = self.rotation_log.iter().position(|s| s.endpoint == endpoint)?;
        let mut chain = vec![idx];
        while let Some(p) = self.rotation_log[*chain.last().unwrap()].parent {
            chain.push(p);
        }
        let mut path = self.base_path.vertices().to_vec();
        for &i in chain.iter().rev() {
            let step = &self.rotation_log[i];
            let end = *path.last().unwrap();
            if step.inserted.0 != end {
                return None;
            }
            let w = step.inserted.1;
            let at = path.iter().position(|&x| x == w)?;
            if path.get(at + 1) != Some(&step.broken.1) {
                return None;
            }
            path[at + 1..].reverse();
        }
        Some(Path::new_unchecked(path))
    }
}

pub fn posa_closure(g: &Graph, p: &Path, fixed: Vertex) -> Result<RotationClosure, CycleError> {
    posa_closure_bounded(g, p, fixed, usize::MAX)
}

/// Breadth-first rotation closure that keeps one path per endpoint and stops
/// after `max_endpoints` distinct endpoints.
pub fn posa_closure_bounded(
    g: &Graph,
    p: &Path,
    fixed: Vertex,
    max_endpoints: usize,
) -> Result<RotationClosure, CycleError> {
    if !p.is_valid_in(g) {
        return Err(CycleError::InvalidInput("not a path of the graph".into()));
    }
    let base: Vec<Vertex> = if p.first() == fixed {
        p.vertices().to_vec()
    } else if p.last() == fixed {
        p.reversed().into_vertices()
    } else {
        return Err(CycleError::InvalidInput(format!("{fixed} is not an endpoint of the path")));
    };
    let n = g.n();
    let mut found = vec![false; n];
    let mut log: Vec<RotationStep> = Vec::new();
    let free = *base.last().unwrap();
    found[free] = true;
    let mut endpoints = vec![free];
    let mut queue: VecDeque<(Option<usize>, Vec<Vertex>)> = VecDeque::from([(None, base.clone())]);
    let mut complete = true;
    'bfs: while let Some((idx, path)) = queue.pop_front() {
        let k = path.len();
        let end = path[k - 1];
        let mut pos = std::collections::HashMap::with_capacity(k);
        for (i, &v) in path.iter().enumerate() {
            pos.insert(v, i);
        }
        for &w in g.neighbors(end) {
            let Some(&i) = pos.get(&w) else { continue };
            if i + 2 >= k {
                continue;
            }
            let new_end = path[i + 1];
            if found[new_end] {
                continue;
            }
            if endpoints.len() >= max_endpoints {
                complete = false;
                break 'bfs;
            }
            found[new_end] = true;
            endpoints.push(new_end);
            log.push(RotationStep {
                parent: idx,
                broken: (w, new_end),
                inserted: (end, w),
                endpoint: new_end,
            });
            let mut next = path.clone();
            next[i + 1..].reverse();
            queue.push_back((Some(log.len() - 1), next));
        }
    }
    endpoints.sort_unstable();
    Ok(RotationClosure {
        base_path: Path::new_unchecked(base),
        fixed_endpoint: fixed,
        endpoint_set: endpoints,
        rotation_log: log,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle};
    use crate::oracle::oracle_rotation_closure;

    #[test]
    fn p4_has_single_endpoint() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]);
        let p = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        let c = posa_closure(&g, &p, 3).unwrap();
        assert_eq!(c.endpoint_set, vec![0]);
        assert!(c.rotation_log.is_empty());
    }

    #[test]
    fn k4_matches_oracle() {
        let g = complete(4);
        let p = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        let c = posa_closure(&g, &p, 3).unwrap();
        assert_eq!(c.endpoint_set, vec![0, 1, 2]);
        assert_eq!(c.endpoint_set, oracle_rotation_closure(&g, &p, 3).unwrap());
    }

    #[test]
    fn c5_matches_oracle_and_replays() {
        let g = cycle(5);
        let p = Path::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        let c = posa_closure(&g, &p, 0).unwrap();
        assert_eq!(c.endpoint_set, oracle_rotation_closure(&g, &p, 0).unwrap());
        for &e in &c.endpoint_set {
            let r = c.replay(e).unwrap();
            assert!(r.is_valid_in(&g));
            assert_eq!(r.last(), e);
            assert_eq!(r.first(), 0);
        }
    }

    #[test]
    fn fixed_must_be_an_endpoint() {
        let g = complete(4);
        let p = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(posa_closure(&g, &p, 1).is_err());
    }
}
