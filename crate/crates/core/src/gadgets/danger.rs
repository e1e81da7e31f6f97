use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::GadgetError;
use crate::expander::connect::bfs_path;
use crate::graph::{mask_of, ChordedCycle, Graph, Path, Vertex};

/// A rooted tree listed parent-first: `order[0]` is the root and the parent
/// of `order[i]` is `parent[i]`, which appears earlier in `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    pub order: Vec<Vertex>,
    pub parent: Vec<Vertex>,
}

impl RootedTree {
    pub fn new(order: Vec<Vertex>, parent: Vec<Vertex>) -> Result<RootedTree, GadgetError> {
        if order.is_empty() || order.len() != parent.len() || parent[0] != order[0] {
            return Err(GadgetError::InvalidInput("malformed rooted tree".into()));
        }
        let mut seen: HashMap<Vertex, usize> = HashMap::with_capacity(order.len());
        for (i, (&v, &p)) in order.iter().zip(&parent).enumerate() {
            if i > 0 && !seen.contains_key(&p) {
                return Err(GadgetError::InvalidInput(format!("parent of {v} listed after it")));
            }
            if seen.insert(v, i).is_some() {
                return Err(GadgetError::InvalidInput(format!("vertex {v} repeated")));
            }
        }
        Ok(RootedTree { order, parent })
    }

    /// BFS tree of `g[set]` from `root`; `None` if `set` is disconnected.
    pub fn bfs(g: &Graph, set: &[Vertex], root: Vertex) -> Option<RootedTree> {
        let inside = mask_of(g.n(), set);
        let mut seen = vec![false; g.n()];
        seen[root] = true;
        let mut order = vec![root];
        let mut parent = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    parent.push(u);
                    queue.push_back(w);
                }
            }
        }
        (order.len() == set.len()).then_some(RootedTree { order, parent })
    }

    pub fn root(&self) -> Vertex {
        self.order[0]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn parent_index(&self) -> Vec<usize> {
        let index: HashMap<Vertex, usize> = self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.parent.iter().map(|p| index[p]).collect()
    }

    /// Vertices still joined to the root after deleting `removed`.
    pub fn root_component(&self, removed: &[bool]) -> Vec<Vertex> {
        if removed[self.root()] {
            return Vec::new();
        }
        let pidx = self.parent_index();
        let mut alive = vec![false; self.len()];
        alive[0] = true;
        for i in 1..self.len() {
            alive[i] = alive[pidx[i]] && !removed[self.order[i]];
        }
        (0..self.len()).filter(|&i| alive[i]).map(|i| self.order[i]).collect()
    }

    /// Greatest depth of any vertex.
    pub fn depth(&self) -> usize {
        let pidx = self.parent_index();
        let mut depth = vec![0usize; self.len()];
        for i in 1..self.len() {
            depth[i] = depth[pidx[i]] + 1;
        }
        depth.into_iter().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DangerousSet {
    pub tree: RootedTree,
    pub threshold: usize,
    /// Sorted.
    pub dangerous: Vec<Vertex>,
}

/// Non-root, non-leaf vertices whose deletion cuts at least `threshold`
/// vertices off from the root.
pub fn dangerous_vertices(tree: &RootedTree, threshold: usize) -> DangerousSet {
    let k = tree.len();
    let pidx = tree.parent_index();
    let mut size = vec![1usize; k];
    let mut children = vec![0usize; k];
    for i in (1..k).rev() {
        size[pidx[i]] += size[i];
        children[pidx[i]] += 1;
    }
    let mut dangerous: Vec<Vertex> = (1..k)
        .filter(|&i| children[i] > 0 && size[i] - 1 >= threshold)
        .map(|i| tree.order[i])
        .collect();
    dangerous.sort_unstable();
    DangerousSet {
        tree: tree.clone(),
        threshold,
        dangerous,
    }
}

/// Two routes from a chorded cycle into two of three anchors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorRoutes {
    pub i: usize,
    pub j: usize,
    /// Surviving part of anchor `i`, connected and containing the end of `p_i`.
    pub a_i: Vec<Vertex>,
    pub a_j: Vec<Vertex>,
    /// Start on the cycle, end at the anchor's tree root.
    pub p_i: Path,
    pub p_j: Path,
    /// Designated chord `(x, y)` such that walking the cycle forward from
    /// `x` meets the start of `p_i`, then that of `p_j`, then `y`.
    pub chord: (Vertex, Vertex),
    /// Depths of the three anchor trees.
    pub depths: [usize; 3],
}

/// Root of least eccentricity among the first 64 vertices of `set`.
fn central_vertex(g: &Graph, set: &[Vertex]) -> Vertex {
    let inside = mask_of(g.n(), set);
    let blocked: Vec<bool> = inside.iter().map(|&b| !b).collect();
    set.iter()
        .take(64)
        .copied()
        .min_by_key(|&r| {
            let d = g.bfs_distances(&[r], Some(&blocked));
            let ecc = set.iter().filter_map(|&v| d[v]).max().unwrap_or(0);
            (ecc, r)
        })
        .expect("non-empty anchor")
}

/// Three successively disjoint routes from the cycle to the anchor roots,
/// avoiding every dangerous vertex; by pigeonhole two of them start on a
/// common closed arc between the endpoints of the first chord.
pub fn route_to_anchor_sets(
    g: &Graph,
    cc: &ChordedCycle,
    anchors: &[Vec<Vertex>; 3],
    max_path_len: usize,
    danger_threshold: usize,
) -> Result<AnchorRoutes, GadgetError> {
    let n = g.n();
    let cyc = cc.vertices();
    let l = cyc.len();
    let &(a, b) = cc
        .chords
        .first()
        .ok_or_else(|| GadgetError::InvalidInput("cycle has no chord".into()))?;
    let on_cycle = mask_of(n, cyc);
    let mut owner = vec![usize::MAX; n];
    for (k, set) in anchors.iter().enumerate() {
        if set.is_empty() {
            return Err(GadgetError::InvalidInput(format!("anchor {k} is empty")));
        }
        for &v in set {
            if v >= n || on_cycle[v] || owner[v] != usize::MAX {
                return Err(GadgetError::InvalidInput(format!(
                    "anchor {k} meets the cycle or another anchor at {v}"
                )));
            }
            owner[v] = k;
        }
    }
    let mut trees = Vec::with_capacity(3);
    for (k, set) in anchors.iter().enumerate() {
        let tree = RootedTree::bfs(g, set, central_vertex(g, set))
            .ok_or_else(|| GadgetError::InvalidInput(format!("anchor {k} is disconnected")))?;
        trees.push(tree);
    }
    let danger: Vec<DangerousSet> = trees.iter().map(|t| dangerous_vertices(t, danger_threshold)).collect();

    let mut blocked = on_cycle.clone();
    for d in &danger {
        for &v in &d.dangerous {
            blocked[v] = true;
        }
    }
    for t in &trees {
        blocked[t.root()] = true;
    }
    let mut routes: Vec<Vec<Vertex>> = Vec::with_capacity(3);
    for (k, tree) in trees.iter().enumerate() {
        let sources: Vec<Vertex> = cyc.iter().copied().filter(|&v| !routes.iter().any(|r| r[0] == v)).collect();
        let mut local = blocked.clone();
        for &s in &sources {
            local[s] = false;
        }
        local[tree.root()] = false;
        let mut target = vec![false; n];
        target[tree.root()] = true;
        let Some(path) = bfs_path(g, &sources, &target, &local, Some(max_path_len)) else {
            return Err(GadgetError::Routing(format!("found {k} of 3 disjoint routes")));
        };
        for &v in &path {
            blocked[v] = true;
        }
        routes.push(path);
    }

    let pos = crate::cycles::position_map(n, cyc);
    let (pa, pb) = (pos[a], pos[b]);
    let rank = |v: Vertex, from: usize| (pos[v] + l - from) % l;
    let span = rank(b, pa);
    // Closed arcs a..b and b..a, walking forward.
    let arcs = [((a, b), pa, span), ((b, a), pb, l - span)];
    let mut choice = None;
    'outer: for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        for &(chord, from, len) in &arcs {
            let (rx, ry) = (rank(routes[x][0], from), rank(routes[y][0], from));
            if rx <= len && ry <= len {
                choice = Some(if rx < ry { (x, y, chord) } else { (y, x, chord) });
                break 'outer;
            }
        }
    }
    let (i, j, chord) = choice.expect("three starts on two closed arcs share one");

    let mut removed = vec![false; n];
    for &v in routes[i].iter().chain(&routes[j]) {
        removed[v] = true;
    }
    let mut keep = |k: usize| -> Result<Vec<Vertex>, GadgetError> {
        let root = trees[k].root();
        removed[root] = false;
        let mut part = trees[k].root_component(&removed);
        removed[root] = true;
        let lost = anchors[k].iter().filter(|&&v| removed[v] && v != root).count();
        assert!(part.len() + lost * danger_threshold >= anchors[k].len(), "anchor lost more than its budget");
        if 2 * part.len() < anchors[k].len() {
            return Err(GadgetError::Routing(format!(
                "anchor {k} kept {} of {}",
                part.len(),
                anchors[k].len()
            )));
        }
        part.sort_unstable();
        Ok(part)
    };
    let (a_i, a_j) = (keep(i)?, keep(j)?);
    let depths = [trees[0].depth(), trees[1].depth(), trees[2].depth()];
    Ok(AnchorRoutes {
        i,
        j,
        a_i,
        a_j,
        p_i: Path::new_unchecked(routes[i].clone()),
        p_j: Path::new_unchecked(routes[j].clone()),
        chord,
        depths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chords_of, Cycle};

    fn path_tree(k: usize) -> RootedTree {
        RootedTree::new((0..k).collect(), (0..k).map(|i| i.saturating_sub(1)).collect()).unwrap()
    }

    #[test]
    fn star_rooted_at_center_has_no_danger() {
        let t = RootedTree::new((0..6).collect(), vec![0; 6]).unwrap();
        assert!(dangerous_vertices(&t, 1).dangerous.is_empty());
    }

    #[test]
    fn path_of_ten() {
        assert_eq!(dangerous_vertices(&path_tree(10), 3).dangerous, vec![1, 2, 3, 4, 5, 6]);
        assert!(dangerous_vertices(&path_tree(10), 11).dangerous.is_empty());
    }

    #[test]
    fn malformed_tree_rejected() {
        assert!(RootedTree::new(vec![0, 1, 2], vec![0, 2, 0]).is_err());
        assert!(RootedTree::new(vec![0, 1, 1], vec![0, 0, 0]).is_err());
    }

    /// 4-cycle 0-1-2-3 with chord (0,2); K4 anchors on 4..8, 8..12, 12..16
    /// attached to cycle vertices 1, 2, 3.
    fn square_with_anchors() -> (Graph, ChordedCycle, [Vec<Vertex>; 3]) {
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];
        let anchors = [4, 8, 12].map(|s| (s..s + 4).collect::<Vec<_>>());
        for (k, set) in anchors.iter().enumerate() {
            for (x, &u) in set.iter().enumerate() {
                for &w in &set[x + 1..] {
                    edges.push((u, w));
                }
            }
            edges.push((1 + k, set[0]));
        }
        let g = Graph::from_edge_list(16, &edges);
        let cc = chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3]).unwrap()).unwrap();
        (g, cc, anchors)
    }

    #[test]
    fn routes_share_a_side() {
        let (g, cc, anchors) = square_with_anchors();
        let r = route_to_anchor_sets(&g, &cc, &anchors, 4, 2).unwrap();
        assert_eq!(r.p_i.len(), 1);
        assert_eq!(r.p_j.len(), 1);
        assert!(r.a_i.len() >= 2 && r.a_j.len() >= 2);
        assert!(r.a_i.contains(&r.p_i.last()) && r.a_j.contains(&r.p_j.last()));
        assert!(g.is_connected_set(&r.a_i) && g.is_connected_set(&r.a_j));
        // walk forward from chord.0: p_i start, p_j start, chord.1
        let cyc = cc.vertices();
        let from = cyc.iter().position(|&v| v == r.chord.0).unwrap();
        let rank = |v| (cyc.iter().position(|&x| x == v).unwrap() + 4 - from) % 4;
        assert!(rank(r.p_i.first()) < rank(r.p_j.first()));
        assert!(rank(r.p_j.first()) <= rank(r.chord.1));
    }

    #[test]
    fn anchor_on_cycle_rejected() {
        let (g, cc, mut anchors) = square_with_anchors();
        anchors[0].push(1);
        assert!(matches!(
            route_to_anchor_sets(&g, &cc, &anchors, 4, 2),
            Err(GadgetError::InvalidInput(_))
        ));
    }

    #[test]
    fn single_gateway_blocks_routes() {
        // All anchors hang off vertex 4, which touches the cycle only at 1.
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4)];
        for s in [5, 8, 11] {
            edges.extend([(s, s + 1), (s + 1, s + 2), (4, s)]);
        }
        let g = Graph::from_edge_list(14, &edges);
        let cc = chords_of(&g, &Cycle::new(&g, vec![0, 1, 2, 3]).unwrap()).unwrap();
        let anchors = [5, 8, 11].map(|s| (s..s + 3).collect::<Vec<_>>());
        assert!(matches!(
            route_to_anchor_sets(&g, &cc, &anchors, 6, 2),
            Err(GadgetError::Routing(_))
        ));
    }
}
