//! Undirected simple graphs and the structural objects built on them.
//!
//! A [`Graph`] is immutable once built: adjacency lists are sorted and
//! deduplicated, there are no self-loops, and every edge is stored in both
//! directions. Everything downstream (expansion checks, rotations, gadget
//! search) consumes graphs through this type.

mod blocks;
mod c4;
mod chords;
pub(crate) mod generate;
mod io;
mod peel;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{block_cut_tree, BlockCutTree};
pub use c4::{extract_c4_free_subgraph, find_c4, is_c4_free, C4Extraction};
pub use chords::{chords_of, ChordedCycle};
pub use generate::{generate, GeneratorKind, GeneratorParams};
pub use io::{load_graph, parse_graph, write_edge_list, InputFormat, LoadedGraph};
pub use peel::min_degree_core;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no edges")]
    NoEdges,
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("invalid chorded cycle: {0}")]
    InvalidChords(String),
    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Counts of input edges discarded while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDrops {
    pub duplicates: usize,
    pub self_loops: usize,
}

impl EdgeDrops {
    pub fn total(&self) -> usize {
        self.duplicates + self.self_loops
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a simple graph, silently dropping self-loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Graph, EdgeDrops), GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut drops = EdgeDrops::default();
        let mut raw = 0usize;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                drops.self_loops += 1;
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
            raw += 1;
        }
        let mut stored = 0usize;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            stored += list.len();
        }
        let edge_count = stored / 2;
        drops.duplicates = raw - edge_count;
        let g = Graph { adj, edge_count };
        debug_assert!(g.check_invariants().is_ok());
        Ok((g, drops))
    }

    /// Panicking convenience constructor for edge lists known to be in range.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied())
            .expect("edge endpoints must be < n")
            .0
    }

    /// Builds a graph from explicit adjacency lists, rejecting anything that
    /// is not already a valid simple undirected graph.
    pub fn from_adjacency(mut adj: Vec<Vec<Vertex>>) -> Result<Graph, GraphError> {
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let stored: usize = adj.iter().map(Vec::len).sum();
        let g = Graph {
            adj,
            edge_count: stored / 2,
        };
        g.check_invariants()?;
        Ok(g)
    }

    pub fn check_invariants(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut stored = 0;
        for (u, list) in self.adj.iter().enumerate() {
            stored += list.len();
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(GraphError::InvalidAdjacency(format!(
                        "adjacency of {u} not strictly sorted"
                    )));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(GraphError::InvalidAdjacency(format!("self-loop at {u}")));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(GraphError::InvalidAdjacency(format!(
                        "edge {u}-{v} not symmetric"
                    )));
                }
            }
        }
        if stored != 2 * self.edge_count {
            return Err(GraphError::InvalidAdjacency("edge count mismatch".into()));
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2m/n` (0 for the empty graph).
    pub fn avg_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    /// Vertices outside `set` adjacent to some vertex of `set`.
    pub fn neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subgraph induced by the vertices flagged in `keep`.
    pub fn induced(&self, keep: &[bool]) -> Subgraph {
        assert_eq!(keep.len(), self.n());
        let mut to_local = vec![None; self.n()];
        let mut to_host = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                to_local[v] = Some(to_host.len());
                to_host.push(v);
            }
        }
        let mut adj = Vec::with_capacity(to_host.len());
        let mut stored = 0;
        for &v in &to_host {
            let list: Vec<Vertex> = self.adj[v].iter().filter_map(|&w| to_local[w]).collect();
            stored += list.len();
            adj.push(list);
        }
        Subgraph {
            graph: Graph {
                adj,
                edge_count: stored / 2,
            },
            to_host,
            to_local,
        }
    }

    pub fn induced_by(&self, vertices: &[Vertex]) -> Subgraph {
        let mut keep = vec![false; self.n()];
        for &v in vertices {
            keep[v] = true;
        }
        self.induced(&keep)
    }

    /// BFS distances from `sources`, never entering vertices flagged in
    /// `blocked`. Blocked sources are ignored.
    pub fn bfs_distances(&self, sources: &[Vertex], blocked: Option<&[bool]>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        let is_blocked = |v: Vertex| blocked.is_some_and(|b| b[v]);
        for &s in sources {
            if !is_blocked(s) && dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() && !is_blocked(w) {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Whether the vertices of `set` induce a connected subgraph.
    pub fn is_connected_set(&self, set: &[Vertex]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut blocked = vec![true; self.n()];
        for &v in set {
            blocked[v] = false;
        }
        let dist = self.bfs_distances(&set[..1], Some(&blocked));
        set.iter().all(|&v| dist[v].is_some())
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut touched = vec![s];
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
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
}

/// An induced subgraph together with the map back to host vertex ids.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Graph,
    pub to_host: Vec<Vertex>,
    to_local: Vec<Option<Vertex>>,
}

impl Subgraph {
    /// The whole graph viewed as a subgraph of itself.
    pub fn identity(g: &Graph) -> Subgraph {
        Subgraph {
            graph: g.clone(),
            to_host: (0..g.n()).collect(),
            to_local: (0..g.n()).map(Some).collect(),
        }
    }

    pub fn host_n(&self) -> usize {
        self.to_local.len()
    }

    #[inline]
    pub fn host(&self, v: Vertex) -> Vertex {
        self.to_host[v]
    }

    #[inline]
    pub fn local(&self, host: Vertex) -> Option<Vertex> {
        self.to_local.get(host).copied().flatten()
    }

    pub fn lift(&self, vertices: &[Vertex]) -> Vec<Vertex> {
        vertices.iter().map(|&v| self.to_host[v]).collect()
    }

    /// Maps host vertices into this subgraph, `None` if any is missing.
    pub fn lower(&self, vertices: &[Vertex]) -> Option<Vec<Vertex>> {
        vertices.iter().map(|&v| self.local(v)).collect()
    }

    /// Composes `self` (a subgraph of H) with `outer` (H as a subgraph of G).
    pub fn compose(&self, outer: &Subgraph) -> Subgraph {
        let to_host: Vec<Vertex> = self.to_host.iter().map(|&v| outer.to_host[v]).collect();
        let mut to_local = vec![None; outer.host_n()];
        for (i, &h) in to_host.iter().enumerate() {
            to_local[h] = Some(i);
        }
        Subgraph {
            graph: self.graph.clone(),
            to_host,
            to_local,
        }
    }
}

/// A simple path: distinct vertices, consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Path, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::NotAPath("empty vertex sequence".into()));
        }
        check_distinct(g.n(), &vertices).map_err(GraphError::NotAPath)?;
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(GraphError::NotAPath(format!("{} and {} not adjacent", w[0], w[1])));
            }
        }
        Ok(Path(vertices))
    }

    /// No validation; consumers that accept outside paths must check them.
    pub fn new_unchecked(vertices: Vec<Vertex>) -> Path {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        Path::new(g, self.0.clone()).is_ok()
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Path {
        Path(self.0.iter().map(|&v| f(v)).collect())
    }
}

/// A cycle given by its cyclic vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Cycle, GraphError> {
        if vertices.len() < 3 {
            return Err(GraphError::NotACycle(format!(
                "length {} is below 3",
                vertices.len()
            )));
        }
        check_distinct(g.n(), &vertices).map_err(GraphError::NotACycle)?;
        let k = vertices.len();
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !g.has_edge(a, b) {
                return Err(GraphError::NotACycle(format!("{a} and {b} not adjacent")));
            }
        }
        Ok(Cycle(vertices))
    }

    /// No validation; consumers that accept outside cycles must check them.
    pub fn new_unchecked(vertices: Vec<Vertex>) -> Cycle {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rotation starting at the smallest vertex, heading toward its smaller
    /// cycle neighbour.
    pub fn canonical(&self) -> Cycle {
        Cycle(canonical_order(&self.0))
    }

    /// Whether `u` and `v` are cyclically consecutive.
    pub fn are_consecutive(&self, u: Vertex, v: Vertex) -> bool {
        let k = self.0.len();
        match self.0.iter().position(|&x| x == u) {
            Some(i) => self.0[(i + 1) % k] == v || self.0[(i + k - 1) % k] == v,
            None => false,
        }
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Cycle {
        Cycle(self.0.iter().map(|&v| f(v)).collect())
    }
}

pub(crate) fn canonical_order(vertices: &[Vertex]) -> Vec<Vertex> {
    let k = vertices.len();
    if k == 0 {
        return Vec::new();
    }
    let start = (0..k).min_by_key(|&i| vertices[i]).unwrap();
    let next = vertices[(start + 1) % k];
    let prev = vertices[(start + k - 1) % k];
    if next <= prev {
        (0..k).map(|i| vertices[(start + i) % k]).collect()
    } else {
        (0..k).map(|i| vertices[(start + k - i) % k]).collect()
    }
}

fn check_distinct(n: usize, vertices: &[Vertex]) -> Result<(), String> {
    let mut seen = vec![false; n];
    for &v in vertices {
        if v >= n {
            return Err(format!("vertex {v} out of range"));
        }
        if seen[v] {
            return Err(format!("vertex {v} repeated"));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Dense membership flags for a vertex list.
pub fn mask_of(n: usize, vertices: &[Vertex]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in vertices {
        mask[v] = true;
    }
    mask
}
