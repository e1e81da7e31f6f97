use super::{Cycle, Graph, Vertex};

/// Some 4-cycle of `g`, or `None` when no two vertices share two common
/// neighbours.
pub fn find_c4(g: &Graph) -> Option<Cycle> {
    let adj: Vec<Vec<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    let mut scratch = Scratch::new(g.n());
    (0..g.n()).find_map(|u| scratch.c4_at(&adj, u).map(|c| Cycle::new_unchecked(c.to_vec())))
}

pub fn is_c4_free(g: &Graph) -> bool {
    find_c4(g).is_none()
}

#[derive(Clone, Debug)]
pub struct C4Extraction {
    pub graph: Graph,
    pub avg_degree: f64,
    pub target_avg_degree: f64,
    pub shortfall: bool,
    pub removed_edges: usize,
}

struct Scratch {
    stamp: Vec<usize>,
    via: Vec<Vertex>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            stamp: vec![usize::MAX; n],
            via: vec![0; n],
        }
    }

    /// A 4-cycle `u, v, w, x` with `u` as a corner, if one exists.
    fn c4_at(&mut self, adj: &[Vec<Vertex>], u: Vertex) -> Option<[Vertex; 4]> {
        for &v in &adj[u] {
            for &w in &adj[v] {
                if w == u {
                    continue;
                }
                if self.stamp[w] == u {
                    let x = self.via[w];
                    // Reset so later calls at the same corner rescan cleanly.
                    self.clear(adj, u);
                    return Some([u, x, w, v]);
                }
                self.stamp[w] = u;
                self.via[w] = v;
            }
        }
        self.clear(adj, u);
        None
    }

    fn clear(&mut self, adj: &[Vec<Vertex>], u: Vertex) {
        for &v in &adj[u] {
            for &w in &adj[v] {
                if self.stamp[w] == u {
                    self.stamp[w] = usize::MAX;
                }
            }
        }
    }
}

/// Greedy C4 destruction: every 4-cycle found loses the edge whose endpoints
/// have the largest degrees, then removed edges are re-inserted whenever
/// they close no 4-cycle. The result spans all vertices of `g`.
pub fn extract_c4_free_subgraph(g: &Graph, target_avg_degree: f64) -> C4Extraction {
    let n = g.n();
    let mut adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut scratch = Scratch::new(n);
    let mut removed: Vec<(Vertex, Vertex)> = Vec::new();

    for u in 0..n {
        while let Some(c) = scratch.c4_at(&adj, u) {
            let edges = [(c[0], c[1]), (c[1], c[2]), (c[2], c[3]), (c[3], c[0])];
            let &(a, b) = edges
                .iter()
                .max_by(|&&(a, b), &&(p, q)| {
                    let key1 = (adj[a].len().min(adj[b].len()), adj[a].len().max(adj[b].len()));
                    let key2 = (adj[p].len().min(adj[q].len()), adj[p].len().max(adj[q].len()));
                    key1.cmp(&key2)
                        .then_with(|| (p.min(q), p.max(q)).cmp(&(a.min(b), a.max(b))))
                })
                .unwrap();
            remove_edge(&mut adj, a, b);
            removed.push((a.min(b), a.max(b)));
        }
    }

    removed.sort_unstable();
    let mut removed_edges = 0;
    for &(a, b) in &removed {
        if closes_c4(&adj, a, b) {
            removed_edges += 1;
        } else {
            insert_edge(&mut adj, a, b);
        }
    }

    let graph = Graph::from_adjacency(adj).expect("edge deletion keeps the graph simple");
    debug_assert!(is_c4_free(&graph));
    let avg_degree = graph.avg_degree();
    C4Extraction {
        graph,
        avg_degree,
        target_avg_degree,
        shortfall: avg_degree < target_avg_degree,
        removed_edges,
    }
}

fn remove_edge(adj: &mut [Vec<Vertex>], a: Vertex, b: Vertex) {
    if let Ok(i) = adj[a].binary_search(&b) {
        adj[a].remove(i);
    }
    if let Ok(i) = adj[b].binary_search(&a) {
        adj[b].remove(i);
    }
}

fn insert_edge(adj: &mut [Vec<Vertex>], a: Vertex, b: Vertex) {
    if let Err(i) = adj[a].binary_search(&b) {
        adj[a].insert(i, b);
    }
    if let Err(i) = adj[b].binary_search(&a) {
        adj[b].insert(i, a);
    }
}

/// Whether adding `ab` would create a 4-cycle `a, b, y, x`.
fn closes_c4(adj: &[Vec<Vertex>], a: Vertex, b: Vertex) -> bool {
    adj[a].iter().filter(|&&x| x != b).any(|&x| {
        adj[x]
            .iter()
            .any(|&y| y != a && y != b && adj[b].binary_search(&y).is_ok())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, petersen};

    #[test]
    fn k4_has_a_c4() {
        let g = complete(4);
        let c = find_c4(&g).unwrap();
        assert_eq!(c.len(), 4);
        assert!(Cycle::new(&g, c.vertices().to_vec()).is_ok());
        assert!(!is_c4_free(&g));
    }

    #[test]
    fn petersen_and_trees_are_c4_free() {
        assert!(is_c4_free(&petersen()));
        let tree = Graph::from_edge_list(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
        assert!(is_c4_free(&tree));
    }

    #[test]
    fn petersen_extraction_is_identity() {
        let g = petersen();
        let ex = extract_c4_free_subgraph(&g, 3.0);
        assert_eq!(ex.graph, g);
        assert!(!ex.shortfall);
        assert_eq!(ex.removed_edges, 0);
    }

    #[test]
    fn k6_keeps_average_degree_two() {
        let ex = extract_c4_free_subgraph(&complete(6), 2.0);
        assert!(is_c4_free(&ex.graph));
        assert!(ex.avg_degree >= 2.0, "avg {}", ex.avg_degree);
        assert!(!ex.shortfall);
    }

    #[test]
    fn single_edge_falls_short() {
        let g = Graph::from_edge_list(2, &[(0, 1)]);
        let ex = extract_c4_free_subgraph(&g, 10.0);
        assert!(ex.shortfall);
        assert_eq!(ex.graph.m(), 1);
    }
}
