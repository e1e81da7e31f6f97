use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// Blocks (maximal 2-connected subgraphs and bridges) and cut vertices.
///
/// `tree_edges` pairs a block index with a cut vertex it contains; together
/// they form the block–cut forest, one tree per component with an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutTree {
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    pub tree_edges: Vec<(usize, Vertex)>,
}

impl BlockCutTree {
    /// Index of the block with the most vertices (lowest index on ties).
    pub fn largest_block(&self) -> Option<usize> {
        (0..self.blocks.len()).max_by(|&a, &b| {
            self.blocks[a]
                .len()
                .cmp(&self.blocks[b].len())
                .then(b.cmp(&a))
        })
    }
}

pub fn block_cut_tree(g: &Graph) -> BlockCutTree {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    // frame: (vertex, parent, next neighbour index)
    let mut frames: Vec<(Vertex, Vertex, usize)> = Vec::new();
    let mut mark = vec![usize::MAX; n];

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut next)) = frames.last_mut() {
            if *next < g.degree(v) {
                let w = g.neighbors(v)[*next];
                *next += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let id = blocks.len();
                        let mut members = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            for x in [a, b] {
                                if mark[x] != id {
                                    mark[x] = id;
                                    members.push(x);
                                }
                            }
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        members.sort_unstable();
                        blocks.push(members);
                    }
                }
            }
        }
    }

    blocks.sort();
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| count[v] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            if count[v] >= 2 {
                tree_edges.push((i, v));
            }
        }
    }
    BlockCutTree {
        blocks,
        cut_vertices,
        tree_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::cycle;

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let t = block_cut_tree(&g);
        assert_eq!(t.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(t.cut_vertices, vec![2]);
        assert_eq!(t.tree_edges, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn tree_edges_are_bridges() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let t = block_cut_tree(&g);
        assert_eq!(t.blocks.len(), 5);
        assert!(t.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(t.cut_vertices, vec![1, 3]);
    }

    #[test]
    fn cycle_is_one_block() {
        let t = block_cut_tree(&cycle(5));
        assert_eq!(t.blocks.len(), 1);
        assert!(t.cut_vertices.is_empty());
    }

    #[test]
    fn isolated_vertices_have_no_block() {
        let g = Graph::from_edge_list(4, &[(1, 2)]);
        let t = block_cut_tree(&g);
        assert_eq!(t.blocks, vec![vec![1, 2]]);
    }
}
