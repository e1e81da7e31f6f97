use super::{Graph, Subgraph};

/// The largest induced subgraph with minimum degree at least `d`, obtained
/// by repeatedly deleting vertices of degree below `d`. May be empty.
pub fn min_degree_core(g: &Graph, d: usize) -> Subgraph {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < d).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] < d {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    g.induced(&alive)
}
