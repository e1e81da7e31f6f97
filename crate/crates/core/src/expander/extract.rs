use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::search::{find_violation, SearchBudget};
use super::{ExpansionCriterion, ExpansionProfile};
use crate::graph::{Graph, Subgraph, Vertex};

#[derive(Clone, Debug)]
pub struct ExpanderExtraction {
    pub subgraph: Subgraph,
    pub stats: ExtractionStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractionStats {
    pub input_avg_degree: f64,
    pub avg_degree: f64,
    pub min_degree: usize,
    pub vertices: usize,
    pub splits: usize,
    pub peeled: usize,
    /// `|H| < k`.
    pub small: bool,
    /// Input had no edges; returned unchanged.
    pub degenerate: bool,
}

const MAX_SPLITS: usize = 64;

/// Komlós–Szemerédi style extraction: while a violating set is found, keep
/// the denser side (only if it retains half the input average degree), then
/// peel to `delta >= d/2`. Both degree postconditions hold exactly; the
/// expansion of the result is only as good as the heuristic search.
pub fn extract_expander_subgraph(
    g: &Graph,
    profile: ExpansionProfile,
    seed: u64,
) -> ExpanderExtraction {
    let input_avg = g.avg_degree();
    if g.m() == 0 {
        let subgraph = Subgraph::identity(g);
        return ExpanderExtraction {
            stats: ExtractionStats {
                input_avg_degree: input_avg,
                avg_degree: 0.0,
                min_degree: g.min_degree(),
                vertices: g.n(),
                splits: 0,
                peeled: 0,
                small: g.n() < profile.k,
                degenerate: true,
            },
            subgraph,
        };
    }

    // d(H) >= d(G)/2 iff 2 m_H n_G >= m_G n_H, compared in integers.
    let (m_g, n_g) = (g.m() as u128, g.n() as u128);
    let keeps_half = |h: &Graph| 2 * (h.m() as u128) * n_g >= m_g * (h.n() as u128);

    let criterion = ExpansionCriterion::Sublinear { profile };
    let mut alive = vec![true; g.n()];
    let mut splits = 0;
    while splits < MAX_SPLITS {
        let count = alive.iter().filter(|&&a| a).count();
        let (lo, hi) = profile.size_range(count);
        let budget = SearchBudget {
            roots: 12,
            samples: 32,
            exhaustive_limit: 16,
            seed: seed.wrapping_add(splits as u64),
        };
        let Some(x) = find_violation(g, &alive, &criterion, lo, hi, &budget) else {
            break;
        };
        let mut inside = vec![false; g.n()];
        for &v in &x {
            inside[v] = true;
        }
        let rest: Vec<bool> = (0..g.n()).map(|v| alive[v] && !inside[v]).collect();
        let side_x = g.induced(&inside);
        let side_rest = g.induced(&rest);
        let pick = match (keeps_half(&side_x.graph), keeps_half(&side_rest.graph)) {
            (true, true) => {
                if side_x.graph.avg_degree() > side_rest.graph.avg_degree() {
                    inside
                } else {
                    rest
                }
            }
            (true, false) => inside,
            (false, true) => rest,
            (false, false) => break,
        };
        alive = pick;
        splits += 1;
    }

    let before = alive.iter().filter(|&&a| a).count();
    peel_half_average(g, &mut alive);
    let subgraph = g.induced(&alive);
    let h = &subgraph.graph;
    assert!(keeps_half(h), "average degree fell below half the input average");
    assert!(
        (h.min_degree() as u128) * (h.n() as u128) >= h.m() as u128,
        "minimum degree below half the average"
    );
    let stats = ExtractionStats {
        input_avg_degree: input_avg,
        avg_degree: h.avg_degree(),
        min_degree: h.min_degree(),
        vertices: h.n(),
        splits,
        peeled: before - h.n(),
        small: h.n() < profile.k,
        degenerate: false,
    };
    ExpanderExtraction { subgraph, stats }
}

/// Removes vertices with `deg * n' < m'` (degree below half the average)
/// until none remain; each removal strictly raises the average degree.
fn peel_half_average(g: &Graph, alive: &mut [bool]) {
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().filter(|&&w| alive[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut n_live = alive.iter().filter(|&&a| a).count();
    let mut m_live: usize = (0..g.n()).filter(|&v| alive[v]).map(|v| deg[v]).sum::<usize>() / 2;
    let mut order: BTreeSet<(usize, Vertex)> =
        (0..g.n()).filter(|&v| alive[v]).map(|v| (deg[v], v)).collect();
    while let Some(&(d, v)) = order.first() {
        if d * n_live >= m_live {
            break;
        }
        order.pop_first();
        alive[v] = false;
        n_live -= 1;
        m_live -= d;
        for &w in g.neighbors(v) {
            if alive[w] {
                order.remove(&(deg[w], w));
                deg[w] -= 1;
                order.insert((deg[w], w));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::complete;

    #[test]
    fn complete_graph_is_fixed_point() {
        let ex = extract_expander_subgraph(&complete(10), ExpansionProfile::default(), 0);
        assert_eq!(ex.subgraph.graph, complete(10));
        assert_eq!(ex.stats.min_degree, 9);
    }

    #[test]
    fn pendants_are_stripped() {
        let mut edges = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                edges.push((i, j));
            }
        }
        for p in 10..110 {
            edges.push((0, p));
        }
        let g = Graph::from_edge_list(110, &edges);
        let ex = extract_expander_subgraph(&g, ExpansionProfile::default(), 0);
        let h = &ex.subgraph;
        assert!((0..10).all(|v| h.local(v).is_some()));
        assert!(4 * h.graph.m() * g.n() >= 2 * g.m() * h.graph.n());
        assert!(h.graph.min_degree() * h.graph.n() >= h.graph.m());
    }

    #[test]
    fn edgeless_input_is_degenerate() {
        let g = Graph::empty(5);
        let ex = extract_expander_subgraph(&g, ExpansionProfile::default(), 0);
        assert!(ex.stats.degenerate);
        assert_eq!(ex.subgraph.graph.n(), 5);
    }
}
