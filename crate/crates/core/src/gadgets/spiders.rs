use super::{validate_spider, NiceSpider};
use crate::expander::connect::bfs_path;
use crate::graph::{mask_of, Graph, Path, Vertex};

/// `L` = vertices of degree at least `m`; `R` = vertices with at least four
/// neighbours in `L`. Both sorted.
pub fn classify_degrees(g: &Graph, m: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    let m = m.max(1);
    let l: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= m).collect();
    let in_l = mask_of(g.n(), &l);
    let r = (0..g.n())
        .filter(|&v| g.neighbors(v).iter().filter(|&&w| in_l[w]).count() >= 4)
        .collect();
    (l, r)
}

/// Greedy packing of vertex-disjoint nice spiders avoiding `forbidden`:
/// first 3-stars on vertices with three free `L`-neighbours, then spiders
/// whose two long legs are shortest paths of length at most `max_leg_len`.
pub fn find_nice_spiders(
    g: &Graph,
    l_set: &[Vertex],
    forbidden: &[Vertex],
    max_leg_len: usize,
    want: usize,
) -> Vec<NiceSpider> {
    let n = g.n();
    let in_l = mask_of(n, l_set);
    let mut used = mask_of(n, forbidden);
    let mut out: Vec<NiceSpider> = Vec::new();
    if want == 0 || l_set.is_empty() {
        return out;
    }
    let max_leg_len = max_leg_len.max(1);

    for x in 0..n {
        if out.len() >= want {
            return out;
        }
        if used[x] {
            continue;
        }
        let free: Vec<Vertex> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| in_l[w] && !used[w])
            .take(3)
            .collect();
        if let [z1, z2, z3] = free[..] {
            let legs = [z1, z2, z3].map(|z| Path::new(g, vec![x, z]).expect("edge"));
            push(g, &in_l, &mut used, &mut out, x, [z1, z2, z3], legs, max_leg_len);
        }
    }

    let mut attempts = 8 * want.max(8);
    for x in 0..n {
        if out.len() >= want || attempts == 0 {
            break;
        }
        if used[x] {
            continue;
        }
        let Some(z2) = g.neighbors(x).iter().copied().find(|&w| in_l[w] && !used[w]) else {
            continue;
        };
        attempts -= 1;
        let mut target: Vec<bool> = (0..n).map(|v| in_l[v] && !used[v]).collect();
        target[x] = false;
        target[z2] = false;
        let mut blocked = used.clone();
        blocked[z2] = true;
        let Some(leg1) = bfs_path(g, &[x], &target, &blocked, Some(max_leg_len)) else {
            continue;
        };
        for &v in &leg1[1..] {
            blocked[v] = true;
            target[v] = false;
        }
        let Some(leg3) = bfs_path(g, &[x], &target, &blocked, Some(max_leg_len)) else {
            continue;
        };
        let (z1, z3) = (*leg1.last().unwrap(), *leg3.last().unwrap());
        let legs = [
            Path::new_unchecked(leg1),
            Path::new(g, vec![x, z2]).expect("edge"),
            Path::new_unchecked(leg3),
        ];
        push(g, &in_l, &mut used, &mut out, x, [z1, z2, z3], legs, max_leg_len);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn push(
    g: &Graph,
    in_l: &[bool],
    used: &mut [bool],
    out: &mut Vec<NiceSpider>,
    center: Vertex,
    leaves: [Vertex; 3],
    legs: [Path; 3],
    max_leg_len: usize,
) {
    let s = NiceSpider {
        center,
        leaves,
        legs,
        max_leg_len,
    };
    validate_spider(g, &s, in_l).expect("constructed spider is valid");
    for v in s.vertices() {
        used[v] = true;
    }
    out.push(s);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::complete;

    #[test]
    fn classify_examples() {
        let (l, r) = classify_degrees(&complete(5), 4);
        assert_eq!(l, vec![0, 1, 2, 3, 4]);
        assert_eq!(r, vec![0, 1, 2, 3, 4]);
        let star = Graph::from_edge_list(10, &(1..10).map(|i| (0, i)).collect::<Vec<_>>());
        assert_eq!(classify_degrees(&star, 5), (vec![0], vec![]));
        let cube = Graph::from_edge_list(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
        );
        assert_eq!(classify_degrees(&cube, 4), (vec![], vec![]));
    }

    #[test]
    fn k44_star_centered_on_other_side() {
        let edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        let g = Graph::from_edge_list(8, &edges);
        let spiders = find_nice_spiders(&g, &[0, 1, 2, 3], &[], 3, 1);
        assert_eq!(spiders.len(), 1);
        assert!(spiders[0].center >= 4);
        assert!(spiders[0].legs.iter().all(|l| l.len() == 1));
    }

    #[test]
    fn empty_l_gives_nothing() {
        assert!(find_nice_spiders(&complete(6), &[], &[], 3, 4).is_empty());
    }

    #[test]
    fn two_disjoint_claws() {
        let g = Graph::from_edge_list(8, &[(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)]);
        let spiders = find_nice_spiders(&g, &[1, 2, 3, 5, 6, 7], &[], 2, 2);
        assert_eq!(spiders.len(), 2);
        let mut all: Vec<Vertex> = spiders.iter().flat_map(|s| s.vertices()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn stretched_legs() {
        // center 0, z2 = 1 adjacent; z1 = 4 via 0-2-4, z3 = 5 via 0-3-5
        let g = Graph::from_edge_list(6, &[(0, 1), (0, 2), (0, 3), (2, 4), (3, 5)]);
        let spiders = find_nice_spiders(&g, &[1, 4, 5], &[], 2, 1);
        assert_eq!(spiders.len(), 1);
        let s = &spiders[0];
        assert_eq!(s.center, 0);
        assert_eq!(s.leaves[1], 1);
        assert_eq!(s.legs[0].len() + s.legs[2].len(), 4);
    }
}
