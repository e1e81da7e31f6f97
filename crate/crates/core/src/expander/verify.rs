use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    CheckMode, ExpansionCertificate, ExpansionCriterion, ExpansionError, ExpansionProfile, Verdict,
};
use crate::graph::{Graph, Vertex};

/// Largest graph the exact (subset-enumerating) mode accepts.
pub const EXACT_LIMIT: usize = 24;

pub fn verify_alpha_expansion(
    g: &Graph,
    alpha: f64,
    mode: CheckMode,
) -> Result<ExpansionCertificate, ExpansionError> {
    verify(g, ExpansionCriterion::Alpha { alpha }, mode)
}

/// Sublinear expansion with the robustness subgraph `F` taken to be empty.
pub fn verify_sublinear_expansion(
    g: &Graph,
    profile: ExpansionProfile,
    mode: CheckMode,
) -> Result<ExpansionCertificate, ExpansionError> {
    verify(g, ExpansionCriterion::Sublinear { profile }, mode)
}

fn verify(
    g: &Graph,
    criterion: ExpansionCriterion,
    mode: CheckMode,
) -> Result<ExpansionCertificate, ExpansionError> {
    let (lo, hi) = criterion.size_range(g.n());
    let (witness, sets_checked) = match mode {
        CheckMode::Exact => {
            if g.n() > EXACT_LIMIT {
                return Err(ExpansionError::TooLarge {
                    n: g.n(),
                    limit: EXACT_LIMIT,
                });
            }
            exact_lex_first(g, &criterion, lo, hi)
        }
        CheckMode::Sampled { budget, seed } => sampled(g, &criterion, lo, hi, budget, seed),
    };
    Ok(ExpansionCertificate {
        mode,
        criterion,
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        },
        witness,
        checked_sizes: (lo, hi),
        sets_checked,
    })
}

/// Depth-first walk over sorted vertex sequences; pre-order visits subsets
/// in lexicographic order, so the first violation met is the least one.
fn exact_lex_first(
    g: &Graph,
    criterion: &ExpansionCriterion,
    lo: usize,
    hi: usize,
) -> (Option<Vec<Vertex>>, u64) {
    let n = g.n();
    if lo > hi || n == 0 {
        return (None, 0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut stack: Vec<(Vertex, u32, u32)> = Vec::new(); // (vertex, set mask, union of adjacency)
    let mut checked = 0u64;
    let mut next = 0usize;
    loop {
        if next < n && stack.len() < hi {
            let (set, union) = stack.last().map_or((0, 0), |&(_, s, u)| (s, u));
            let set = set | (1 << next);
            let union = union | adj[next];
            stack.push((next, set, union));
            let size = stack.len();
            if size >= lo {
                checked += 1;
                let boundary = (union & !set).count_ones() as usize;
                if criterion.violated(size, boundary) {
                    return (Some(stack.iter().map(|&(v, _, _)| v).collect()), checked);
                }
            }
            next += 1;
        } else {
            match stack.pop() {
                Some((v, _, _)) => next = v + 1,
                None => return (None, checked),
            }
        }
    }
}

fn sampled(
    g: &Graph,
    criterion: &ExpansionCriterion,
    lo: usize,
    hi: usize,
    budget: usize,
    seed: u64,
) -> (Option<Vec<Vertex>>, u64) {
    let n = g.n();
    if lo > hi || n == 0 {
        return (None, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots: Vec<Vertex> = if n <= 1024 {
        (0..n).collect()
    } else {
        let mut all: Vec<Vertex> = (0..n).collect();
        all.shuffle(&mut rng);
        all.truncate(budget.max(1));
        all.sort_unstable();
        all
    };

    let ball_results: Vec<(Option<Vec<Vertex>>, u64)> = roots
        .par_iter()
        .map(|&r| ball_violation(g, criterion, r, lo, hi))
        .collect();
    let mut checked: u64 = ball_results.iter().map(|r| r.1).sum();
    let mut best: Option<Vec<Vertex>> = ball_results.into_iter().filter_map(|r| r.0).min();

    let mut in_set = vec![false; n];
    for _ in 0..budget {
        let target = rng.gen_range(lo..=hi);
        let set = random_connected_set(g, target, &mut rng, &mut in_set);
        if set.len() < lo {
            continue;
        }
        checked += 1;
        let boundary = boundary_size(g, &set, &mut in_set);
        if criterion.violated(set.len(), boundary) {
            let mut sorted = set;
            sorted.sort_unstable();
            if best.as_ref().is_none_or(|b| sorted < *b) {
                best = Some(sorted);
            }
        }
    }
    (best, checked)
}

/// Checks every BFS ball around `root` whose size lies in `[lo, hi]`; returns
/// the smallest violating ball (sorted) if any.
fn ball_violation(
    g: &Graph,
    criterion: &ExpansionCriterion,
    root: Vertex,
    lo: usize,
    hi: usize,
) -> (Option<Vec<Vertex>>, u64) {
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    let mut layer_end = 1;
    let mut checked = 0;
    let mut radius = 0;
    loop {
        while let Some(&u) = queue.front() {
            if dist[u] != radius {
                break;
            }
            queue.pop_front();
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = radius + 1;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        // order[..layer_end] is the ball of `radius`; the rest is its boundary.
        let size = layer_end;
        let boundary = order.len() - layer_end;
        if size > hi {
            break;
        }
        if size >= lo {
            checked += 1;
            if criterion.violated(size, boundary) {
                let mut ball = order[..layer_end].to_vec();
                ball.sort_unstable();
                return (Some(ball), checked);
            }
        }
        if boundary == 0 {
            break;
        }
        layer_end = order.len();
        radius += 1;
    }
    (None, checked)
}

pub(crate) fn random_connected_set(
    g: &Graph,
    target: usize,
    rng: &mut impl Rng,
    scratch: &mut [bool],
) -> Vec<Vertex> {
    let n = g.n();
    let start = rng.gen_range(0..n);
    let mut set = vec![start];
    scratch[start] = true;
    let mut frontier: Vec<Vertex> = Vec::new();
    frontier.extend(g.neighbors(start).iter().copied());
    while set.len() < target && !frontier.is_empty() {
        let i = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        if scratch[v] {
            continue;
        }
        scratch[v] = true;
        set.push(v);
        frontier.extend(g.neighbors(v).iter().copied().filter(|&w| !scratch[w]));
    }
    for &v in &set {
        scratch[v] = false;
    }
    set
}

pub(crate) fn boundary_size(g: &Graph, set: &[Vertex], scratch: &mut [bool]) -> usize {
    for &v in set {
        scratch[v] = true;
    }
    let mut seen = Vec::new();
    for &v in set {
        for &w in g.neighbors(v) {
            if !scratch[w] {
                scratch[w] = true;
                seen.push(w);
            }
        }
    }
    let size = seen.len();
    for &v in set.iter().chain(seen.iter()) {
        scratch[v] = false;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::complete;

    fn p4() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)])
    }

    #[test]
    fn k4_is_a_1_expander() {
        let cert = verify_alpha_expansion(&complete(4), 1.0, CheckMode::Exact).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.sets_checked, 10);
    }

    #[test]
    fn p4_fails_with_least_witness() {
        let cert = verify_alpha_expansion(&p4(), 1.0, CheckMode::Exact).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert_eq!(cert.witness, Some(vec![0, 1]));
        assert!(cert.witness_is_genuine(&p4()));
    }

    #[test]
    fn zero_alpha_always_passes() {
        for mode in [CheckMode::Exact, CheckMode::Sampled { budget: 50, seed: 1 }] {
            assert!(verify_alpha_expansion(&p4(), 0.0, mode).unwrap().passed());
        }
    }

    #[test]
    fn exact_mode_size_cap() {
        let g = complete(25);
        assert!(matches!(
            verify_alpha_expansion(&g, 1.0, CheckMode::Exact),
            Err(ExpansionError::TooLarge { .. })
        ));
        assert!(verify_alpha_expansion(&g, 1.0, CheckMode::Sampled { budget: 10, seed: 0 }).is_ok());
    }

    #[test]
    fn sublinear_vacuous_when_range_empty() {
        let g = Graph::from_edge_list(3, &[(0, 1)]);
        let cert =
            verify_sublinear_expansion(&g, ExpansionProfile::new(0.5, 8), CheckMode::Exact).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.sets_checked, 0);
    }

    #[test]
    fn sublinear_complete_graph_passes() {
        let cert = verify_sublinear_expansion(
            &complete(10),
            ExpansionProfile::new(0.1, 2),
            CheckMode::Exact,
        )
        .unwrap();
        assert!(cert.passed());
    }

    #[test]
    fn sampled_finds_path_violation() {
        let path = Graph::from_edge_list(
            30,
            &(0..29).map(|i| (i, i + 1)).collect::<Vec<_>>(),
        );
        let cert =
            verify_alpha_expansion(&path, 1.0, CheckMode::Sampled { budget: 100, seed: 3 }).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert.witness_is_genuine(&path));
    }
}
