use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    RandomRegular,
    GnpMinDegree,
    HighGirthRegular,
    Complete,
    Cycle,
    Petersen,
}

impl std::str::FromStr for GeneratorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "random-regular" => GeneratorKind::RandomRegular,
            "gnp-min-degree" => GeneratorKind::GnpMinDegree,
            "high-girth-regular" => GeneratorKind::HighGirthRegular,
            "complete" => GeneratorKind::Complete,
            "cycle" => GeneratorKind::Cycle,
            "petersen" => GeneratorKind::Petersen,
            other => return Err(format!("unknown generator kind '{other}'")),
        })
    }
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::RandomRegular => "random-regular",
            GeneratorKind::GnpMinDegree => "gnp-min-degree",
            GeneratorKind::HighGirthRegular => "high-girth-regular",
            GeneratorKind::Complete => "complete",
            GeneratorKind::Cycle => "cycle",
            GeneratorKind::Petersen => "petersen",
        }
    }
}

/// Generator parameters. `d` is the degree for the regular families and the
/// expected average degree for `gnp-min-degree`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n: usize,
    #[serde(default)]
    pub d: usize,
    #[serde(default)]
    pub min_degree: Option<usize>,
    #[serde(default)]
    pub girth: Option<usize>,
}

impl GeneratorParams {
    pub fn new(n: usize, d: usize) -> Self {
        GeneratorParams {
            n,
            d,
            ..Default::default()
        }
    }
}

const MAX_RESTARTS: usize = 2000;

pub fn generate(kind: GeneratorKind, params: GeneratorParams, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match kind {
        GeneratorKind::Complete => complete(params.n),
        GeneratorKind::Cycle => {
            if params.n < 3 {
                return Err(GraphError::Infeasible("cycle needs n >= 3".into()));
            }
            cycle(params.n)
        }
        GeneratorKind::Petersen => petersen(),
        GeneratorKind::RandomRegular => random_regular(params.n, params.d, None, &mut rng)?,
        GeneratorKind::HighGirthRegular => {
            let girth = params.girth.unwrap_or(5);
            random_regular(params.n, params.d, Some(girth), &mut rng)?
        }
        GeneratorKind::GnpMinDegree => {
            let min_degree = params.min_degree.unwrap_or(params.d / 2);
            gnp_min_degree(params.n, params.d as f64, min_degree, &mut rng)?
        }
    };
    debug_assert!(g.check_invariants().is_ok());
    Ok(g)
}

pub(crate) fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edge_list(n, &edges)
}

pub(crate) fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges)
}

pub(crate) fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edge_list(10, &edges)
}

/// Random pairing of degree stubs, rejecting pairs that would form a loop,
/// a repeated edge or (when `girth` is set) a cycle shorter than `girth`.
/// A pairing that gets stuck is discarded and restarted.
fn random_regular(
    n: usize,
    d: usize,
    girth: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, GraphError> {
    if d >= n || (n * d) % 2 != 0 {
        return Err(GraphError::Infeasible(format!(
            "no {d}-regular graph on {n} vertices"
        )));
    }
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    'restart: for _ in 0..MAX_RESTARTS {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::with_capacity(d); n];
        let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        while !stubs.is_empty() {
            let budget = 50 + 4 * stubs.len();
            let mut placed = false;
            for _ in 0..budget {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i == j || u == v || adj[u].contains(&v) {
                    continue;
                }
                if let Some(g) = girth {
                    if within_distance(&adj, u, v, g.saturating_sub(2)) {
                        continue;
                    }
                }
                adj[u].push(v);
                adj[v].push(u);
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        return Graph::from_adjacency(adj);
    }
    Err(GraphError::Infeasible(format!(
        "pairing failed after {MAX_RESTARTS} restarts (n={n}, d={d}, girth={girth:?})"
    )))
}

fn within_distance(adj: &[Vec<Vertex>], from: Vertex, to: Vertex, limit: usize) -> bool {
    if limit == 0 {
        return from == to;
    }
    let mut seen = vec![(from, 0usize)];
    let mut queue = VecDeque::from([(from, 0usize)]);
    while let Some((u, du)) = queue.pop_front() {
        if du == limit {
            continue;
        }
        for &w in &adj[u] {
            if w == to {
                return true;
            }
            if !seen.iter().any(|&(s, _)| s == w) {
                seen.push((w, du + 1));
                queue.push_back((w, du + 1));
            }
        }
    }
    false
}

fn gnp_min_degree(
    n: usize,
    avg_degree: f64,
    min_degree: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, GraphError> {
    if n < 2 || min_degree >= n {
        return Err(GraphError::Infeasible(format!(
            "min degree {min_degree} impossible on {n} vertices"
        )));
    }
    let p = (avg_degree / (n - 1) as f64).clamp(0.0, 1.0);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    if p > 0.0 {
        // Geometric skipping over the pairs (v, w) with w < v.
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1isize);
        while v < n {
            let r: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let skip = if p >= 1.0 { 0 } else { (r.ln() / log_q).floor() as isize };
            w += 1 + skip;
            while w >= v as isize && v < n {
                w -= v as isize;
                v += 1;
            }
            if v < n {
                let w = w as usize;
                adj[v].push(w);
                adj[w].push(v);
            }
        }
    }
    for v in 0..n {
        while adj[v].len() < min_degree {
            let w = rng.gen_range(0..n);
            if w != v && !adj[v].contains(&w) {
                adj[v].push(w);
                adj[w].push(v);
            }
        }
    }
    Graph::from_adjacency(adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_k5() {
        let g = generate(GeneratorKind::Complete, GeneratorParams::new(5, 0), 0).unwrap();
        assert_eq!(g.m(), 10);
    }

    #[test]
    fn random_regular_degrees_exact() {
        let g = generate(GeneratorKind::RandomRegular, GeneratorParams::new(10, 3), 7).unwrap();
        assert!((0..10).all(|v| g.degree(v) == 3));
        let again = generate(GeneratorKind::RandomRegular, GeneratorParams::new(10, 3), 7).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn random_regular_16_at_scale() {
        let g = generate(GeneratorKind::RandomRegular, GeneratorParams::new(2048, 16), 1).unwrap();
        assert!((0..g.n()).all(|v| g.degree(v) == 16));
    }

    #[test]
    fn petersen_girth_five() {
        let g = generate(GeneratorKind::Petersen, GeneratorParams::default(), 0).unwrap();
        assert_eq!((g.n(), g.m()), (10, 15));
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn high_girth_regular() {
        let params = GeneratorParams {
            n: 60,
            d: 3,
            girth: Some(6),
            ..Default::default()
        };
        let g = generate(GeneratorKind::HighGirthRegular, params, 3).unwrap();
        assert!((0..60).all(|v| g.degree(v) == 3));
        assert!(g.girth().unwrap() >= 6);
    }

    #[test]
    fn gnp_min_degree_respected() {
        let params = GeneratorParams {
            n: 300,
            d: 6,
            min_degree: Some(4),
            girth: None,
        };
        let g = generate(GeneratorKind::GnpMinDegree, params, 11).unwrap();
        assert!(g.min_degree() >= 4);
        assert!(g.avg_degree() > 4.0 && g.avg_degree() < 9.0);
    }

    #[test]
    fn infeasible_params() {
        assert!(generate(GeneratorKind::RandomRegular, GeneratorParams::new(5, 3), 0).is_err());
        assert!(generate(GeneratorKind::RandomRegular, GeneratorParams::new(4, 4), 0).is_err());
        assert!(generate(GeneratorKind::Cycle, GeneratorParams::new(2, 0), 0).is_err());
    }
}
