use serde::{Deserialize, Serialize};

use super::search::{find_violation, SearchBudget};
use super::verify::verify_alpha_expansion;
use super::{CheckMode, ExpansionCriterion, ExpansionError, EXACT_LIMIT};
use crate::graph::{Graph, Subgraph, Vertex};

#[derive(Clone, Debug)]
pub struct CleanOutcome {
    /// Absorbed set, sorted.
    pub b: Vec<Vertex>,
    /// `G - U - B`, with its map back to `g`.
    pub residual: Subgraph,
    pub report: CleanReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CleanReport {
    pub u_size: usize,
    pub b_size: usize,
    pub absorptions: usize,
    pub hypothesis_bound: f64,
    /// Set when `|U|` exceeded the hypothesis and the override was used.
    pub warning: Option<String>,
    /// Whether the residual was exhaustively verified as an `alpha/2`-expander.
    pub residual_verified: bool,
}

/// Greedily grows `B` by absorbing any set whose neighbourhood in the
/// current residual is below `alpha/2` times its size, keeping
/// `|B| <= n/2`. Each absorption preserves `|N_{G-U}(B)| < alpha |B| / 2`.
pub fn clean_for_expansion(
    g: &Graph,
    u: &[Vertex],
    alpha: f64,
    allow_override: bool,
) -> Result<CleanOutcome, ExpansionError> {
    let n = g.n();
    if alpha <= 0.0 {
        return Err(ExpansionError::InvalidArguments("alpha must be positive".into()));
    }
    if let Some(&v) = u.iter().find(|&&v| v >= n) {
        return Err(ExpansionError::InvalidArguments(format!("vertex {v} out of range")));
    }
    let mut in_u = vec![false; n];
    for &v in u {
        in_u[v] = true;
    }
    let u_size = in_u.iter().filter(|&&x| x).count();
    let hypothesis_bound = alpha * alpha * n as f64 / 100.0;
    let warning = if (u_size as f64) > hypothesis_bound {
        if !allow_override {
            return Err(ExpansionError::HypothesisViolated {
                u: u_size,
                bound: hypothesis_bound,
            });
        }
        Some(format!(
            "|U| = {u_size} exceeds alpha^2 n / 100 = {hypothesis_bound:.3}; proceeding by override"
        ))
    } else {
        None
    };

    let half = ExpansionCriterion::Alpha { alpha: alpha / 2.0 };
    let mut alive: Vec<bool> = in_u.iter().map(|&x| !x).collect();
    let mut in_b = vec![false; n];
    let mut b_size = 0;
    let mut absorptions = 0;
    loop {
        let residual_n = alive.iter().filter(|&&a| a).count();
        let hi = (residual_n / 2).min((n / 2).saturating_sub(b_size));
        let budget = SearchBudget {
            roots: 16,
            samples: 64,
            exhaustive_limit: EXACT_LIMIT,
            seed: absorptions as u64,
        };
        let Some(x) = find_violation(g, &alive, &half, 1, hi, &budget) else {
            break;
        };
        for &v in &x {
            alive[v] = false;
            in_b[v] = true;
        }
        b_size += x.len();
        absorptions += 1;
    }

    let b: Vec<Vertex> = (0..n).filter(|&v| in_b[v]).collect();
    let bound = 2.0 * u_size as f64 / alpha;
    if b_size as f64 > bound {
        return Err(ExpansionError::CleanBoundExceeded { b: b_size, bound });
    }
    let outside_u: Vec<bool> = in_u.iter().map(|&x| !x).collect();
    let boundary = boundary_within(g, &b, &outside_u);
    if boundary > b_size {
        return Err(ExpansionError::InvalidArguments(format!(
            "|N(B)| = {boundary} exceeds |B| = {b_size}; input is not an alpha-expander"
        )));
    }

    let residual = g.induced(&alive);
    let mut residual_verified = false;
    if n <= EXACT_LIMIT {
        let cert = verify_alpha_expansion(&residual.graph, alpha / 2.0, CheckMode::Exact)?;
        if let Some(w) = cert.witness {
            return Err(ExpansionError::ResidualNotExpanding {
                witness: residual.lift(&w),
            });
        }
        residual_verified = true;
    }
    Ok(CleanOutcome {
        b,
        residual,
        report: CleanReport {
            u_size,
            b_size,
            absorptions,
            hypothesis_bound,
            warning,
            residual_verified,
        },
    })
}

fn boundary_within(g: &Graph, set: &[Vertex], allowed: &[bool]) -> usize {
    let mut mark = vec![false; g.n()];
    for &v in set {
        mark[v] = true;
    }
    let mut count = 0;
    for &v in set {
        for &w in g.neighbors(v) {
            if allowed[w] && !mark[w] {
                mark[w] = true;
                count += 1;
            }
        }
    }
    count
}
