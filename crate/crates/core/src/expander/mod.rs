//! Vertex expansion: executable checks for constant (`alpha`) and sublinear
//! `(epsilon1, k)` expansion, plus the constructive tools built on them.

mod clean;
pub(crate) mod connect;
mod diameter;
mod extract;
mod search;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Vertex;

pub use clean::{clean_for_expansion, CleanOutcome};
pub use connect::{connect_avoiding, connect_avoiding_certified, expander_path_bound};
pub use diameter::{find_low_diameter_set, find_low_diameter_set_in};
pub use extract::{extract_expander_subgraph, ExpanderExtraction};
pub use search::{find_violation, SearchBudget};
pub use verify::{verify_alpha_expansion, verify_sublinear_expansion, EXACT_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpansionError {
    #[error("exact verification limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("|U| = {u} exceeds alpha^2 n / 100 = {bound:.3}")]
    HypothesisViolated { u: usize, bound: f64 },
    #[error("cleaned set of size {b} exceeds 2|U|/alpha = {bound:.3}")]
    CleanBoundExceeded { b: usize, bound: f64 },
    #[error("residual graph is not an alpha/2-expander (witness {witness:?})")]
    ResidualNotExpanding { witness: Vec<Vertex> },
    #[error("disconnected after avoidance")]
    Disconnected,
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("no BFS ball of radius {radius} holds {m} vertices")]
    NoLowDiameterSet { m: usize, radius: usize },
}

/// The `(epsilon1, k)` sublinear expansion profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionProfile {
    pub epsilon1: f64,
    pub k: usize,
}

impl Default for ExpansionProfile {
    fn default() -> Self {
        ExpansionProfile {
            epsilon1: 1.0 / 16.0,
            k: 2,
        }
    }
}

impl ExpansionProfile {
    pub fn new(epsilon1: f64, k: usize) -> Self {
        ExpansionProfile { epsilon1, k }
    }

    /// `0` below `k/5`, else `epsilon1 / log2(15x/k)^2`.
    pub fn epsilon(&self, x: usize) -> f64 {
        let x = x as f64;
        let k = self.k as f64;
        if x < k / 5.0 {
            0.0
        } else {
            let l = (15.0 * x / k).log2();
            self.epsilon1 / (l * l)
        }
    }

    /// Required neighbourhood size for a set of `x` vertices.
    pub fn required(&self, x: usize) -> f64 {
        self.epsilon(x) * x as f64
    }

    /// Inclusive range of set sizes the definition constrains on `n` vertices.
    pub fn size_range(&self, n: usize) -> (usize, usize) {
        (self.k.div_ceil(2).max(1), n / 2)
    }
}

/// Which expansion inequality a check enforces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExpansionCriterion {
    /// `|N(S)| >= alpha |S|` for `1 <= |S| <= n/2`.
    Alpha { alpha: f64 },
    /// `|N(X)| >= epsilon(|X|) |X|` for `k/2 <= |X| <= n/2`.
    Sublinear { profile: ExpansionProfile },
}

impl ExpansionCriterion {
    pub fn size_range(&self, n: usize) -> (usize, usize) {
        match self {
            ExpansionCriterion::Alpha { .. } => (1, n / 2),
            ExpansionCriterion::Sublinear { profile } => profile.size_range(n),
        }
    }

    pub fn required(&self, size: usize) -> f64 {
        match self {
            ExpansionCriterion::Alpha { alpha } => alpha * size as f64,
            ExpansionCriterion::Sublinear { profile } => profile.required(size),
        }
    }

    #[inline]
    pub fn violated(&self, size: usize, boundary: usize) -> bool {
        (boundary as f64) < self.required(size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Exact,
    Sampled { budget: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub mode: CheckMode,
    pub criterion: ExpansionCriterion,
    pub verdict: Verdict,
    pub witness: Option<Vec<Vertex>>,
    /// Inclusive range of set sizes covered; empty when `lo > hi`.
    pub checked_sizes: (usize, usize),
    pub sets_checked: u64,
}

impl ExpansionCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Re-checks a failing witness against `g` from scratch.
    pub fn witness_is_genuine(&self, g: &crate::graph::Graph) -> bool {
        match &self.witness {
            None => self.verdict == Verdict::Pass,
            Some(w) => {
                let (lo, hi) = self.criterion.size_range(g.n());
                w.len() >= lo
                    && w.len() <= hi
                    && self.criterion.violated(w.len(), g.neighborhood(w).len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_profile_shape() {
        let p = ExpansionProfile::new(0.5, 10);
        assert_eq!(p.epsilon(1), 0.0);
        let e = p.epsilon(2);
        assert!((e - 0.5 / (3.0f64.log2().powi(2))).abs() < 1e-12);
        assert!(p.epsilon(100) < p.epsilon(10));
    }

    #[test]
    fn two_k5_example_is_not_violated() {
        // 0.5 / log2(37.5)^2 * 5 is about 0.091, far below |N(X)| = 1.
        let p = ExpansionProfile::new(0.5, 2);
        assert!(p.required(5) < 1.0);
        assert!((p.required(5) - 0.0914).abs() < 1e-3);
    }
}
