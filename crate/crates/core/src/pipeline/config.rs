use serde::{Deserialize, Serialize};

use super::PipelineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Exhaustive expansion checks where the size allows.
    Exact,
    Heuristic,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "heuristic" => Ok(Mode::Heuristic),
            other => Err(format!("unknown mode '{other}' (expected exact or heuristic)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub min_degree_c: usize,
    pub epsilon1: f64,
    pub k: usize,
    pub degree_threshold_m: usize,
    pub anchor_size: usize,
    pub max_cycle_len: usize,
    pub max_path_len: usize,
    pub max_link_len: usize,
    pub gadget_budget: usize,
    pub seed: u64,
    pub oracle_limit: usize,
    pub mode: Mode,
}

impl PipelineConfig {
    /// Defaults scaled to a graph on `n` vertices.
    pub fn for_n(n: usize) -> PipelineConfig {
        let log = (n.max(2) as f64).log2();
        let max_path_len = (log.powi(2).ceil() as usize).max(1);
        PipelineConfig {
            min_degree_c: 16,
            epsilon1: 1.0 / 16.0,
            k: 2,
            degree_threshold_m: (2f64.powf(log.powf(0.25)).ceil() as usize).max(8),
            anchor_size: ((n as f64).powf(0.25).floor() as usize).max(4),
            max_cycle_len: (log.powi(3).ceil() as usize).max(max_path_len),
            max_path_len,
            max_link_len: max_path_len,
            gadget_budget: (log.powi(2).ceil() as usize).max(2),
            seed: 0,
            oracle_limit: crate::oracle::DEFAULT_LIMIT_N,
            mode: Mode::Heuristic,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let sizes = [
            ("min_degree_c", self.min_degree_c),
            ("k", self.k),
            ("degree_threshold_m", self.degree_threshold_m),
            ("anchor_size", self.anchor_size),
            ("max_cycle_len", self.max_cycle_len),
            ("max_path_len", self.max_path_len),
            ("max_link_len", self.max_link_len),
            ("gadget_budget", self.gadget_budget),
        ];
        if let Some((name, _)) = sizes.iter().find(|(_, v)| *v == 0) {
            return Err(PipelineError::Config(format!("{name} must be at least 1")));
        }
        if !(self.epsilon1 > 0.0 && self.epsilon1.is_finite()) {
            return Err(PipelineError::Config("epsilon1 must be positive".into()));
        }
        if self.max_path_len > self.max_cycle_len {
            return Err(PipelineError::Config(format!(
                "max_path_len {} exceeds max_cycle_len {}",
                self.max_path_len, self.max_cycle_len
            )));
        }
        Ok(())
    }
}

/// Partial configuration; unset fields keep the size-scaled defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigOverrides {
    pub min_degree_c: Option<usize>,
    pub epsilon1: Option<f64>,
    pub k: Option<usize>,
    pub degree_threshold_m: Option<usize>,
    pub anchor_size: Option<usize>,
    pub max_cycle_len: Option<usize>,
    pub max_path_len: Option<usize>,
    pub max_link_len: Option<usize>,
    pub gadget_budget: Option<usize>,
    pub seed: Option<u64>,
    pub oracle_limit: Option<usize>,
    pub mode: Option<Mode>,
}

impl ConfigOverrides {
    pub fn resolve(&self, n: usize) -> PipelineConfig {
        let base = PipelineConfig::for_n(n);
        PipelineConfig {
            min_degree_c: self.min_degree_c.unwrap_or(base.min_degree_c),
            epsilon1: self.epsilon1.unwrap_or(base.epsilon1),
            k: self.k.unwrap_or(base.k),
            degree_threshold_m: self.degree_threshold_m.unwrap_or(base.degree_threshold_m),
            anchor_size: self.anchor_size.unwrap_or(base.anchor_size),
            max_cycle_len: self.max_cycle_len.unwrap_or(base.max_cycle_len),
            max_path_len: self.max_path_len.unwrap_or(base.max_path_len),
            max_link_len: self.max_link_len.or(self.max_path_len).unwrap_or(base.max_link_len),
            gadget_budget: self.gadget_budget.unwrap_or(base.gadget_budget),
            seed: self.seed.unwrap_or(base.seed),
            oracle_limit: self.oracle_limit.unwrap_or(base.oracle_limit),
            mode: self.mode.unwrap_or(base.mode),
        }
    }

    /// Fields set in `other` win.
    pub fn merged(&self, other: &ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            min_degree_c: other.min_degree_c.or(self.min_degree_c),
            epsilon1: other.epsilon1.or(self.epsilon1),
            k: other.k.or(self.k),
            degree_threshold_m: other.degree_threshold_m.or(self.degree_threshold_m),
            anchor_size: other.anchor_size.or(self.anchor_size),
            max_cycle_len: other.max_cycle_len.or(self.max_cycle_len),
            max_path_len: other.max_path_len.or(self.max_path_len),
            max_link_len: other.max_link_len.or(self.max_link_len),
            gadget_budget: other.gadget_budget.or(self.gadget_budget),
            seed: other.seed.or(self.seed),
            oracle_limit: other.oracle_limit.or(self.oracle_limit),
            mode: other.mode.or(self.mode),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_at_4096() {
        let c = PipelineConfig::for_n(4096);
        assert_eq!(c.min_degree_c, 16);
        assert_eq!(c.degree_threshold_m, 8);
        assert_eq!(c.anchor_size, 8);
        assert_eq!(c.max_cycle_len, 1728);
        assert_eq!(c.max_path_len, 144);
        assert_eq!(c.gadget_budget, 144);
        c.validate().unwrap();
    }

    #[test]
    fn tiny_graphs_keep_valid_defaults() {
        for n in 0..40 {
            PipelineConfig::for_n(n).validate().unwrap();
        }
    }

    #[test]
    fn path_longer_than_cycle_rejected() {
        let o = ConfigOverrides {
            max_path_len: Some(50),
            max_cycle_len: Some(10),
            ..Default::default()
        };
        assert!(o.resolve(100).validate().is_err());
    }

    #[test]
    fn overrides_merge() {
        let a = ConfigOverrides {
            seed: Some(1),
            k: Some(3),
            ..Default::default()
        };
        let b = ConfigOverrides {
            seed: Some(2),
            ..Default::default()
        };
        let m = a.merged(&b);
        assert_eq!((m.seed, m.k), (Some(2), Some(3)));
    }
}
