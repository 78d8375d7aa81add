//! `key = value` configuration file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use tiltlab_core::fuchs_salce::DEFAULT_TREE_LIMIT;
use tiltlab_core::localization::DEFAULT_STAGE_BOUND;
use tiltlab_core::ring::DEFAULT_TRIAL_BOUND;
use tiltlab_core::spectrum::DEFAULT_ORACLE_BOUND;

pub const CONFIG_ENV: &str = "TILTLAB_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub factor_trial_bound: u64,
    pub oracle_bound: usize,
    pub tree_limit: u128,
    pub stage_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            factor_trial_bound: DEFAULT_TRIAL_BOUND,
            oracle_bound: DEFAULT_ORACLE_BOUND,
            tree_limit: DEFAULT_TREE_LIMIT,
            stage_bound: DEFAULT_STAGE_BOUND,
        }
    }
}

impl Config {
    /// Blank lines and `#` comments are skipped; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("config line {}: expected `key = value`", n + 1);
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| anyhow::anyhow!("config line {}: invalid value `{value}` for {key}", n + 1);
            match key {
                "factor_trial_bound" => cfg.factor_trial_bound = value.parse().map_err(bad)?,
                "oracle_bound" => cfg.oracle_bound = value.parse().map_err(bad)?,
                "tree_limit" => cfg.tree_limit = value.parse().map_err(bad)?,
                "stage_bound" => cfg.stage_bound = value.parse().map_err(bad)?,
                _ => bail!("config line {}: unknown key `{key}`", n + 1),
            }
        }
        Ok(cfg)
    }

    /// The explicit path wins over the environment variable.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) => p.into(),
                None => return Ok(Config::default()),
            },
        };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = Config::parse("# bounds\noracle_bound = 8\n\ntree_limit=50 # small\n").unwrap();
        assert_eq!(cfg.oracle_bound, 8);
        assert_eq!(cfg.tree_limit, 50);
        assert_eq!(cfg.stage_bound, DEFAULT_STAGE_BOUND);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(Config::parse("depth = 3").is_err());
        assert!(Config::parse("oracle_bound = six").is_err());
        assert!(Config::parse("oracle_bound").is_err());
    }
}
