//! Key-value config files for the command line. One `key = value` pair per
//! line, `#` starts a comment. Flags override file values.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sweep::AnalysisMode;

/// Optional overrides read from a config file.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct FileConfig {
    pub rho_min: Option<f64>,
    pub rho_max: Option<f64>,
    pub rho_step: Option<f64>,
    pub mu: Option<f64>,
    pub reward: Option<f64>,
    pub cost: Option<Vec<f64>>,
    pub mode: Option<AnalysisMode>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub simulate: Option<bool>,
    pub horizon: Option<f64>,
    pub warmup_frac: Option<f64>,
    pub replications: Option<usize>,
    pub threshold: Option<usize>,
    pub join_prob: Option<f64>,
}

pub fn load_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text, &path.display().to_string())
}

pub fn parse_config_str(text: &str, origin: &str) -> Result<FileConfig> {
    let mut cfg = FileConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!("{origin}:{lineno}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Error::config(format!(
                "{origin}:{lineno}: field `{key}`: invalid {what} `{value}`"
            ))
        };
        match key {
            "rho_min" => cfg.rho_min = Some(value.parse().map_err(|_| bad("number"))?),
            "rho_max" => cfg.rho_max = Some(value.parse().map_err(|_| bad("number"))?),
            "rho_step" => cfg.rho_step = Some(value.parse().map_err(|_| bad("number"))?),
            "mu" => cfg.mu = Some(value.parse().map_err(|_| bad("number"))?),
            "reward" => cfg.reward = Some(value.parse().map_err(|_| bad("number"))?),
            "cost" => {
                let coeffs = value
                    .split(',')
                    .map(|c| c.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("coefficient list"))?;
                cfg.cost = Some(coeffs);
            }
            "mode" => {
                cfg.mode = Some(value.parse().map_err(|_| bad("mode"))?);
            }
            "seed" => cfg.seed = Some(value.parse().map_err(|_| bad("integer"))?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "simulate" => {
                cfg.simulate = Some(value.parse().map_err(|_| bad("boolean"))?);
            }
            "horizon" => cfg.horizon = Some(value.parse().map_err(|_| bad("number"))?),
            "warmup_frac" => cfg.warmup_frac = Some(value.parse().map_err(|_| bad("number"))?),
            "replications" => {
                cfg.replications = Some(value.parse().map_err(|_| bad("integer"))?)
            }
            "threshold" => cfg.threshold = Some(value.parse().map_err(|_| bad("integer"))?),
            "join_prob" => cfg.join_prob = Some(value.parse().map_err(|_| bad("number"))?),
            other => {
                return Err(Error::config(format!(
                    "{origin}:{lineno}: unknown field `{other}`"
                )))
            }
        }
    }
    Ok(cfg)
}
