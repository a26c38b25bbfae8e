//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are
//! errors so that typos do not silently fall back to defaults.
//!
//! ```text
//! mmas.alpha = 2
//! mmas.n_ants = 60
//! heuristic.b = 0
//! bench.repeats = 5
//! ```

use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use crate::bench::BenchConfig;
use crate::error::{McspError, Result};
use crate::exact::EXACT_LIMIT;
use crate::mmas::MmasParams;

/// Every setting the command line tool reads from a file.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub mmas: MmasParams,
    pub bench: BenchConfig,
    pub exact_limit: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mmas: MmasParams::default(),
            bench: BenchConfig::default(),
            exact_limit: EXACT_LIMIT,
        }
    }
}

pub const KEYS: &[&str] = &[
    "heuristic.a",
    "heuristic.b",
    "mmas.alpha",
    "mmas.beta",
    "mmas.epsilon",
    "mmas.n_ants",
    "mmas.p_best",
    "mmas.init_pheromone",
    "mmas.max_time_secs",
    "mmas.max_stale_iters",
    "mmas.max_iters",
    "mmas.n_runs",
    "mmas.seed",
    "mmas.avg",
    "mmas.random_start",
    "mmas.parallel",
    "bench.repeats",
    "bench.seed",
    "bench.alpha",
    "bench.record_time",
    "bench.parallel",
    "exact.limit",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| McspError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(McspError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
        }),
    }
}

impl Config {
    /// Sets one key. Values are checked for type here and for range when
    /// the solver validates its parameters.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let m = &mut self.mmas;
        match key {
            "heuristic.a" => m.weights.a = parse(key, value)?,
            "heuristic.b" => m.weights.b = parse(key, value)?,
            "mmas.alpha" => m.alpha = parse(key, value)?,
            "mmas.beta" => m.beta = parse(key, value)?,
            "mmas.epsilon" => m.epsilon = parse(key, value)?,
            "mmas.n_ants" => m.n_ants = parse(key, value)?,
            "mmas.p_best" => m.p_best = parse(key, value)?,
            "mmas.init_pheromone" => m.init_pheromone = parse(key, value)?,
            "mmas.max_time_secs" => {
                let secs: f64 = parse(key, value)?;
                m.max_time =
                    Duration::try_from_secs_f64(secs).map_err(|_| McspError::BadValue {
                        key: key.to_string(),
                        value: value.to_string(),
                    })?;
            }
            "mmas.max_stale_iters" => m.max_stale_iterations = parse(key, value)?,
            "mmas.max_iters" => {
                m.max_iterations = match value {
                    "none" | "" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "mmas.n_runs" => m.n_runs = parse(key, value)?,
            "mmas.seed" => m.seed = parse(key, value)?,
            "mmas.avg" => {
                m.avg_override = match value {
                    "auto" | "" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "mmas.random_start" => m.random_start = parse_bool(key, value)?,
            "mmas.parallel" => m.parallel = parse_bool(key, value)?,
            "bench.repeats" => self.bench.repeats = parse(key, value)?,
            "bench.seed" => self.bench.seed = parse(key, value)?,
            "bench.alpha" => self.bench.alpha = parse(key, value)?,
            "bench.record_time" => self.bench.record_time = parse_bool(key, value)?,
            "bench.parallel" => self.bench.parallel = parse_bool(key, value)?,
            "exact.limit" => self.exact_limit = parse(key, value)?,
            _ => return Err(McspError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str, path: &Path) -> Result<()> {
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(McspError::Parse {
                    path: path.to_path_buf(),
                    line: k + 1,
                    msg: "expected `key = value`".into(),
                });
            };
            self.set(key.trim(), value.trim())
                .map_err(|e| McspError::Parse {
                    path: path.to_path_buf(),
                    line: k + 1,
                    msg: e.to_string(),
                })?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Config::default();
        cfg.apply_text(&fs::read_to_string(path)?, path)?;
        Ok(cfg)
    }

    /// Applies `key=value` overrides such as those given on the command line.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, pairs: &[S]) -> Result<()> {
        for pair in pairs {
            let pair = pair.as_ref();
            let (key, value) = pair.split_once('=').ok_or_else(|| McspError::BadValue {
                key: "--set".into(),
                value: pair.to_string(),
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }
}
