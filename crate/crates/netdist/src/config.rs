//! Experiment configuration: a flat key-value file, every key overridable
//! from the command line.
//!
//! ```text
//! # one network per line: name:path:format[:delimiter]
//! network   = MN:data/montagna_meetings.csv:edgelist
//! network   = JU:data/oversize_judgment.csv:matrix
//! mode      = edges          # edges | nodes
//! fractions = 0.01,0.02,0.03 # strictly increasing, each in (0, 1]
//! nrep      = 100
//! base_seed = 42
//! metrics   = dA,dL,dNL,dRootED,simDC
//! output    = records.csv
//! json_output = records.json # optional mirror
//! ```
//!
//! Relative network and output paths resolve against the config file's
//! directory.

use std::path::{Path, PathBuf};

use netdist_core::PruneMode;
use thiserror::Error;

use crate::harness::MetricKind;
use crate::io::GraphFormat;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: expected `key = value`, got `{text}`")]
    NotKeyValue { line: usize, text: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field, reason: reason.into() }
}

/// One input network: a display name, a file, and how to read it.
#[derive(Debug, Clone)]
pub struct NetworkEntry {
    pub name: String,
    pub path: PathBuf,
    pub format: GraphFormat,
    pub delimiter: char,
}

impl NetworkEntry {
    /// Parses `name:path:format[:delimiter]`.
    pub fn parse(spec: &str) -> Result<Self, ConfigError> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(invalid(
                "network",
                format!("`{spec}` is not name:path:format[:delimiter]"),
            ));
        }
        let name = parts[0].trim().to_string();
        if name.is_empty() || name.contains(',') {
            return Err(invalid("network", format!("bad network name `{name}`")));
        }
        let format: GraphFormat = parts[2].trim().parse().map_err(|e: String| invalid("network", e))?;
        let delimiter = match parts.get(3) {
            None => ',',
            Some(d) => {
                let d = if d.trim().is_empty() { " " } else { d.trim() };
                let mut chars = d.chars();
                let c = chars.next().unwrap();
                if chars.next().is_some() {
                    return Err(invalid("network", format!("delimiter `{d}` is not a single character")));
                }
                c
            }
        };
        Ok(NetworkEntry {
            name,
            path: PathBuf::from(parts[1].trim()),
            format,
            delimiter,
        })
    }
}

/// Everything a pruning experiment needs.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub networks: Vec<NetworkEntry>,
    pub mode: PruneMode,
    /// Strictly increasing removal fractions, each in (0, 1].
    pub fractions: Vec<f64>,
    pub nrep: u32,
    pub base_seed: u64,
    pub metrics: Vec<MetricKind>,
    pub output: PathBuf,
    pub json_output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            networks: Vec::new(),
            mode: PruneMode::EdgeRemoval,
            fractions: default_fractions(),
            nrep: 100,
            base_seed: 0,
            metrics: MetricKind::ALL.to_vec(),
            output: PathBuf::from("records.csv"),
            json_output: None,
        }
    }
}

/// The default removal grid: 1% to 10% in 1% steps.
pub fn default_fractions() -> Vec<f64> {
    fraction_grid(0.10, 10)
}

/// `steps` evenly spaced fractions ending at `max`.
pub fn fraction_grid(max: f64, steps: u32) -> Vec<f64> {
    (1..=steps).map(|i| max * i as f64 / steps as f64).collect()
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses config text; relative paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let mut cfg = ExperimentConfig::default();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::NotKeyValue {
                line: line_no,
                text: line.to_string(),
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "network" => {
                    let mut entry = NetworkEntry::parse(value)?;
                    if entry.path.is_relative() {
                        entry.path = base_dir.join(&entry.path);
                    }
                    cfg.networks.push(entry);
                }
                "mode" => {
                    cfg.mode = value.parse().map_err(|e: String| invalid("mode", e))?;
                }
                "fractions" => {
                    cfg.fractions = parse_fractions(value)?;
                }
                "nrep" => {
                    cfg.nrep = value
                        .parse()
                        .map_err(|_| invalid("nrep", format!("`{value}` is not a positive integer")))?;
                }
                "base_seed" => {
                    cfg.base_seed = value
                        .parse()
                        .map_err(|_| invalid("base_seed", format!("`{value}` is not a 64-bit unsigned integer")))?;
                }
                "metrics" => {
                    cfg.metrics = parse_metrics(value)?;
                }
                "output" => {
                    cfg.output = resolve(base_dir, value);
                }
                "json_output" => {
                    cfg.json_output = Some(resolve(base_dir, value));
                }
                other => {
                    return Err(ConfigError::UnknownKey {
                        line: line_no,
                        key: other.to_string(),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Field-by-field validation; errors name the offending field.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.networks.is_empty() {
            return Err(invalid("network", "at least one network is required"));
        }
        if self.fractions.is_empty() {
            return Err(invalid("fractions", "at least one fraction is required"));
        }
        for &f in &self.fractions {
            if !(f > 0.0 && f <= 1.0) {
                return Err(invalid("fractions", format!("{f} is outside (0, 1]")));
            }
        }
        if !self.fractions.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("fractions", "must be strictly increasing"));
        }
        if self.nrep == 0 {
            return Err(invalid("nrep", "must be at least 1"));
        }
        if self.metrics.is_empty() {
            return Err(invalid("metrics", "at least one metric is required"));
        }
        let mut seen = Vec::new();
        for m in &self.metrics {
            if seen.contains(m) {
                return Err(invalid("metrics", format!("duplicate metric `{m}`")));
            }
            seen.push(*m);
        }
        let mut names: Vec<&str> = self.networks.iter().map(|n| n.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("network", "network names must be unique"));
        }
        Ok(())
    }
}

fn resolve(base: &Path, value: &str) -> PathBuf {
    let p = PathBuf::from(value);
    if p.is_relative() {
        base.join(p)
    } else {
        p
    }
}

fn parse_fractions(value: &str) -> Result<Vec<f64>, ConfigError> {
    value
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| invalid("fractions", format!("`{t}` is not a number")))
        })
        .collect()
}

pub(crate) fn parse_metrics(value: &str) -> Result<Vec<MetricKind>, ConfigError> {
    value
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<MetricKind>()
                .map_err(|e: String| invalid("metrics", e))
        })
        .collect()
}
