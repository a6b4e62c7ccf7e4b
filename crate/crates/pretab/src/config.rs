//! Run configuration: defaults, then a `key = value` file, then flags.

use pretab_core::decision::MemberOptions;
use pretab_core::finitary::{FinitaryCaps, ModelLimits, DEFAULT_MAX_DISJUNCTS};
use pretab_core::unify::Budget;
use pretab_core::Logic;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "human" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::Value {
                key: "format".into(),
                value: other.into(),
                expected: "human or json",
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Human => "human",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: expected {expected}")]
    Value {
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub logic: Option<Logic>,
    /// Largest frame parameter checked; `None` uses the formula's default.
    pub bound: Option<usize>,
    pub max_steps: u64,
    pub depth: usize,
    pub nodes: usize,
    pub max_disjuncts: usize,
    pub max_carrier: usize,
    pub max_carriers: u64,
    pub format: OutputFormat,
    pub dump_countermodel: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let budget = Budget::default();
        let models = ModelLimits::default();
        RunConfig {
            logic: None,
            bound: None,
            max_steps: MemberOptions::default().max_steps,
            depth: budget.max_depth,
            nodes: budget.max_nodes,
            max_disjuncts: DEFAULT_MAX_DISJUNCTS,
            max_carrier: models.max_size,
            max_carriers: models.max_subsets,
            format: OutputFormat::Human,
            dump_countermodel: None,
        }
    }
}

pub const KEYS: &[&str] = &[
    "logic",
    "bound",
    "max_steps",
    "depth",
    "nodes",
    "max_disjuncts",
    "max_carrier",
    "max_carriers",
    "format",
    "dump_countermodel",
];

fn positive<T: FromStr + PartialOrd + From<u8>>(key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse::<T>()
        .ok()
        .filter(|v| *v >= T::from(1))
        .ok_or_else(|| ConfigError::Value {
            key: key.into(),
            value: value.into(),
            expected: "an integer of at least 1",
        })
}

impl RunConfig {
    /// Applies one setting; numeric limits must be at least 1.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        match key.trim() {
            "logic" => {
                self.logic = Some(value.parse().map_err(|_| ConfigError::Value {
                    key: "logic".into(),
                    value: value.into(),
                    expected: "one of pm1..pm5",
                })?)
            }
            "bound" => self.bound = Some(positive::<usize>("bound", value)?),
            "max_steps" => self.max_steps = positive("max_steps", value)?,
            "depth" => self.depth = positive("depth", value)?,
            "nodes" => self.nodes = positive("nodes", value)?,
            "max_disjuncts" => self.max_disjuncts = positive("max_disjuncts", value)?,
            "max_carrier" => self.max_carrier = positive("max_carrier", value)?,
            "max_carriers" => self.max_carriers = positive("max_carriers", value)?,
            "format" => self.format = value.parse()?,
            "dump_countermodel" => self.dump_countermodel = Some(PathBuf::from(value)),
            other => return Err(ConfigError::UnknownKey(other.into())),
        }
        Ok(())
    }

    /// Applies a flat `key = value` text; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: origin.into(),
                line: i + 1,
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// Applies a comma-separated `key=value` list.
    pub fn apply_list(&mut self, list: &str) -> Result<(), ConfigError> {
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: "--caps".into(),
                line: 1,
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn member(&self) -> MemberOptions {
        MemberOptions {
            bound: self.bound,
            max_steps: self.max_steps,
        }
    }

    pub fn budget(&self) -> Budget {
        Budget {
            max_depth: self.depth,
            max_nodes: self.nodes,
            member: self.member(),
            ..Budget::default()
        }
    }

    pub fn caps(&self) -> FinitaryCaps {
        FinitaryCaps {
            max_disjuncts: self.max_disjuncts,
            models: ModelLimits {
                max_size: self.max_carrier,
                max_subsets: self.max_carriers,
            },
            member: self.member(),
            minimize: self.budget(),
        }
    }
}
