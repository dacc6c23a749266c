use std::path::PathBuf;

use smtk_core::homreport::{Dim, UnitsAssumption};
use smtk_core::oracle::{CompletionLimits, OracleConfig};
use smtk_core::special::SpecialLimits;
use thiserror::Error;

pub const BUDGET_SCALE_VAR: &str = "SMTK_BUDGET_SCALE";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("budget `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("{BUDGET_SCALE_VAR} must be a positive number, got `{0}`")]
    BadScale(String),
    #[error("cannot read units assumption `{0}`; expected e.g. `fp=inf cd=2`")]
    BadAssumption(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionConfig {
    pub presentation: PathBuf,
    pub kb_max_rules: usize,
    pub kb_max_iters: usize,
    pub search_radius: usize,
    pub max_word_len: Option<usize>,
    pub radius: usize,
    pub format: Format,
    pub assume_units: Option<UnitsAssumption>,
}

impl SessionConfig {
    pub fn new(presentation: PathBuf) -> Self {
        let oracle = OracleConfig::default();
        SessionConfig {
            presentation,
            kb_max_rules: oracle.completion.max_rules,
            kb_max_iters: oracle.completion.max_iterations,
            search_radius: oracle.search_radius,
            max_word_len: oracle.max_word_len,
            radius: 4,
            format: Format::Text,
            assume_units: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let budgets = [
            ("kb-max-rules", self.kb_max_rules),
            ("kb-max-iters", self.kb_max_iters),
            ("search-radius", self.search_radius),
            ("max-word-len", self.max_word_len.unwrap_or(1)),
        ];
        for (name, value) in budgets {
            if value == 0 {
                return Err(ConfigError::NonPositive(name));
            }
        }
        Ok(())
    }

    /// Oracle and search limits with every budget multiplied by `scale`.
    pub fn limits(&self, scale: f64) -> (OracleConfig, SpecialLimits) {
        let base = OracleConfig::default();
        let s = |n: usize| ((n as f64) * scale).round().max(1.0) as usize;
        let oracle = OracleConfig {
            completion: CompletionLimits {
                max_rules: s(self.kb_max_rules),
                max_rule_len: s(base.completion.max_rule_len),
                max_iterations: s(self.kb_max_iters),
            },
            search_radius: s(self.search_radius),
            max_word_len: self.max_word_len.map(s),
            max_states: s(base.max_states),
            keep_traces: false,
        };
        (oracle, SpecialLimits::default().scaled(scale))
    }
}

/// Reads the budget multiplier; unset means 1.
pub fn budget_scale(value: Option<&str>) -> Result<f64, ConfigError> {
    match value {
        None => Ok(1.0),
        Some(v) => match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err(ConfigError::BadScale(v.to_string())),
        },
    }
}

fn parse_dim(v: &str) -> Option<Dim> {
    match v {
        "inf" | "infinity" | "∞" => Some(Dim::Infinite),
        _ => v.parse().ok().map(Dim::Finite),
    }
}

/// `fp=<n|inf> cd=<n|inf>`, either key optional, separated by spaces or
/// commas.
pub fn parse_assumption(text: &str) -> Result<UnitsAssumption, ConfigError> {
    let bad = || ConfigError::BadAssumption(text.to_string());
    let (mut fp, mut cd) = (None, None);
    for token in text.split([' ', ',']).filter(|t| !t.is_empty()) {
        let (key, value) = token.split_once('=').ok_or_else(bad)?;
        let d = parse_dim(value).ok_or_else(bad)?;
        match key {
            "fp" => fp = Some(d),
            "cd" => cd = Some(d),
            _ => return Err(bad()),
        }
    }
    if fp.is_none() && cd.is_none() {
        return Err(bad());
    }
    Ok(UnitsAssumption::Asserted { fp, cd })
}
