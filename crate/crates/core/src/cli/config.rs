//! `key = value` configuration files.
//!
//! ```text
//! # Instance A
//! T   = 3.141592653589793
//! H11 = 1
//! H12 = 0
//! ...
//! ```
//!
//! All ten keys are required, `#` starts a comment, unknown and repeated
//! keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::problem::Coefficients;

pub const KEYS: [&str; 10] = ["T", "H11", "H12", "H13", "H21", "H22", "H23", "H31", "H32", "H33"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("missing key {0}")]
    MissingKey(String),
    #[error("duplicate key {0}")]
    DuplicateKey(String),
    #[error("parse error on line {0}")]
    ParseError(usize),
    #[error("unknown key {0}")]
    UnknownKey(String),
    #[error("invalid coefficients: {0}")]
    InvalidValue(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

pub fn parse_config(path: &Path) -> Result<Coefficients, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<Coefficients, ConfigError> {
    let mut values: BTreeMap<&str, f64> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::ParseError(line_no))?;
        let key = key.trim();
        let Some(&canonical) = KEYS.iter().find(|&&k| k == key) else {
            return Err(ConfigError::UnknownKey(key.to_string()));
        };
        let value: f64 = value.trim().parse().map_err(|_| ConfigError::ParseError(line_no))?;
        if !value.is_finite() {
            return Err(ConfigError::ParseError(line_no));
        }
        if values.insert(canonical, value).is_some() {
            return Err(ConfigError::DuplicateKey(canonical.to_string()));
        }
    }
    let get = |k: &str| values.get(k).copied().ok_or_else(|| ConfigError::MissingKey(k.to_string()));
    let t = get("T")?;
    let h = [
        [get("H11")?, get("H12")?, get("H13")?],
        [get("H21")?, get("H22")?, get("H23")?],
        [get("H31")?, get("H32")?, get("H33")?],
    ];
    Coefficients::new(h, t).map_err(|e| ConfigError::InvalidValue(e.to_string()))
}

/// Canonical form; `parse_config_str(&write_config(c)) == c` bit for bit.
pub fn write_config(c: &Coefficients) -> String {
    let vals = [c.t_final, c.h11, c.h12, c.h13, c.h21, c.h22, c.h23, c.h31, c.h32, c.h33];
    let mut out = String::new();
    for (k, v) in KEYS.iter().zip(vals) {
        out.push_str(&format!("{k} = {v:e}\n"));
    }
    out
}
