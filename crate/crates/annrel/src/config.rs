//! Session configuration: a flat key=value file, overridden by flags.
//!
//! Every report embeds the canonical rendering of the active config and
//! its hash, so a report can always be traced back to the exact settings
//! that produced it.

use crate::liealg::{build_by_name, Algebra};
use crate::partitions::{Window, COMPARATOR_NAME};
use crate::rat::{format_rat, parse_rat, rat, Rat};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config line {line}: {text:?} (expected key=value)")]
    Malformed { line: usize, text: String },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("bad value for {key}: {value:?}")]
    BadValue { key: String, value: String },
    #[error("level {level} equals the negated dual Coxeter number of {algebra}; excluded")]
    CriticalLevel { algebra: String, level: String },
    #[error(transparent)]
    Algebra(#[from] crate::liealg::AlgebraError),
}

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub algebra: String,
    pub level: Rat,
    /// Default part-degree window for enumerations.
    pub window: Window,
    /// Default module slice depth.
    pub depth: i64,
    /// Worker threads; None lets the pool pick.
    pub workers: Option<usize>,
    pub out: Option<String>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            algebra: "sl2".to_string(),
            level: rat(1),
            window: Window::new(-8, -1),
            depth: 8,
            workers: None,
            out: None,
        }
    }
}

/// Parse "dmin:dmax" without panicking on empty windows.
pub fn parse_window(s: &str) -> Option<Window> {
    let (a, b) = s.split_once(':')?;
    let dmin: i64 = a.trim().parse().ok()?;
    let dmax: i64 = b.trim().parse().ok()?;
    if dmin > dmax {
        return None;
    }
    Some(Window::new(dmin, dmax))
}

impl SessionConfig {
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "algebra" => self.algebra = value.to_string(),
            "level" => self.level = parse_rat(value).ok_or_else(bad)?,
            "window" => self.window = parse_window(value).ok_or_else(bad)?,
            "depth" => {
                self.depth = value.parse().map_err(|_| bad())?;
                if self.depth < 0 {
                    return Err(bad());
                }
            }
            "workers" => self.workers = Some(value.parse().map_err(|_| bad())?),
            "out" => self.out = Some(value.to_string()),
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &str) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_string(),
            source,
        })?;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line: i + 1,
                text: line.to_string(),
            })?;
            self.apply(k.trim(), v.trim())?;
        }
        Ok(())
    }

    /// Build the algebra and enforce the level restriction.
    pub fn build_algebra(&self) -> Result<Algebra, ConfigError> {
        let alg = build_by_name(&self.algebra)?;
        if self.level == rat(-alg.dual_coxeter) {
            return Err(ConfigError::CriticalLevel {
                algebra: self.algebra.clone(),
                level: format_rat(&self.level),
            });
        }
        Ok(alg)
    }

    /// Canonical key=value map; worker count is excluded because it never
    /// affects report content.
    pub fn canonical(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("algebra".to_string(), self.algebra.clone());
        m.insert("comparator".to_string(), COMPARATOR_NAME.to_string());
        m.insert("depth".to_string(), self.depth.to_string());
        m.insert("level".to_string(), format_rat(&self.level));
        m.insert("window".to_string(), self.window.to_string());
        m
    }

    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in self.canonical() {
            h.update(k.as_bytes());
            h.update(b"=");
            h.update(v.as_bytes());
            h.update(b"\n");
        }
        format!("{:x}", h.finalize())
    }
}
