//! JSON report envelope. Every machine-readable output carries the engine
//! version, the comparator name, the config hash and the window
//! certificates, so two reports are comparable byte for byte exactly when
//! they were produced by the same engine under the same settings.

use crate::config::SessionConfig;
use crate::partitions::Window;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize)]
pub struct WindowCertificate {
    pub window: String,
    pub doubled: String,
    /// true when the run recomputed at the doubled window and agreed
    pub certified: bool,
}

impl WindowCertificate {
    pub fn new(window: Window, certified: bool) -> Self {
        WindowCertificate {
            window: window.to_string(),
            doubled: window.doubled().to_string(),
            certified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub engine_version: String,
    pub comparator: String,
    pub config_hash: String,
    pub config: BTreeMap<String, String>,
    pub window_certificates: Vec<WindowCertificate>,
    pub data: T,
}

pub fn report<T: Serialize>(
    cfg: &SessionConfig,
    certificates: Vec<WindowCertificate>,
    data: T,
) -> Report<T> {
    Report {
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        comparator: crate::partitions::COMPARATOR_NAME.to_string(),
        config_hash: cfg.hash(),
        config: cfg.canonical(),
        window_certificates: certificates,
        data,
    }
}

/// Pretty JSON with a trailing newline, to the file from the config or to
/// standard output.
pub fn emit<T: Serialize>(r: &Report<T>, out: Option<&str>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(r)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}
