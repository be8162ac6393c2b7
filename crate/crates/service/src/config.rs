use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

pub const ADDR_ENV: &str = "CLUSTERWEYL_ADDR";
pub const JOURNAL_ENV: &str = "CLUSTERWEYL_JOURNAL";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
}

/// Service settings. A TOML file may set `addr` and `journal_dir`; the
/// environment overrides both.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub addr: String,
    /// Directory for per-session JSON-lines journals; none keeps sessions
    /// in memory only.
    pub journal_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            addr: "127.0.0.1:8080".into(),
            journal_dir: None,
        }
    }
}

impl ServiceConfig {
    pub fn load(file: Option<&Path>) -> Result<Self, ConfigError> {
        let mut config = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                    path: path.into(),
                    source,
                })?;
                Self::parse(&text).map_err(|source| ConfigError::Parse {
                    path: path.into(),
                    source,
                })?
            }
            None => Self::default(),
        };
        config.apply_env(|k| std::env::var(k).ok());
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) {
        if let Some(addr) = var(ADDR_ENV) {
            self.addr = addr;
        }
        if let Some(dir) = var(JOURNAL_ENV) {
            self.journal_dir = (!dir.is_empty()).then(|| dir.into());
        }
    }
}
