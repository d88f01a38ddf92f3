use std::fs::OpenOptions;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid value {value:?} for {var}")]
    Env { var: &'static str, value: String },
    #[error("workflows directory {0} is not a readable directory")]
    WorkflowsDir(PathBuf),
    #[error("session store {path} is not writable: {source}")]
    Store { path: PathBuf, source: std::io::Error },
    #[error("searchTimeBudget must be positive")]
    TimeBudget,
}

/// Service settings. Every field can be overridden by an environment
/// variable `GADGETLAB_<FIELD>` in upper snake case.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields, default)]
pub struct ServiceConfig {
    pub listen_address: String,
    pub workflows_dir: PathBuf,
    pub session_store_path: PathBuf,
    /// Seconds per verification call.
    pub search_time_budget: f64,
    /// Origins allowed by CORS; empty disables CORS headers.
    pub cors_origins: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            listen_address: "127.0.0.1:8080".into(),
            workflows_dir: "workflows".into(),
            session_store_path: "sessions.jsonl".into(),
            search_time_budget: 30.0,
            cors_origins: Vec::new(),
        }
    }
}

impl ServiceConfig {
    /// Reads `path` (if any), then applies overrides from `env`.
    pub fn load(path: Option<&Path>, env: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Read {
                    path: p.to_path_buf(),
                    source,
                })?;
                toml::from_str(&text)?
            }
            None => ServiceConfig::default(),
        };
        if let Some(v) = env("GADGETLAB_LISTEN_ADDRESS") {
            config.listen_address = v;
        }
        if let Some(v) = env("GADGETLAB_WORKFLOWS_DIR") {
            config.workflows_dir = v.into();
        }
        if let Some(v) = env("GADGETLAB_SESSION_STORE_PATH") {
            config.session_store_path = v.into();
        }
        if let Some(v) = env("GADGETLAB_SEARCH_TIME_BUDGET") {
            config.search_time_budget = v.trim().parse().map_err(|_| ConfigError::Env {
                var: "GADGETLAB_SEARCH_TIME_BUDGET",
                value: v.clone(),
            })?;
        }
        if let Some(v) = env("GADGETLAB_CORS_ORIGINS") {
            config.cors_origins = v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
        }
        Ok(config)
    }

    /// Loads with the process environment.
    pub fn from_env(path: Option<&Path>) -> Result<Self, ConfigError> {
        Self::load(path, |k| std::env::var(k).ok())
    }

    /// Checks that the directories exist and the store can be appended to.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if std::fs::read_dir(&self.workflows_dir).is_err() {
            return Err(ConfigError::WorkflowsDir(self.workflows_dir.clone()));
        }
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.session_store_path)
            .map_err(|source| ConfigError::Store {
                path: self.session_store_path.clone(),
                source,
            })?;
        if !(self.search_time_budget > 0.0 && self.search_time_budget.is_finite()) {
            return Err(ConfigError::TimeBudget);
        }
        Ok(())
    }

    pub fn time_budget(&self) -> Duration {
        Duration::from_secs_f64(self.search_time_budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_then_file_then_env() {
        let dir = std::env::temp_dir().join(format!("gadgetlab-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("service.toml");
        std::fs::write(&file, "listenAddress = \"0.0.0.0:9000\"\nsearchTimeBudget = 5\n").unwrap();
        let c = ServiceConfig::load(Some(&file), |k| match k {
            "GADGETLAB_SEARCH_TIME_BUDGET" => Some("2.5".into()),
            "GADGETLAB_CORS_ORIGINS" => Some("http://a, http://b".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!(c.listen_address, "0.0.0.0:9000");
        assert_eq!(c.search_time_budget, 2.5);
        assert_eq!(c.cors_origins, ["http://a", "http://b"]);
        assert_eq!(c.workflows_dir, PathBuf::from("workflows"));
        assert_eq!(ServiceConfig::default().time_budget(), Duration::from_secs(30));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn bad_values_are_rejected() {
        let e = ServiceConfig::load(None, |k| (k == "GADGETLAB_SEARCH_TIME_BUDGET").then(|| "soon".into()));
        assert!(matches!(e, Err(ConfigError::Env { .. })));
        let c = ServiceConfig {
            workflows_dir: "/nonexistent/workflows".into(),
            ..ServiceConfig::default()
        };
        assert!(matches!(c.validate(), Err(ConfigError::WorkflowsDir(_))));
    }
}
