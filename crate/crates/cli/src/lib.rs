//! Experiment runner for the wiretap secrecy metrics.

pub mod config;
pub mod output;
pub mod run;

pub use config::{parse_config, parse_config_str, ConfigError, ScenarioConfig};
pub use output::RunManifest;

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad configuration or input files (exit code 2).
    #[error("config error: {0}")]
    Config(String),
    /// Failure while running (exit code 3).
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<wiretap_secrecy::Error> for CliError {
    fn from(e: wiretap_secrecy::Error) -> Self {
        match e {
            wiretap_secrecy::Error::InvalidParameter { .. }
            | wiretap_secrecy::Error::Fixture(_) => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}
