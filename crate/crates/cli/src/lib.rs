//! Configuration parsing and scenario execution behind the `nsk` binary.

pub mod config;
pub mod runner;
pub mod sweep;

pub use config::{load_config, parse_config, ConfigError, RunConfig};
pub use runner::{run_scenario, RunError, RunOutcome};
