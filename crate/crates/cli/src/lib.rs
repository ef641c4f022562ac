//! Config-driven runner for the propagation solvers and oracles.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod runner;

pub use config::{Overrides, ScenarioConfig};
pub use error::CliError;
pub use runner::{run, RunSummary};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "EITPROP_WORKERS";
