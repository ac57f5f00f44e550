//! Experiment harness: dataset registry, configuration, pipelines and CSV
//! output for the `apcd-bench` command-line tool.

pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;
pub mod registry;

pub use config::{load_config, ExperimentConfig, Method, MethodSelector, Overrides, PerturbMode};
pub use error::{BenchError, BenchResult};
pub use output::{ResultRow, StatsRow};
