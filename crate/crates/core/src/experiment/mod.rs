//! Configurable experiments with deterministic CSV / JSON reports.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{parse_config, parse_file, ConfigError, Experiment, ExperimentConfig, Format, InitialState};
pub use report::ExperimentReport;
pub use runner::{render, run};
