//! Experiment harness for the interface conservation-law toolkit: TOML
//! configuration, data builders, the five experiment drivers, the invariant
//! suite, and CSV/JSON reports.

pub mod checks;
pub mod config;
pub mod data;
mod error;
pub mod experiments;
pub mod rate;
pub mod report;

pub use config::{CaseConfig, DataSpec, ExperimentId, FluxSpec, ProblemConfig};
pub use error::{HarnessError, Result};
pub use experiments::run_experiment;
pub use rate::{fit_rate, RateFit};
pub use report::{ExperimentReport, ReportRow};
