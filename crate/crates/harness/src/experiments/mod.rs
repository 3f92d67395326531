//! Experiment drivers. Each one turns a [`ProblemConfig`] into an
//! [`ExperimentReport`] with one row per checked quantity.

pub mod common;
mod convergence;
mod decay;
mod incompatible;
mod propagation;
mod smoothing;

pub use convergence::run_convergence;
pub use decay::run_decay;
pub use incompatible::run_incompatible;
pub use propagation::run_propagation;
pub use smoothing::run_smoothing;

use crate::config::{ExperimentId, ProblemConfig};
use crate::report::ExperimentReport;
use crate::Result;

pub fn run_experiment(id: ExperimentId, cfg: &ProblemConfig) -> Result<ExperimentReport> {
    match id {
        ExperimentId::E1 => run_smoothing(cfg),
        ExperimentId::E2 => run_decay(cfg),
        ExperimentId::E3 => run_propagation(cfg),
        ExperimentId::E4 => run_incompatible(cfg),
        ExperimentId::E5 => run_convergence(cfg),
    }
}
