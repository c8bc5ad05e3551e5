//! Experiment orchestration, spec parsing and the alternation adversary.

mod adversary;
mod experiment;
mod specs;

pub use adversary::{adaptive_adversary_vc, replay_ratio, AdversaryBudget, AdversaryReport, TRIAL_EXCESS};
pub use experiment::{
    evaluate, run_experiment, worst_prefix_ratio, ExperimentConfig, ExperimentReport, InstanceSource,
};
pub use specs::{parse_budget, FSpec, GenSpec};
