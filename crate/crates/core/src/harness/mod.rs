//! Wiring of channel, topology, mobility, link metrics and the learning agent
//! into episodes, Monte-Carlo experiments and density sweeps.

pub mod config;
pub mod episode;
pub mod experiment;
pub mod output;

pub use config::{ExperimentConfig, Policy, Scenario};
pub use episode::{
    baseline_policy, evaluate_action, quantizer, run_episode, run_scenario_episode, Environment, EpisodeResult,
    SlotMetrics, SlotTrace,
};
pub use experiment::{run_experiment, run_experiment_with, run_seed, sweep_density, Execution, RunOptions, RunSeries};
