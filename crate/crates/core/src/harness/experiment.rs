//! Monte-Carlo averaging over independent runs and density sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agent::QTable;
use crate::error::Result;

use super::config::{ExperimentConfig, Scenario};
use super::episode::{run_scenario_episode, EpisodeResult, SlotMetrics};

/// Runs executed concurrently before their sums are folded in.
const BATCH: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMetadata {
    pub config_hash: String,
    pub seed: u64,
    pub runs: usize,
    pub ue_density: usize,
    pub policy: String,
}

/// Slot-wise mean of [`SlotMetrics`] over `runs` episodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSeries {
    pub slots: Vec<SlotMetrics>,
    pub metadata: SeriesMetadata,
}

impl RunSeries {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Mean of every metric over slots `range`.
    pub fn window_mean(&self, range: std::ops::Range<usize>) -> SlotMetrics {
        let window = &self.slots[range.clone()];
        let k = window.len() as f64;
        let mut m = SlotMetrics { slot: range.start, utility: 0.0, mean_rate: 0.0, energy: 0.0, ici: 0.0 };
        for s in window {
            m.utility += s.utility;
            m.mean_rate += s.mean_rate;
            m.energy += s.energy;
            m.ici += s.ici;
        }
        m.utility /= k;
        m.mean_rate /= k;
        m.energy /= k;
        m.ici /= k;
        m
    }

    /// Mean over the last `n` slots.
    pub fn tail_mean(&self, n: usize) -> SlotMetrics {
        let len = self.slots.len();
        self.window_mean(len.saturating_sub(n)..len)
    }

    pub fn head_mean(&self, n: usize) -> SlotMetrics {
        self.window_mean(0..n.min(self.slots.len()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Knobs for [`run_experiment_with`].
#[derive(Debug, Clone, Copy)]
pub struct RunOptions<'q> {
    pub execution: Execution,
    pub warm_start: Option<&'q QTable>,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        RunOptions { execution: Execution::Parallel, warm_start: None }
    }
}

/// Seed of run `i` for a base seed.
pub fn run_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RunSeries> {
    run_experiment_with(config, RunOptions::default(), |_, _| {})
}

/// Runs `config.experiment.runs` episodes with seeds `seed + i` and averages
/// them slot by slot. `on_run` sees every finished episode in run order, so
/// the sum is formed in the same order whether runs execute serially or in
/// parallel.
pub fn run_experiment_with<F>(config: &ExperimentConfig, opts: RunOptions<'_>, mut on_run: F) -> Result<RunSeries>
where
    F: FnMut(usize, &EpisodeResult),
{
    let scenario = Scenario::new(config)?;
    let runs = config.experiment.runs;
    let seed = config.experiment.seed;
    let slots = scenario.agent.max_slots;
    let mut sums = vec![[0.0f64; 4]; slots];

    let one = |i: usize| run_scenario_episode(&scenario, run_seed(seed, i), opts.warm_start, |_| {});
    let mut start = 0;
    while start < runs {
        let end = (start + BATCH).min(runs);
        let batch: Vec<Result<EpisodeResult>> = match opts.execution {
            Execution::Serial => (start..end).map(one).collect(),
            Execution::Parallel => (start..end).into_par_iter().map(one).collect(),
        };
        for (offset, result) in batch.into_iter().enumerate() {
            let result = result?;
            for (acc, m) in sums.iter_mut().zip(&result.metrics) {
                acc[0] += m.utility;
                acc[1] += m.mean_rate;
                acc[2] += m.energy;
                acc[3] += m.ici;
            }
            on_run(start + offset, &result);
        }
        start = end;
    }

    let r = runs as f64;
    let slots = sums
        .into_iter()
        .enumerate()
        .map(|(slot, s)| SlotMetrics { slot, utility: s[0] / r, mean_rate: s[1] / r, energy: s[2] / r, ici: s[3] / r })
        .collect();
    Ok(RunSeries {
        slots,
        metadata: SeriesMetadata {
            config_hash: config.hash(),
            seed,
            runs,
            ue_density: config.experiment.ue_density,
            policy: config.experiment.policy.to_string(),
        },
    })
}

/// One [`RunSeries`] per UE density, everything else held fixed.
pub fn sweep_density(config: &ExperimentConfig, densities: &[usize]) -> Result<Vec<RunSeries>> {
    if densities.is_empty() {
        return Err(crate::Error::Config("density list is empty".into()));
    }
    densities.iter().map(|&d| run_experiment(&config.with_density(d))).collect()
}
