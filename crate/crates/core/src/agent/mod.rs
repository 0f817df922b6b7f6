//! Tabular Q-learning power controller for the serving AP.
//!
//! The controller observes a quantized state (previous per-UE rates, current
//! per-UE gains, UE count), picks a joint power vector with ε-greedy
//! exploration, and applies the one-step Bellman update after every slot.

mod actions;
mod qtable;
mod state;

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use actions::{enumerate_actions, enumerate_actions_capped, ActionSet, DEFAULT_ACTION_CAP};
pub use qtable::QTable;
pub use state::{Quantizer, StateBins, StateKey};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentConfig {
    /// `L`; the action alphabet has `L + 1` levels.
    pub power_levels: usize,
    /// `X_max`, watts.
    pub max_power: f64,
    /// α
    pub learning_rate: f64,
    /// β
    pub discount: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    pub epsilon_decay_slots: usize,
    pub warmup_slots: usize,
    /// `K_max`
    pub max_slots: usize,
    pub replay: bool,
    pub replay_batch: usize,
    pub action_cap: u64,
}

impl Default for AgentConfig {
    fn default() -> Self {
        AgentConfig {
            power_levels: 5,
            max_power: 4e-3,
            learning_rate: 0.9,
            discount: 0.3,
            epsilon_start: 0.9,
            epsilon_end: 0.1,
            epsilon_decay_slots: 1000,
            warmup_slots: 20,
            max_slots: 3000,
            replay: false,
            replay_batch: 16,
            action_cap: DEFAULT_ACTION_CAP,
        }
    }
}

impl AgentConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.power_levels == 0 {
            return fail("power_levels must be at least 1".into());
        }
        if !(self.max_power > 0.0) {
            return fail(format!("max_power must be positive, got {}", self.max_power));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return fail(format!("learning_rate must lie in (0, 1], got {}", self.learning_rate));
        }
        if !(self.discount >= 0.0 && self.discount < 1.0) {
            return fail(format!("discount must lie in [0, 1), got {}", self.discount));
        }
        let unit = |e: f64| (0.0..=1.0).contains(&e);
        if !(unit(self.epsilon_start) && unit(self.epsilon_end) && self.epsilon_start >= self.epsilon_end) {
            return fail(format!(
                "need 1 >= epsilon_start ({}) >= epsilon_end ({}) >= 0",
                self.epsilon_start, self.epsilon_end
            ));
        }
        if self.max_slots == 0 || self.warmup_slots >= self.max_slots {
            return fail(format!(
                "need warmup_slots ({}) < max_slots ({})",
                self.warmup_slots, self.max_slots
            ));
        }
        Ok(())
    }
}

/// Linear decay from `epsilon_start` at slot 0 to `epsilon_end` at
/// `epsilon_decay_slots`, flat afterwards.
pub fn epsilon_at(slot: usize, config: &AgentConfig) -> f64 {
    if config.epsilon_decay_slots == 0 || slot >= config.epsilon_decay_slots {
        return config.epsilon_end;
    }
    let t = slot as f64 / config.epsilon_decay_slots as f64;
    config.epsilon_start + (config.epsilon_end - config.epsilon_start) * t
}

/// Uniform random action during the warm-up window, `None` afterwards.
pub fn warmup_policy<R: Rng + ?Sized>(
    slot: usize,
    config: &AgentConfig,
    actions: &ActionSet,
    rng: &mut R,
) -> Option<usize> {
    (slot < config.warmup_slots).then(|| rng.gen_range(0..actions.len()))
}

/// ε-greedy selection. The greedy action is drawn uniformly among the
/// maximizers; with probability ε it is replaced by a uniform draw over the
/// other `|A| − 1` actions.
pub fn select_action<R: Rng + ?Sized>(
    q: &QTable,
    state: &StateKey,
    actions: &ActionSet,
    epsilon: f64,
    rng: &mut R,
) -> Result<usize> {
    if actions.is_empty() {
        return Err(Error::EmptyActionSet);
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon must lie in [0, 1], got {epsilon}")));
    }
    let best = q.maximizers(state);
    let greedy = if best.len() == 1 { best[0] } else { best[rng.gen_range(0..best.len())] };
    let size = actions.len();
    if size > 1 && rng.gen::<f64>() < epsilon {
        let other = rng.gen_range(0..size - 1);
        Ok(if other >= greedy { other + 1 } else { other })
    } else {
        Ok(greedy)
    }
}

/// One observed transition.
#[derive(Debug, Clone, PartialEq)]
pub struct Experience {
    pub state: StateKey,
    pub action: usize,
    pub utility: f64,
    pub next_state: StateKey,
}

/// `Q(s,x) ← (1−α)Q(s,x) + α(u + β·max_x' Q(s',x'))`. Returns the new value.
pub fn update_q(q: &mut QTable, e: &Experience, learning_rate: f64, discount: f64) -> f64 {
    let old = q.get(&e.state, e.action);
    let target = e.utility + discount * q.max_value(&e.next_state);
    let new = (1.0 - learning_rate) * old + learning_rate * target;
    q.set(&e.state, e.action, new);
    new
}

/// Q-table, action space and experience pool for one run.
#[derive(Debug, Clone)]
pub struct Agent {
    pub config: AgentConfig,
    pub actions: ActionSet,
    pub q: QTable,
    pool: VecDeque<Experience>,
    pool_capacity: usize,
}

impl Agent {
    pub fn new(config: AgentConfig, ues: usize) -> Result<Self> {
        config.validate()?;
        let actions = enumerate_actions_capped(config.power_levels, config.max_power, ues, config.action_cap)?;
        let q = QTable::new(actions.len());
        Ok(Agent { config, actions, q, pool: VecDeque::new(), pool_capacity: config.max_slots.max(1) })
    }

    /// Replaces the Q-table, e.g. for a warm start. The action count must match.
    pub fn with_qtable(mut self, q: QTable) -> Result<Self> {
        if q.action_count() != self.actions.len() {
            return Err(Error::DimensionMismatch(format!(
                "Q-table has {} actions, agent has {}",
                q.action_count(),
                self.actions.len()
            )));
        }
        self.q = q;
        Ok(self)
    }

    pub fn choose<R: Rng + ?Sized>(&self, slot: usize, state: &StateKey, rng: &mut R) -> Result<usize> {
        match warmup_policy(slot, &self.config, &self.actions, rng) {
            Some(a) => Ok(a),
            None => select_action(&self.q, state, &self.actions, epsilon_at(slot, &self.config), rng),
        }
    }

    /// Applies the online update, logs the experience, and optionally replays
    /// a uniform batch from the pool.
    pub fn observe<R: Rng + ?Sized>(&mut self, e: Experience, rng: &mut R) {
        let (alpha, beta) = (self.config.learning_rate, self.config.discount);
        update_q(&mut self.q, &e, alpha, beta);
        if self.pool.len() == self.pool_capacity {
            self.pool.pop_front();
        }
        self.pool.push_back(e);
        if self.config.replay {
            for _ in 0..self.config.replay_batch {
                let i = rng.gen_range(0..self.pool.len());
                let sample = self.pool[i].clone();
                update_q(&mut self.q, &sample, alpha, beta);
            }
        }
    }

    pub fn experience_pool(&self) -> impl Iterator<Item = &Experience> {
        self.pool.iter()
    }

    pub fn greedy_action<R: Rng + ?Sized>(&self, state: &StateKey, rng: &mut R) -> Result<usize> {
        select_action(&self.q, state, &self.actions, 0.0, rng)
    }
}
