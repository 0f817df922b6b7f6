//! One simulated episode: UEs move, the serving AP picks powers, metrics are
//! recorded slot by slot.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::agent::{ActionSet, Agent, Experience, QTable, Quantizer, StateKey};
use crate::channel::{channel_gain, Pos3};
use crate::error::{Error, Result};
use crate::link::{evaluate_slot, per_ue_bandwidth, PowerVector, SlotChannelSnapshot, SlotEvaluation};
use crate::mobility::{init_ues, rwp_step, MobilityConfig, UeState};

use super::config::{ExperimentConfig, Policy, Scenario};

const MOBILITY_STREAM: u64 = 1;
const POLICY_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlotMetrics {
    pub slot: usize,
    pub utility: f64,
    /// bits/s
    pub mean_rate: f64,
    /// watts
    pub energy: f64,
    /// watts
    pub ici: f64,
}

/// Per-slot detail passed to episode observers.
#[derive(Debug, Clone)]
pub struct SlotTrace<'a> {
    pub slot: usize,
    pub state: &'a StateKey,
    pub action: usize,
    pub powers: &'a [f64],
    pub snapshot: &'a SlotChannelSnapshot,
    pub evaluation: &'a SlotEvaluation,
    pub ues: &'a [UeState],
}

/// Served UEs plus the active UEs of every co-channel neighbor cell.
#[derive(Debug, Clone)]
pub struct Environment<'s> {
    scenario: &'s Scenario,
    pub ues: Vec<UeState>,
    /// `[j]` → UEs of neighbor j, with that cell's mobility bounds.
    foreign: Vec<(MobilityConfig, Vec<UeState>)>,
    rng: ChaCha8Rng,
}

impl<'s> Environment<'s> {
    pub fn new(scenario: &'s Scenario, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(MOBILITY_STREAM);
        let topo = &scenario.topology;
        let ues = init_ues(scenario.ue_density, topo.center_ap, &scenario.mobility, &mut rng)?;
        let mut foreign = Vec::with_capacity(topo.neighbors.len());
        for &j in &topo.neighbors {
            let cfg = scenario.mobility.with_bounds(topo.grid.cell_bounds(j)?);
            let list = if scenario.neighbor_ues == 0 {
                Vec::new()
            } else {
                init_ues(scenario.neighbor_ues, j, &cfg, &mut rng)?
            };
            foreign.push((cfg, list));
        }
        Ok(Environment { scenario, ues, foreign, rng })
    }

    pub fn advance(&mut self) {
        let cfg = self.scenario.mobility;
        for ue in self.ues.iter_mut() {
            *ue = rwp_step(ue, &cfg, &mut self.rng);
        }
        for (cfg, list) in self.foreign.iter_mut() {
            for ue in list.iter_mut() {
                *ue = rwp_step(ue, cfg, &mut self.rng);
            }
        }
    }

    pub fn snapshot(&self) -> Result<SlotChannelSnapshot> {
        let s = self.scenario;
        let grid = &s.topology.grid;
        let serving = s.topology.center_position();
        let neighbor_pos: Vec<Pos3> = s.topology.neighbors.iter().map(|&j| grid.ap_positions[j]).collect();

        let serving_gains = self
            .ues
            .iter()
            .map(|ue| channel_gain(serving, ue.position, &s.channel))
            .collect::<Result<Vec<_>>>()?;
        let interferer_gains = self
            .ues
            .iter()
            .map(|ue| neighbor_pos.iter().map(|&ap| channel_gain(ap, ue.position, &s.channel)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let outgoing_gains = self
            .foreign
            .iter()
            .map(|(_, list)| list.iter().map(|ue| channel_gain(serving, ue.position, &s.channel)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(SlotChannelSnapshot { serving_gains, interferer_gains, outgoing_gains })
    }

    pub fn foreign_ues(&self) -> impl Iterator<Item = &UeState> {
        self.foreign.iter().flat_map(|(_, l)| l.iter())
    }
}

/// Power choice for the non-learning policies.
pub fn baseline_policy<R: Rng + ?Sized>(
    policy: Policy,
    actions: &ActionSet,
    scenario: &Scenario,
    snapshot: &SlotChannelSnapshot,
    rng: &mut R,
) -> Result<usize> {
    match policy {
        Policy::FixedMax => Ok(actions.max_index()),
        // L/2 rounded down: an exact midpoint tie resolves to the lower level.
        Policy::FixedHalf => Ok(actions.uniform(scenario.agent.power_levels / 2)),
        Policy::Random => Ok(rng.gen_range(0..actions.len())),
        Policy::GreedyMyopic => {
            let mut best = (0, f64::NEG_INFINITY);
            for a in 0..actions.len() {
                let u = evaluate_action(a, actions, scenario, snapshot)?.utility;
                if u > best.1 {
                    best = (a, u);
                }
            }
            Ok(best.0)
        }
        Policy::Rpic => Err(Error::Config("the learning policy is not a baseline".into())),
    }
}

pub fn power_vector(action: usize, actions: &ActionSet, scenario: &Scenario, neighbors: usize) -> PowerVector {
    PowerVector::with_uniform_neighbors(actions.powers(action), neighbors, scenario.neighbor_power)
}

pub fn evaluate_action(
    action: usize,
    actions: &ActionSet,
    scenario: &Scenario,
    snapshot: &SlotChannelSnapshot,
) -> Result<SlotEvaluation> {
    let powers = power_vector(action, actions, scenario, snapshot.neighbor_count());
    evaluate_slot(&powers, snapshot, &scenario.link, scenario.channel.responsivity, &scenario.weights)
}

/// State quantizer for a scenario: rate grid over the per-UE bandwidth, gain
/// grid up to the gain directly beneath the serving AP.
pub fn quantizer(scenario: &Scenario) -> Result<Quantizer> {
    let w_n = per_ue_bandwidth(&scenario.link, scenario.ue_density)?;
    let ap = scenario.topology.center_position();
    let below = Pos3::new(ap.x, ap.y, scenario.mobility.ue_height);
    let h_max = channel_gain(ap, below, &scenario.channel)?;
    Quantizer::new(scenario.bins, w_n, h_max)
}

/// Outcome of one episode.
#[derive(Debug, Clone)]
pub struct EpisodeResult {
    pub metrics: Vec<SlotMetrics>,
    /// Final Q-table of the learning policy; `None` for baselines.
    pub qtable: Option<QTable>,
}

pub fn run_episode(config: &ExperimentConfig, seed: u64) -> Result<Vec<SlotMetrics>> {
    let scenario = Scenario::new(config)?;
    Ok(run_scenario_episode(&scenario, seed, None, |_| {})?.metrics)
}

/// Runs `K_max` slots. Within slot k: the channel and state `s(k)` (rates of
/// slot k−1, gains of slot k) are already formed; an action is chosen and
/// evaluated; the environment then advances to form `s(k+1)`, and the
/// transition `(s(k), x(k), u(k), s(k+1))` updates the Q-table.
pub fn run_scenario_episode<F>(
    scenario: &Scenario,
    seed: u64,
    warm_start: Option<&QTable>,
    mut observer: F,
) -> Result<EpisodeResult>
where
    F: FnMut(&SlotTrace<'_>),
{
    let n = scenario.ue_density;
    let mut agent = Agent::new(scenario.agent, n)?;
    if let Some(q) = warm_start {
        agent = agent.with_qtable(q.clone())?;
    }
    let quant = quantizer(scenario)?;
    let mut env = Environment::new(scenario, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(POLICY_STREAM);

    env.advance();
    let mut snapshot = env.snapshot()?;
    let mut state = quant.quantize(&vec![0.0; n], &snapshot.serving_gains, n)?;
    let mut metrics = Vec::with_capacity(scenario.agent.max_slots);

    for slot in 0..scenario.agent.max_slots {
        let action = match scenario.policy {
            Policy::Rpic => agent.choose(slot, &state, &mut rng)?,
            other => baseline_policy(other, &agent.actions, scenario, &snapshot, &mut rng)?,
        };
        let powers = power_vector(action, &agent.actions, scenario, snapshot.neighbor_count());
        let eval = evaluate_slot(&powers, &snapshot, &scenario.link, scenario.channel.responsivity, &scenario.weights)?;
        if !eval.utility.is_finite() {
            return Err(Error::NonFinite { what: "utility", slot });
        }
        observer(&SlotTrace {
            slot,
            state: &state,
            action,
            powers: &powers.serving,
            snapshot: &snapshot,
            evaluation: &eval,
            ues: &env.ues,
        });
        metrics.push(SlotMetrics {
            slot,
            utility: eval.utility,
            mean_rate: eval.mean_rate,
            energy: eval.energy,
            ici: eval.ici,
        });

        env.advance();
        let next_snapshot = env.snapshot()?;
        let next_state = quant.quantize(&eval.rates, &next_snapshot.serving_gains, n)?;
        if scenario.policy == Policy::Rpic {
            agent.observe(
                Experience { state, action, utility: eval.utility, next_state: next_state.clone() },
                &mut rng,
            );
        }
        state = next_state;
        snapshot = next_snapshot;
    }

    let qtable = (scenario.policy == Policy::Rpic).then_some(agent.q);
    Ok(EpisodeResult { metrics, qtable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(policy: Policy) -> ExperimentConfig {
        let mut c = ExperimentConfig::default().with_policy(policy);
        c.agent.max_slots = 200;
        c.experiment.runs = 1;
        c
    }

    #[test]
    fn fixed_max_in_static_world_is_constant() {
        let mut c = small(Policy::FixedMax);
        c.mobility.v_min_mps = 0.0;
        c.mobility.v_max_mps = 0.0;
        let m = run_episode(&c, 5).unwrap();
        assert_eq!(m.len(), 200);
        for s in &m {
            assert_eq!((s.utility, s.mean_rate, s.energy, s.ici), (m[0].utility, m[0].mean_rate, m[0].energy, m[0].ici));
        }
        assert!((m[0].energy - 3.0 * 0.004).abs() < 1e-15);
    }

    #[test]
    fn episode_is_deterministic() {
        let c = small(Policy::Rpic);
        let a = run_episode(&c, 42).unwrap();
        let b = run_episode(&c, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, run_episode(&c, 43).unwrap());
    }

    #[test]
    fn fixed_half_uses_lower_midpoint_level() {
        let c = small(Policy::FixedHalf);
        let m = run_episode(&c, 1).unwrap();
        assert!((m[0].energy - 3.0 * 0.0016).abs() < 1e-15);
    }

    #[test]
    fn neighbors_without_ues_leak_nothing() {
        let mut c = small(Policy::FixedMax);
        c.link.neighbor_ues = 0;
        c.experiment.ue_density = 1;
        c.topology.rows = 1;
        c.topology.cols = 1;
        let m = run_episode(&c, 1).unwrap();
        assert!(m.iter().all(|s| s.ici == 0.0));
    }
}
