//! Experiment configuration file. Every section and key has a default, so an
//! empty file is a valid configuration; unknown keys are rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::agent::{AgentConfig, StateBins, DEFAULT_ACTION_CAP};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::link::{LinkParams, UtilityWeights};
use crate::mobility::MobilityConfig;
use crate::topology::{CellTopology, SpectrumMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Tabular Q-learning power and interference control.
    Rpic,
    FixedMax,
    FixedHalf,
    Random,
    /// Exhaustive one-slot utility maximization with the true channel.
    GreedyMyopic,
}

impl Policy {
    pub const ALL: [Policy; 5] =
        [Policy::Rpic, Policy::FixedMax, Policy::FixedHalf, Policy::Random, Policy::GreedyMyopic];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Rpic => "rpic",
            Policy::FixedMax => "fixed_max",
            Policy::FixedHalf => "fixed_half",
            Policy::Random => "random",
            Policy::GreedyMyopic => "greedy_myopic",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Policy::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| Error::Config(format!("unknown policy `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopologySection {
    pub rows: usize,
    pub cols: usize,
    pub spacing_m: f64,
    pub ap_height_m: f64,
    pub spectrum_mode: SpectrumMode,
}

impl Default for TopologySection {
    fn default() -> Self {
        TopologySection { rows: 5, cols: 5, spacing_m: 2.0, ap_height_m: 3.0, spectrum_mode: SpectrumMode::FourBlock }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub detector_area_cm2: f64,
    pub semi_angle_deg: f64,
    pub fov_deg: f64,
    pub responsivity_a_per_w: f64,
}

impl Default for ChannelSection {
    fn default() -> Self {
        ChannelSection { detector_area_cm2: 1.0, semi_angle_deg: 60.0, fov_deg: 70.0, responsivity_a_per_w: 0.54 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkSection {
    pub total_bandwidth_hz: f64,
    pub noise_psd_a2_per_hz: f64,
    pub effective_bandwidth_factor: f64,
    pub squared_electrical_power: bool,
    /// Fixed power each co-channel neighbor puts on each of its UEs' sub-bands.
    pub neighbor_power_mw: f64,
    /// Active UEs per neighbor cell; 0 means "same as the served density".
    pub neighbor_ues: usize,
}

impl Default for LinkSection {
    fn default() -> Self {
        LinkSection {
            total_bandwidth_hz: 20e6,
            noise_psd_a2_per_hz: 1e-21,
            effective_bandwidth_factor: 0.5,
            squared_electrical_power: false,
            neighbor_power_mw: 2.0,
            neighbor_ues: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MobilitySection {
    pub v_min_mps: f64,
    pub v_max_mps: f64,
    pub slot_duration_s: f64,
    pub ue_height_m: f64,
}

impl Default for MobilitySection {
    fn default() -> Self {
        MobilitySection { v_min_mps: 0.1, v_max_mps: 1.0, slot_duration_s: 0.1, ue_height_m: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgentSection {
    pub power_levels: usize,
    pub max_power_mw: f64,
    pub learning_rate: f64,
    pub discount: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    pub epsilon_decay_slots: usize,
    pub warmup_slots: usize,
    pub max_slots: usize,
    pub rate_bins: usize,
    pub gain_bins: usize,
    pub zeta_cap: f64,
    pub replay: bool,
    pub replay_batch: usize,
    pub action_cap: u64,
}

impl Default for AgentSection {
    fn default() -> Self {
        let a = AgentConfig::default();
        let b = StateBins::default();
        AgentSection {
            power_levels: a.power_levels,
            max_power_mw: a.max_power * 1e3,
            learning_rate: a.learning_rate,
            discount: a.discount,
            epsilon_start: a.epsilon_start,
            epsilon_end: a.epsilon_end,
            epsilon_decay_slots: a.epsilon_decay_slots,
            warmup_slots: a.warmup_slots,
            max_slots: a.max_slots,
            rate_bins: b.rate_bins,
            gain_bins: b.gain_bins,
            zeta_cap: b.zeta_cap,
            replay: a.replay,
            replay_batch: a.replay_batch,
            action_cap: DEFAULT_ACTION_CAP,
        }
    }
}

/// Default `C_E`, per watt. With three UEs at the middle power level the
/// utility terms come out near 7.1 (Mbps), 4.8 and 1.2; see the
/// `calibrate_weights` example for the sweep.
pub const DEFAULT_ENERGY_WEIGHT: f64 = 1000.0;
/// Default `C_I`, per watt.
pub const DEFAULT_INTERFERENCE_WEIGHT: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UtilitySection {
    pub energy_weight_per_w: f64,
    pub interference_weight_per_w: f64,
}

impl Default for UtilitySection {
    fn default() -> Self {
        UtilitySection {
            energy_weight_per_w: DEFAULT_ENERGY_WEIGHT,
            interference_weight_per_w: DEFAULT_INTERFERENCE_WEIGHT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSection {
    pub ue_density: usize,
    pub policy: Policy,
    pub runs: usize,
    pub seed: u64,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        ExperimentSection { ue_density: 3, policy: Policy::Rpic, runs: 1000, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub topology: TopologySection,
    pub channel: ChannelSection,
    pub link: LinkSection,
    pub mobility: MobilitySection,
    pub agent: AgentSection,
    pub utility: UtilitySection,
    pub experiment: ExperimentSection,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes to TOML")
    }

    /// Hex SHA-256 of the canonical TOML rendering.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.experiment.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.experiment.ue_density == 0 {
            return Err(Error::Config("ue_density must be at least 1".into()));
        }
        if !(self.link.neighbor_power_mw >= 0.0 && self.link.neighbor_power_mw <= self.agent.max_power_mw) {
            return Err(Error::Config(format!(
                "neighbor_power_mw must lie in [0, max_power_mw], got {}",
                self.link.neighbor_power_mw
            )));
        }
        Scenario::new(self).map(|_| ())
    }

    pub fn channel_params(&self) -> Result<ChannelParams> {
        let c = &self.channel;
        ChannelParams::from_config_units(c.detector_area_cm2, c.semi_angle_deg, c.fov_deg, c.responsivity_a_per_w)
    }

    pub fn link_params(&self) -> LinkParams {
        LinkParams {
            total_bandwidth: self.link.total_bandwidth_hz,
            noise_psd: self.link.noise_psd_a2_per_hz,
            effective_bandwidth_factor: self.link.effective_bandwidth_factor,
            squared_electrical_power: self.link.squared_electrical_power,
        }
    }

    pub fn agent_config(&self) -> AgentConfig {
        let a = &self.agent;
        AgentConfig {
            power_levels: a.power_levels,
            max_power: a.max_power_mw * 1e-3,
            learning_rate: a.learning_rate,
            discount: a.discount,
            epsilon_start: a.epsilon_start,
            epsilon_end: a.epsilon_end,
            epsilon_decay_slots: a.epsilon_decay_slots,
            warmup_slots: a.warmup_slots,
            max_slots: a.max_slots,
            replay: a.replay,
            replay_batch: a.replay_batch,
            action_cap: a.action_cap,
        }
    }

    pub fn state_bins(&self) -> StateBins {
        StateBins { rate_bins: self.agent.rate_bins, gain_bins: self.agent.gain_bins, zeta_cap: self.agent.zeta_cap }
    }

    pub fn utility_weights(&self) -> UtilityWeights {
        UtilityWeights {
            energy_weight: self.utility.energy_weight_per_w,
            interference_weight: self.utility.interference_weight_per_w,
        }
    }

    pub fn neighbor_ues(&self) -> usize {
        match self.link.neighbor_ues {
            0 => self.experiment.ue_density,
            m => m,
        }
    }

    pub fn with_density(&self, density: usize) -> Self {
        let mut c = self.clone();
        c.experiment.ue_density = density;
        c
    }

    pub fn with_policy(&self, policy: Policy) -> Self {
        let mut c = self.clone();
        c.experiment.policy = policy;
        c
    }
}

/// Validated, unit-converted view of an [`ExperimentConfig`].
#[derive(Debug, Clone)]
pub struct Scenario {
    pub channel: ChannelParams,
    pub topology: CellTopology,
    pub link: LinkParams,
    pub mobility: MobilityConfig,
    pub agent: AgentConfig,
    pub bins: StateBins,
    pub weights: UtilityWeights,
    pub neighbor_power: f64,
    pub neighbor_ues: usize,
    pub ue_density: usize,
    pub policy: Policy,
}

impl Scenario {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let channel = cfg.channel_params()?;
        let t = &cfg.topology;
        let ue_height = cfg.mobility.ue_height_m;
        let topology = CellTopology::new(t.rows, t.cols, t.spacing_m, t.ap_height_m, t.spectrum_mode, ue_height, &channel)?;
        let link = cfg.link_params();
        link.validate()?;
        let mobility = MobilityConfig {
            v_min: cfg.mobility.v_min_mps,
            v_max: cfg.mobility.v_max_mps,
            slot_duration: cfg.mobility.slot_duration_s,
            ue_height,
            cell_bounds: topology.center_bounds(),
        };
        mobility.validate()?;
        let agent = cfg.agent_config();
        agent.validate()?;
        let bins = cfg.state_bins();
        if bins.rate_bins == 0 || bins.gain_bins == 0 || bins.rate_bins > 256 || bins.gain_bins > 256 {
            return Err(Error::Config("bin counts must lie in 1..=256".into()));
        }
        if !(bins.zeta_cap > 0.0) {
            return Err(Error::Config("zeta_cap must be positive".into()));
        }
        let weights = cfg.utility_weights();
        weights.validate()?;
        Ok(Scenario {
            channel,
            topology,
            link,
            mobility,
            agent,
            bins,
            weights,
            neighbor_power: cfg.link.neighbor_power_mw * 1e-3,
            neighbor_ues: cfg.neighbor_ues(),
            ue_density: cfg.experiment.ue_density,
            policy: cfg.experiment.policy,
        })
    }
}
