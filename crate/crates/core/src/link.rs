//! Per-slot SINR, achievable rate, inter-cell interference and utility.
//!
//! Utility units: the rate term is in Mbps; power and interference terms are
//! in watts and scaled by [`UtilityWeights`], whose entries are per watt.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bits/s → Mbps factor applied to the rate term of the utility.
pub const RATE_UNIT_SCALE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkParams {
    /// Hz
    pub total_bandwidth: f64,
    /// A²/Hz
    pub noise_psd: f64,
    /// Fraction of the band usable after Hermitian symmetry, in (0, 1].
    pub effective_bandwidth_factor: f64,
    /// Square the received photocurrent terms (electrical power) instead of
    /// using them linearly.
    pub squared_electrical_power: bool,
}

impl LinkParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.total_bandwidth > 0.0) {
            return Err(Error::Config(format!("bandwidth must be positive, got {}", self.total_bandwidth)));
        }
        if !(self.noise_psd > 0.0) {
            return Err(Error::Config(format!("noise PSD must be positive, got {}", self.noise_psd)));
        }
        if !(self.effective_bandwidth_factor > 0.0 && self.effective_bandwidth_factor <= 1.0) {
            return Err(Error::Config(format!(
                "effective bandwidth factor must lie in (0, 1], got {}",
                self.effective_bandwidth_factor
            )));
        }
        Ok(())
    }
}

impl Default for LinkParams {
    fn default() -> Self {
        LinkParams {
            total_bandwidth: 20e6,
            noise_psd: 1e-21,
            effective_bandwidth_factor: 0.5,
            squared_electrical_power: false,
        }
    }
}

/// Channel gains seen by the serving AP in one slot.
///
/// `N` served UEs, `J` co-channel neighbors, `M_j` active UEs in neighbor `j`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlotChannelSnapshot {
    /// `h_n`, length N.
    pub serving_gains: Vec<f64>,
    /// `γ_{j,n}` indexed `[n][j]`, N × J.
    pub interferer_gains: Vec<Vec<f64>>,
    /// `g_{j,m}` indexed `[j][m]`: serving AP → m-th UE of neighbor j.
    pub outgoing_gains: Vec<Vec<f64>>,
}

impl SlotChannelSnapshot {
    pub fn ue_count(&self) -> usize {
        self.serving_gains.len()
    }

    pub fn neighbor_count(&self) -> usize {
        self.outgoing_gains.len()
    }

    pub fn foreign_ue_counts(&self) -> Vec<usize> {
        self.outgoing_gains.iter().map(Vec::len).collect()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.ue_count();
        let j = self.neighbor_count();
        if self.interferer_gains.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} interferer gain rows for {n} UEs",
                self.interferer_gains.len()
            )));
        }
        if let Some(row) = self.interferer_gains.iter().find(|row| row.len() != j) {
            return Err(Error::DimensionMismatch(format!("interferer row of {} for {j} neighbors", row.len())));
        }
        Ok(())
    }
}

/// Optical transmit powers in one slot, watts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerVector {
    /// `x_n`, serving AP → UE n.
    pub serving: Vec<f64>,
    /// `x_{j,n}` indexed `[n][j]`: neighbor j's power on UE n's sub-band.
    pub interferer: Vec<Vec<f64>>,
}

impl PowerVector {
    /// Serving powers with every neighbor at the same fixed power.
    pub fn with_uniform_neighbors(serving: Vec<f64>, neighbors: usize, neighbor_power: f64) -> Self {
        let interferer = vec![vec![neighbor_power; neighbors]; serving.len()];
        PowerVector { serving, interferer }
    }

    pub fn total_serving(&self) -> f64 {
        self.serving.iter().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UtilityWeights {
    /// `C_E`, utility per watt of serving power.
    pub energy_weight: f64,
    /// `C_I`, utility per watt of outgoing interference.
    pub interference_weight: f64,
}

impl UtilityWeights {
    pub fn validate(&self) -> Result<()> {
        if !(self.energy_weight >= 0.0 && self.interference_weight >= 0.0) {
            return Err(Error::Config("utility weights must be non-negative".into()));
        }
        Ok(())
    }
}

pub fn per_ue_bandwidth(params: &LinkParams, n_ues: usize) -> Result<f64> {
    if n_ues == 0 {
        return Err(Error::EmptyCell);
    }
    Ok(params.effective_bandwidth_factor * params.total_bandwidth / n_ues as f64)
}

pub fn sinr(
    n: usize,
    powers: &PowerVector,
    snapshot: &SlotChannelSnapshot,
    params: &LinkParams,
    responsivity: f64,
) -> Result<f64> {
    snapshot.check()?;
    let count = snapshot.ue_count();
    if n >= count || powers.serving.len() != count || powers.interferer.len() != count {
        return Err(Error::DimensionMismatch(format!(
            "UE {n} with {} serving powers, {} interferer rows and {count} gains",
            powers.serving.len(),
            powers.interferer.len()
        )));
    }
    let x_int = &powers.interferer[n];
    let g_int = &snapshot.interferer_gains[n];
    if x_int.len() != g_int.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} interferer powers for {} interferer gains",
            x_int.len(),
            g_int.len()
        )));
    }
    let w_n = per_ue_bandwidth(params, count)?;
    let shape = |current: f64| if params.squared_electrical_power { current * current } else { current };

    let signal = shape(responsivity * powers.serving[n] * snapshot.serving_gains[n]);
    let interference: f64 = x_int.iter().zip(g_int).map(|(x, g)| shape(responsivity * x * g)).sum();
    Ok(signal / (w_n * params.noise_psd + interference))
}

/// Shannon rate `W_n · log2(1 + ζ)`, bits/s.
pub fn achievable_rate(bandwidth: f64, sinr: f64) -> f64 {
    bandwidth * sinr.ln_1p() / std::f64::consts::LN_2
}

/// Interference the serving AP leaks into co-channel neighbor cells.
pub fn total_ici(powers: &PowerVector, snapshot: &SlotChannelSnapshot, responsivity: f64) -> Result<f64> {
    if powers.serving.len() != snapshot.ue_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} serving powers for {} UEs",
            powers.serving.len(),
            snapshot.ue_count()
        )));
    }
    let leak: f64 = snapshot.outgoing_gains.iter().flatten().sum();
    Ok(powers.serving.iter().map(|x| responsivity * x * leak).sum())
}

/// Mean rate (Mbps) minus weighted energy and interference.
pub fn utility(rates: &[f64], serving_powers: &[f64], ici: f64, weights: &UtilityWeights) -> Result<f64> {
    if rates.is_empty() {
        return Err(Error::EmptyCell);
    }
    let mean_rate = rates.iter().sum::<f64>() / rates.len() as f64;
    let energy: f64 = serving_powers.iter().sum();
    Ok(utility_from_totals(mean_rate, energy, ici, weights))
}

pub fn utility_from_totals(mean_rate_bps: f64, energy_w: f64, ici_w: f64, weights: &UtilityWeights) -> f64 {
    mean_rate_bps * RATE_UNIT_SCALE - weights.energy_weight * energy_w - weights.interference_weight * ici_w
}

/// Every per-slot quantity derived from one power choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotEvaluation {
    pub sinrs: Vec<f64>,
    pub rates: Vec<f64>,
    pub mean_rate: f64,
    pub energy: f64,
    pub ici: f64,
    pub utility: f64,
}

pub fn evaluate_slot(
    powers: &PowerVector,
    snapshot: &SlotChannelSnapshot,
    params: &LinkParams,
    responsivity: f64,
    weights: &UtilityWeights,
) -> Result<SlotEvaluation> {
    let count = snapshot.ue_count();
    let w_n = per_ue_bandwidth(params, count)?;
    let sinrs = (0..count)
        .map(|n| sinr(n, powers, snapshot, params, responsivity))
        .collect::<Result<Vec<_>>>()?;
    let rates: Vec<f64> = sinrs.iter().map(|&z| achievable_rate(w_n, z)).collect();
    let ici = total_ici(powers, snapshot, responsivity)?;
    let mean_rate = rates.iter().sum::<f64>() / count as f64;
    let energy = powers.total_serving();
    let utility = utility_from_totals(mean_rate, energy, ici, weights);
    Ok(SlotEvaluation { sinrs, rates, mean_rate, energy, ici, utility })
}
