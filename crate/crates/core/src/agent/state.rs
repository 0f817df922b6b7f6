use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bin counts for the tabular state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateBins {
    pub rate_bins: usize,
    pub gain_bins: usize,
    /// SINR whose rate marks the top edge of the rate grid.
    pub zeta_cap: f64,
}

impl Default for StateBins {
    fn default() -> Self {
        StateBins { rate_bins: 4, gain_bins: 4, zeta_cap: 1e7 }
    }
}

/// Uniform grids over `[0, rate_max]` and `[0, gain_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantizer {
    pub bins: StateBins,
    pub rate_max: f64,
    pub gain_max: f64,
}

impl Quantizer {
    /// `rate_max = W_n·log2(1 + zeta_cap)`; `gain_max` is the gain straight below the AP.
    pub fn new(bins: StateBins, per_ue_bandwidth: f64, gain_max: f64) -> Result<Self> {
        if bins.rate_bins == 0 || bins.gain_bins == 0 {
            return Err(Error::Config("bin counts must be at least 1".into()));
        }
        if !(bins.zeta_cap > 0.0) || !(per_ue_bandwidth > 0.0) || !(gain_max > 0.0) {
            return Err(Error::Config("quantizer ranges must be positive".into()));
        }
        Ok(Quantizer {
            bins,
            rate_max: per_ue_bandwidth * (1.0 + bins.zeta_cap).log2(),
            gain_max,
        })
    }

    /// Maps rates (bits/s) and gains into bin indices. Bins are half-open
    /// `[lo, hi)`, values past the top clamp into the last bin.
    pub fn quantize(&self, rates: &[f64], gains: &[f64], density: usize) -> Result<StateKey> {
        if rates.len() != density || gains.len() != density {
            return Err(Error::DimensionMismatch(format!(
                "{} rates and {} gains for density {density}",
                rates.len(),
                gains.len()
            )));
        }
        Ok(StateKey {
            rate_bins: rates.iter().map(|&r| bin(r, self.rate_max, self.bins.rate_bins)).collect(),
            gain_bins: gains.iter().map(|&g| bin(g, self.gain_max, self.bins.gain_bins)).collect(),
            density,
        })
    }
}

fn bin(value: f64, max: f64, count: usize) -> u8 {
    if !(value > 0.0) {
        return 0;
    }
    let idx = (value / max * count as f64).floor();
    (idx as usize).min(count - 1) as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey {
    pub rate_bins: Vec<u8>,
    pub gain_bins: Vec<u8>,
    pub density: usize,
}

fn join(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for StateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}/h={}/d={}", join(&self.rate_bins), join(&self.gain_bins), self.density)
    }
}

impl FromStr for StateKey {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut parts = s.split('/');
        let mut field = |prefix: &str| -> std::result::Result<&str, String> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(prefix))
                .ok_or_else(|| format!("expected `{prefix}` in state key `{s}`"))
        };
        let bins = |v: &str| -> std::result::Result<Vec<u8>, String> {
            if v.is_empty() {
                return Ok(Vec::new());
            }
            v.split(',').map(|b| b.parse::<u8>().map_err(|e| format!("bad bin `{b}`: {e}"))).collect()
        };
        let rate_bins = bins(field("r=")?)?;
        let gain_bins = bins(field("h=")?)?;
        let density = field("d=")?.parse::<usize>().map_err(|e| format!("bad density: {e}"))?;
        if parts.next().is_some() {
            return Err(format!("trailing fields in state key `{s}`"));
        }
        Ok(StateKey { rate_bins, gain_bins, density })
    }
}
