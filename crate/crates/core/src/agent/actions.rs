use crate::error::{Error, Result};

/// Default cap on the joint action count `(L+1)^N`.
pub const DEFAULT_ACTION_CAP: u64 = 1_000_000;

/// Quantized power levels `{i·X_max/L : 0 ≤ i ≤ L}` and the joint action
/// space over `N` UEs in lexicographic order (UE 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSet {
    levels: Vec<f64>,
    ues: usize,
    size: usize,
}

impl ActionSet {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn ue_count(&self) -> usize {
        self.ues
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn max_index(&self) -> usize {
        self.size - 1
    }

    /// Per-UE level indices of a joint action.
    pub fn decode(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.size);
        let base = self.levels.len();
        let mut digits = vec![0; self.ues];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = rest % base;
            rest /= base;
        }
        digits
    }

    pub fn encode(&self, level_indices: &[usize]) -> Result<usize> {
        if level_indices.len() != self.ues {
            return Err(Error::DimensionMismatch(format!(
                "{} level indices for {} UEs",
                level_indices.len(),
                self.ues
            )));
        }
        let base = self.levels.len();
        level_indices.iter().try_fold(0usize, |acc, &d| {
            if d >= base {
                Err(Error::DimensionMismatch(format!("level index {d} out of 0..{base}")))
            } else {
                Ok(acc * base + d)
            }
        })
    }

    /// Serving powers in watts for a joint action.
    pub fn powers(&self, index: usize) -> Vec<f64> {
        self.decode(index).into_iter().map(|d| self.levels[d]).collect()
    }

    /// Joint action with every UE on the same level.
    pub fn uniform(&self, level: usize) -> usize {
        let digits = vec![level.min(self.levels.len() - 1); self.ues];
        self.encode(&digits).expect("uniform digits are in range")
    }
}

pub fn enumerate_actions(levels: usize, max_power: f64, ues: usize) -> Result<ActionSet> {
    enumerate_actions_capped(levels, max_power, ues, DEFAULT_ACTION_CAP)
}

pub fn enumerate_actions_capped(levels: usize, max_power: f64, ues: usize, cap: u64) -> Result<ActionSet> {
    if ues == 0 {
        return Err(Error::EmptyCell);
    }
    if levels == 0 {
        return Err(Error::Config("at least one power level is required".into()));
    }
    if !(max_power > 0.0) {
        return Err(Error::Config(format!("maximum power must be positive, got {max_power}")));
    }
    let base = levels as u128 + 1;
    let size = u32::try_from(ues)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::ActionSpaceTooLarge { size, cap });
    }
    let levels = (0..=levels).map(|i| i as f64 * max_power / levels as f64).collect();
    Ok(ActionSet { levels, ues, size: size as usize })
}
