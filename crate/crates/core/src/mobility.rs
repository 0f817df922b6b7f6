//! Random-waypoint movement of UEs confined to one cell.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::Pos3;
use crate::error::{Error, Result};
use crate::topology::{ApId, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobilityConfig {
    /// m/s
    pub v_min: f64,
    /// m/s
    pub v_max: f64,
    /// s
    pub slot_duration: f64,
    /// m
    pub ue_height: f64,
    pub cell_bounds: Rect,
}

impl MobilityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.v_min >= 0.0 && self.v_min <= self.v_max && self.v_max.is_finite()) {
            return Err(Error::Config(format!(
                "speeds must satisfy 0 <= v_min <= v_max, got [{}, {}]",
                self.v_min, self.v_max
            )));
        }
        if !(self.slot_duration > 0.0) {
            return Err(Error::Config(format!("slot duration must be positive, got {}", self.slot_duration)));
        }
        if !(self.ue_height >= 0.0) {
            return Err(Error::Config(format!("UE height must be non-negative, got {}", self.ue_height)));
        }
        let b = &self.cell_bounds;
        if !(b.x_min <= b.x_max && b.y_min <= b.y_max) {
            return Err(Error::Config("cell bounds are inverted".into()));
        }
        Ok(())
    }

    pub fn with_bounds(&self, cell_bounds: Rect) -> Self {
        MobilityConfig { cell_bounds, ..*self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeState {
    pub id: usize,
    pub position: Pos3,
    pub waypoint: Pos3,
    pub speed: f64,
    pub serving_ap: ApId,
}

fn uniform_point<R: Rng + ?Sized>(config: &MobilityConfig, rng: &mut R) -> Pos3 {
    let b = &config.cell_bounds;
    Pos3::new(
        uniform(rng, b.x_min, b.x_max),
        uniform(rng, b.y_min, b.y_max),
        config.ue_height,
    )
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        lo
    }
}

/// Places `n` UEs uniformly in the cell, each with its own waypoint and speed.
pub fn init_ues<R: Rng + ?Sized>(
    n: usize,
    serving_ap: ApId,
    config: &MobilityConfig,
    rng: &mut R,
) -> Result<Vec<UeState>> {
    if n == 0 {
        return Err(Error::EmptyCell);
    }
    Ok((0..n)
        .map(|id| {
            let position = uniform_point(config, rng);
            let waypoint = uniform_point(config, rng);
            let speed = uniform(rng, config.v_min, config.v_max);
            UeState { id, position, waypoint, speed, serving_ap }
        })
        .collect())
}

/// Advances one slot toward the waypoint. Arriving (or starting on the
/// waypoint) parks the UE there and draws a fresh waypoint and speed.
pub fn rwp_step<R: Rng + ?Sized>(ue: &UeState, config: &MobilityConfig, rng: &mut R) -> UeState {
    let mut next = ue.clone();
    let dx = ue.waypoint.x - ue.position.x;
    let dy = ue.waypoint.y - ue.position.y;
    let remaining = dx.hypot(dy);
    let travel = ue.speed * config.slot_duration;

    if remaining == 0.0 || travel >= remaining {
        next.position = Pos3::new(ue.waypoint.x, ue.waypoint.y, config.ue_height);
        next.waypoint = uniform_point(config, rng);
        next.speed = uniform(rng, config.v_min, config.v_max);
    } else {
        let f = travel / remaining;
        let b = &config.cell_bounds;
        next.position = Pos3::new(
            (ue.position.x + f * dx).clamp(b.x_min, b.x_max),
            (ue.position.y + f * dy).clamp(b.y_min, b.y_max),
            config.ue_height,
        );
    }
    next
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn central() -> MobilityConfig {
        MobilityConfig {
            v_min: 0.1,
            v_max: 1.0,
            slot_duration: 0.1,
            ue_height: 1.0,
            cell_bounds: Rect { x_min: 4.0, x_max: 6.0, y_min: 4.0, y_max: 6.0 },
        }
    }

    #[test]
    fn init_places_ues_in_cell() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ues = init_ues(3, 12, &central(), &mut rng).unwrap();
        assert_eq!(ues.len(), 3);
        for ue in &ues {
            assert!(central().cell_bounds.contains(ue.position.x, ue.position.y));
            assert!(central().cell_bounds.contains(ue.waypoint.x, ue.waypoint.y));
            assert_eq!(ue.position.z, 1.0);
            assert!((0.1..=1.0).contains(&ue.speed));
            assert_eq!(ue.serving_ap, 12);
        }
    }

    #[test]
    fn init_is_deterministic() {
        let a = init_ues(4, 0, &central(), &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = init_ues(4, 0, &central(), &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn init_rejects_empty_cell() {
        assert!(matches!(
            init_ues(0, 0, &central(), &mut ChaCha8Rng::seed_from_u64(0)),
            Err(Error::EmptyCell)
        ));
    }

    #[test]
    fn zero_speed_never_moves() {
        let cfg = MobilityConfig { v_min: 0.0, v_max: 0.0, ..central() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut ue = init_ues(1, 0, &cfg, &mut rng).unwrap().remove(0);
        let start = ue.position;
        for _ in 0..500 {
            ue = rwp_step(&ue, &cfg, &mut rng);
            assert_eq!(ue.position, start);
        }
    }

    #[test]
    fn step_moves_toward_waypoint() {
        let ue = UeState {
            id: 0,
            position: Pos3::new(4.5, 5.0, 1.0),
            waypoint: Pos3::new(5.5, 5.0, 1.0),
            speed: 1.0,
            serving_ap: 12,
        };
        let next = rwp_step(&ue, &central(), &mut ChaCha8Rng::seed_from_u64(0));
        assert_relative_eq!(next.position.x, 4.6, max_relative = 1e-12);
        assert_eq!(next.position.y, 5.0);
        assert_eq!(next.waypoint, ue.waypoint);
    }

    #[test]
    fn at_waypoint_draws_new_one_without_moving() {
        let ue = UeState {
            id: 0,
            position: Pos3::new(5.0, 5.0, 1.0),
            waypoint: Pos3::new(5.0, 5.0, 1.0),
            speed: 0.5,
            serving_ap: 12,
        };
        let next = rwp_step(&ue, &central(), &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(next.position, ue.position);
        assert_ne!(next.waypoint, ue.waypoint);
    }

    #[test]
    fn overshoot_lands_on_waypoint() {
        let ue = UeState {
            id: 0,
            position: Pos3::new(5.0, 5.0, 1.0),
            waypoint: Pos3::new(5.05, 5.0, 1.0),
            speed: 1.0,
            serving_ap: 12,
        };
        let next = rwp_step(&ue, &central(), &mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(next.position, Pos3::new(5.05, 5.0, 1.0));
        assert_ne!(next.waypoint, ue.waypoint);
    }

    #[test]
    fn validate_rejects_bad_speeds() {
        assert!(MobilityConfig { v_min: 2.0, v_max: 1.0, ..central() }.validate().is_err());
        assert!(MobilityConfig { slot_duration: 0.0, ..central() }.validate().is_err());
        assert!(central().validate().is_ok());
    }
}
