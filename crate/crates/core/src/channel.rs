//! Line-of-sight Lambertian channel between a ceiling AP and a photodiode.
//!
//! Both the LED and the photodiode are assumed to point along the vertical
//! axis (LED down, photodiode up), so irradiance and incidence angles are
//! equal. They are still carried separately in [`LinkGeometry`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the room, meters. `z` is height above the floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pos3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Pos3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Pos3 { x, y, z }
    }

    pub fn distance(&self, other: &Pos3) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2)).sqrt()
    }

    pub fn horizontal_distance(&self, other: &Pos3) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Optical front-end constants, stored in SI units and radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Photodiode detection area, m².
    pub detector_area: f64,
    /// LED semi-angle at half intensity, radians.
    pub semi_angle_half_intensity: f64,
    /// Photodiode field of view, radians.
    pub fov_angle: f64,
    /// Photodiode responsivity, A/W.
    pub responsivity: f64,
    lambertian_order: f64,
}

impl ChannelParams {
    pub fn new(
        detector_area: f64,
        semi_angle_half_intensity: f64,
        fov_angle: f64,
        responsivity: f64,
    ) -> Result<Self> {
        if !(detector_area > 0.0) {
            return Err(Error::Domain(format!("detector area must be positive, got {detector_area}")));
        }
        if !(fov_angle > 0.0 && fov_angle <= PI / 2.0) {
            return Err(Error::Domain(format!("FOV must lie in (0, 90°], got {} rad", fov_angle)));
        }
        if !(responsivity > 0.0) {
            return Err(Error::Domain(format!("responsivity must be positive, got {responsivity}")));
        }
        let lambertian_order = lambertian_order(semi_angle_half_intensity.to_degrees())?;
        Ok(ChannelParams {
            detector_area,
            semi_angle_half_intensity,
            fov_angle,
            responsivity,
            lambertian_order,
        })
    }

    /// Builds parameters from the units used in configuration files:
    /// area in cm², angles in degrees.
    pub fn from_config_units(
        detector_area_cm2: f64,
        semi_angle_deg: f64,
        fov_deg: f64,
        responsivity: f64,
    ) -> Result<Self> {
        Self::new(
            detector_area_cm2 * 1e-4,
            semi_angle_deg.to_radians(),
            fov_deg.to_radians(),
            responsivity,
        )
    }

    /// Indoor defaults: 1 cm² photodiode, 60° LED semi-angle, 70° FOV, 0.54 A/W.
    pub fn indoor_default() -> Self {
        Self::from_config_units(1.0, 60.0, 70.0, 0.54).expect("default channel parameters are valid")
    }

    pub fn lambertian_order(&self) -> f64 {
        self.lambertian_order
    }
}

/// Distance and angles of one AP→UE path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub distance: f64,
    pub irradiance_angle: f64,
    pub incidence_angle: f64,
}

/// Lambertian order `m = -1 / log2(cos φ½)` for a semi-angle given in degrees.
pub fn lambertian_order(semi_angle_deg: f64) -> Result<f64> {
    if !(semi_angle_deg > 0.0 && semi_angle_deg < 90.0) {
        return Err(Error::Domain(format!(
            "semi-angle at half intensity must lie in (0°, 90°), got {semi_angle_deg}°"
        )));
    }
    let log_cos = semi_angle_deg.to_radians().cos().log2();
    if !(log_cos < 0.0) {
        return Err(Error::Domain(format!("Lambertian order undefined for {semi_angle_deg}°")));
    }
    Ok(-1.0 / log_cos)
}

pub fn link_geometry(ap: Pos3, ue: Pos3) -> Result<LinkGeometry> {
    if !(ap.z > ue.z) {
        return Err(Error::DegenerateGeometry { ap_z: ap.z, ue_z: ue.z });
    }
    let distance = ap.distance(&ue);
    let angle = ((ap.z - ue.z) / distance).clamp(-1.0, 1.0).acos();
    Ok(LinkGeometry { distance, irradiance_angle: angle, incidence_angle: angle })
}

/// Photodiode acceptance: 1 inside the field of view (boundary included), 0 outside.
pub fn rect_fov(incidence_angle: f64, fov_angle: f64) -> f64 {
    if incidence_angle.abs() <= fov_angle {
        1.0
    } else {
        0.0
    }
}

/// DC gain of the line-of-sight path from `ap` to `ue`.
pub fn channel_gain(ap: Pos3, ue: Pos3, params: &ChannelParams) -> Result<f64> {
    let geom = link_geometry(ap, ue)?;
    Ok(gain_from_geometry(&geom, params))
}

pub fn gain_from_geometry(geom: &LinkGeometry, params: &ChannelParams) -> f64 {
    if rect_fov(geom.incidence_angle, params.fov_angle) == 0.0 {
        return 0.0;
    }
    let m = params.lambertian_order;
    (m + 1.0) * params.detector_area / (2.0 * PI * geom.distance * geom.distance)
        * geom.irradiance_angle.cos().powf(m)
        * geom.incidence_angle.cos()
}
