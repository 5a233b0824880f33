//! Coarse traversability screening of the property maps.
//!
//! Each pixel gets independent flag bits: soft ground when the expected
//! sinkage exponent is high, slippery ground when the expected friction
//! angle is low, and uncertain when either predicted standard deviation
//! exceeds its cap. The screen is a triage aid, not a planner.

use alloc::vec;
use alloc::vec::Vec;

use super::maps::PropertyMap;
use super::InferenceError;
use crate::terramech::TerrainParameter;

/// Mean sinkage exponent above the threshold.
pub const FLAG_SOFT: u8 = 1;
/// Mean friction angle below the threshold.
pub const FLAG_SLIPPERY: u8 = 2;
/// A predicted standard deviation above its cap.
pub const FLAG_UNCERTAIN: u8 = 4;

/// Flagging thresholds. The default flags nothing; tighten fields
/// individually.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HazardThresholds {
    /// Flag SOFT where mean N exceeds this.
    pub soft_n_max: f64,
    /// Flag SLIPPERY where mean phi (deg) falls below this.
    pub slippery_phi_min_deg: f64,
    /// Flag UNCERTAIN where std N exceeds this.
    pub sigma_n_max: f64,
    /// Flag UNCERTAIN where std phi (deg) exceeds this.
    pub sigma_phi_max_deg: f64,
}

impl Default for HazardThresholds {
    fn default() -> Self {
        Self {
            soft_n_max: f64::INFINITY,
            slippery_phi_min_deg: f64::NEG_INFINITY,
            sigma_n_max: f64::INFINITY,
            sigma_phi_max_deg: f64::INFINITY,
        }
    }
}

/// Per-pixel flag bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagRaster {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl FlagRaster {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn at(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.width && y < self.height);
        self.data[y * self.width + x]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }
}

/// Flag counts over the whole raster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HazardSummary {
    pub soft: usize,
    pub slippery: usize,
    pub uncertain: usize,
    /// Pixels with at least one flag.
    pub flagged: usize,
    pub total: usize,
}

/// Screens both maps against the thresholds.
pub fn hazard_flags(
    map_n: &PropertyMap,
    map_phi: &PropertyMap,
    thresholds: &HazardThresholds,
) -> Result<(FlagRaster, HazardSummary), InferenceError> {
    if map_n.parameter() != TerrainParameter::SinkageExponent {
        return Err(InferenceError::ParameterMismatch {
            expected: TerrainParameter::SinkageExponent,
            got: map_n.parameter(),
        });
    }
    if map_phi.parameter() != TerrainParameter::FrictionAngle {
        return Err(InferenceError::ParameterMismatch {
            expected: TerrainParameter::FrictionAngle,
            got: map_phi.parameter(),
        });
    }
    if map_n.width() != map_phi.width() || map_n.height() != map_phi.height() {
        return Err(InferenceError::ShapeMismatch {
            name: "friction angle map",
            got_width: map_phi.width(),
            got_height: map_phi.height(),
            width: map_n.width(),
            height: map_n.height(),
        });
    }
    let (width, height) = (map_n.width(), map_n.height());
    let mut data = vec![0u8; width * height];
    let mut summary = HazardSummary { total: width * height, ..Default::default() };
    for i in 0..data.len() {
        let mut flags = 0u8;
        if map_n.means()[i] > thresholds.soft_n_max {
            flags |= FLAG_SOFT;
            summary.soft += 1;
        }
        if map_phi.means()[i] < thresholds.slippery_phi_min_deg {
            flags |= FLAG_SLIPPERY;
            summary.slippery += 1;
        }
        if map_n.std_devs()[i] > thresholds.sigma_n_max
            || map_phi.std_devs()[i] > thresholds.sigma_phi_max_deg
        {
            flags |= FLAG_UNCERTAIN;
            summary.uncertain += 1;
        }
        if flags != 0 {
            summary.flagged += 1;
        }
        data[i] = flags;
    }
    Ok((FlagRaster { width, height, data }, summary))
}
