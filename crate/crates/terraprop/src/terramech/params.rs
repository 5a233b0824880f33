//! Wheel geometry and non-dominant soil constants.

use super::TerramechError;

/// Rigid wheel dimensions, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelGeometry {
    /// Rim radius.
    pub radius: f64,
    /// Contact width.
    pub width: f64,
    /// Lug height above the rim.
    pub lug_height: f64,
    /// Effective rolling radius used in slip kinematics; between the rim
    /// and the lug tip on soft ground.
    pub slip_radius: f64,
}

impl Default for WheelGeometry {
    /// Single-wheel testbed wheel: 140 mm rim, 150 mm width, 10 mm lugs,
    /// 145 mm effective rolling radius.
    fn default() -> Self {
        Self { radius: 0.140, width: 0.150, lug_height: 0.010, slip_radius: 0.145 }
    }
}

impl WheelGeometry {
    pub fn validate(&self) -> Result<(), TerramechError> {
        for (name, value) in [
            ("wheel radius", self.radius),
            ("wheel width", self.width),
            ("lug height", self.lug_height),
            ("slip radius", self.slip_radius),
        ] {
            if !value.is_finite() {
                return Err(TerramechError::NonFinite { name });
            }
            if value <= 0.0 {
                return Err(TerramechError::NonPositive { name, value });
            }
        }
        let max = self.radius + self.lug_height;
        if self.slip_radius < self.radius || self.slip_radius > max {
            return Err(TerramechError::SlipRadiusRange {
                slip_radius: self.slip_radius,
                radius: self.radius,
                max,
            });
        }
        Ok(())
    }
}

/// Soil constants treated as known during identification. SI units: the
/// pressure-sinkage moduli are in Pa·m^-(N-1) and Pa·m^-N, cohesion in Pa,
/// and the shear deformation modulus in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoilParams {
    /// Cohesive pressure-sinkage modulus (k_c).
    pub cohesive_modulus: f64,
    /// Frictional pressure-sinkage modulus (k_phi).
    pub frictional_modulus: f64,
    /// Cohesion (c).
    pub cohesion: f64,
    /// Shear deformation modulus (K).
    pub shear_modulus: f64,
}

impl Default for SoilParams {
    /// Dry sandy test soil: k_c = 100 kPa·m^-(N-1), k_phi = 1400 kPa·m^-N,
    /// c = 1 kPa, K = 16 mm, in SI units.
    fn default() -> Self {
        Self {
            cohesive_modulus: 100e3,
            frictional_modulus: 1400e3,
            cohesion: 1e3,
            shear_modulus: 0.016,
        }
    }
}

impl SoilParams {
    pub fn validate(&self) -> Result<(), TerramechError> {
        for (name, value) in [
            ("cohesive modulus", self.cohesive_modulus),
            ("frictional modulus", self.frictional_modulus),
            ("cohesion", self.cohesion),
        ] {
            if !value.is_finite() {
                return Err(TerramechError::NonFinite { name });
            }
            if value < 0.0 {
                return Err(TerramechError::NonPositive { name, value });
            }
        }
        if !self.shear_modulus.is_finite() {
            return Err(TerramechError::NonFinite { name: "shear modulus" });
        }
        if self.shear_modulus <= 0.0 {
            return Err(TerramechError::NonPositive {
                name: "shear modulus",
                value: self.shear_modulus,
            });
        }
        // A wheel on soil with neither cohesive nor frictional stiffness
        // carries no load.
        if self.cohesive_modulus == 0.0 && self.frictional_modulus == 0.0 {
            return Err(TerramechError::NonPositive {
                name: "pressure-sinkage moduli (k_c and k_phi both zero)",
                value: 0.0,
            });
        }
        Ok(())
    }
}
