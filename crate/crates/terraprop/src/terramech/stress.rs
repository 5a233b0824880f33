//! Pressure-sinkage and shear stress at a contact angle.

use super::{SoilParams, TerramechError, WheelGeometry};
use crate::math;

fn check_contact_angle(theta: f64, entry: f64) -> Result<(), TerramechError> {
    if !theta.is_finite() {
        return Err(TerramechError::NonFinite { name: "contact angle" });
    }
    if !entry.is_finite() || !(0.0..=core::f64::consts::FRAC_PI_2).contains(&entry) {
        return Err(TerramechError::EntryAngleRange { entry });
    }
    if math::abs(theta) > entry {
        return Err(TerramechError::OutsideContact { theta, entry, exit: -entry });
    }
    Ok(())
}

fn check_sinkage_exponent(n_exp: f64) -> Result<(), TerramechError> {
    if !n_exp.is_finite() || n_exp <= 0.0 {
        return Err(TerramechError::SinkageExponentRange { n_exp });
    }
    Ok(())
}

/// Normal (radial) stress under the wheel at contact angle `theta`, Pa:
/// `(k_c / b + k_phi) * (r * (cos theta - cos theta_1))^N`.
pub fn normal_stress(
    theta: f64,
    n_exp: f64,
    entry: f64,
    geometry: &WheelGeometry,
    soil: &SoilParams,
) -> Result<f64, TerramechError> {
    geometry.validate()?;
    soil.validate()?;
    check_contact_angle(theta, entry)?;
    check_sinkage_exponent(n_exp)?;
    let coeff = soil.cohesive_modulus / geometry.width + soil.frictional_modulus;
    // cos(theta) - cos(entry) >= 0 inside the patch; clamp float dust.
    let base = (geometry.radius * (math::cos(theta) - math::cos(entry))).max(0.0);
    if base == 0.0 {
        return Ok(0.0);
    }
    Ok(coeff * math::powf(base, n_exp))
}

/// Accumulated shear displacement at contact angle `theta`, meters:
/// `r * ((theta_1 - theta) - (1 - s) * (sin theta_1 - sin theta))`.
pub fn shear_displacement(
    theta: f64,
    slip: f64,
    entry: f64,
    radius: f64,
) -> Result<f64, TerramechError> {
    if !(0.0..=1.0).contains(&slip) {
        return Err(TerramechError::SlipRange { slip });
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(TerramechError::NonPositive { name: "wheel radius", value: radius });
    }
    check_contact_angle(theta, entry)?;
    let j = radius * ((entry - theta) - (1.0 - slip) * (math::sin(entry) - math::sin(theta)));
    // Nonnegative on the contact patch; clamp float dust near theta_1.
    Ok(j.max(0.0))
}

/// Shear stress at contact angle `theta`, Pa:
/// `(c + sigma * tan phi) * (1 - exp(-j / K))`.
pub fn shear_stress(
    theta: f64,
    n_exp: f64,
    phi_deg: f64,
    slip: f64,
    entry: f64,
    geometry: &WheelGeometry,
    soil: &SoilParams,
) -> Result<f64, TerramechError> {
    if !phi_deg.is_finite() || !(0.0..90.0).contains(&phi_deg) {
        return Err(TerramechError::FrictionAngleRange { phi_deg });
    }
    let sigma = normal_stress(theta, n_exp, entry, geometry, soil)?;
    let j = shear_displacement(theta, slip, entry, geometry.radius)?;
    let tan_phi = math::tan(math::to_radians(phi_deg));
    Ok((soil.cohesion + sigma * tan_phi) * (1.0 - math::exp(-j / soil.shear_modulus)))
}
