//! Forward wheel model: contact stresses integrated to load and torque.

use alloc::vec::Vec;

use super::{SoilParams, TerramechError, WheelGeometry};
use crate::math;

/// Slip and contact-patch angles for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelState {
    pub slip: f64,
    /// Front contact entry angle, radians.
    pub entry_angle: f64,
    /// Rear contact exit angle, radians; 0 assumes the soil separates at
    /// the bottom dead center.
    pub exit_angle: f64,
}

impl WheelState {
    pub fn new(slip: f64, entry_angle: f64) -> Self {
        Self { slip, entry_angle, exit_angle: 0.0 }
    }

    pub fn validate(&self) -> Result<(), TerramechError> {
        if !(0.0..=1.0).contains(&self.slip) {
            return Err(TerramechError::SlipRange { slip: self.slip });
        }
        if !self.entry_angle.is_finite()
            || !(0.0..=core::f64::consts::FRAC_PI_2).contains(&self.entry_angle)
        {
            return Err(TerramechError::EntryAngleRange { entry: self.entry_angle });
        }
        if !self.exit_angle.is_finite()
            || self.exit_angle < -core::f64::consts::FRAC_PI_2
            || self.exit_angle > self.entry_angle
        {
            return Err(TerramechError::ExitAngleRange {
                exit: self.exit_angle,
                entry: self.entry_angle,
            });
        }
        Ok(())
    }
}

/// Forward model output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelForces {
    /// Vertical load carried by the contact patch, N.
    pub vertical_load: f64,
    /// Drive torque about the axle, N·m.
    pub drive_torque: f64,
}

/// Vertical load and drive torque of a rigid wheel:
///
/// `F_N = r b * integral(sigma cos theta + tau sin theta)`
/// `M_R = r^2 b * integral(tau)`
///
/// over the contact patch, by composite Simpson quadrature with
/// `quadrature_n` subintervals (even, at least 2).
pub fn forward_wheel(
    n_exp: f64,
    phi_deg: f64,
    state: &WheelState,
    geometry: &WheelGeometry,
    soil: &SoilParams,
    quadrature_n: usize,
) -> Result<WheelForces, TerramechError> {
    let table = ContactTable::new(state, geometry, soil, quadrature_n)?;
    if !n_exp.is_finite() || n_exp <= 0.0 {
        return Err(TerramechError::SinkageExponentRange { n_exp });
    }
    if !phi_deg.is_finite() || !(0.0..90.0).contains(&phi_deg) {
        return Err(TerramechError::FrictionAngleRange { phi_deg });
    }
    let forces = table.eval(n_exp, math::tan(math::to_radians(phi_deg)));
    if !forces.vertical_load.is_finite() || !forces.drive_torque.is_finite() {
        return Err(TerramechError::NonFiniteIntegrand { theta: state.entry_angle });
    }
    Ok(forces)
}

/// Fixed quadrature grid over one contact patch.
///
/// Everything that does not depend on the two identified parameters is
/// precomputed per node, so re-evaluating the forward model during
/// identification costs one `exp` per node for the stress power law plus
/// a handful of multiplies.
pub(crate) struct ContactTable {
    /// Simpson weight times h/3 per node.
    weights: Vec<f64>,
    cos_theta: Vec<f64>,
    sin_theta: Vec<f64>,
    /// `ln(r * (cos theta - cos theta_1))`; -inf where the base vanishes.
    ln_base: Vec<f64>,
    /// `1 - exp(-j / K)` per node.
    shear_gain: Vec<f64>,
    sigma_coeff: f64,
    cohesion: f64,
    radius: f64,
    width: f64,
}

impl ContactTable {
    pub(crate) fn new(
        state: &WheelState,
        geometry: &WheelGeometry,
        soil: &SoilParams,
        quadrature_n: usize,
    ) -> Result<Self, TerramechError> {
        geometry.validate()?;
        soil.validate()?;
        state.validate()?;
        if quadrature_n < 2 || quadrature_n % 2 != 0 {
            return Err(TerramechError::BadQuadrature { n: quadrature_n });
        }
        let n = quadrature_n;
        let span = state.entry_angle - state.exit_angle;
        let h = span / n as f64;
        let cos_entry = math::cos(state.entry_angle);
        let sin_entry = math::sin(state.entry_angle);
        let mut weights = Vec::with_capacity(n + 1);
        let mut cos_theta = Vec::with_capacity(n + 1);
        let mut sin_theta = Vec::with_capacity(n + 1);
        let mut ln_base = Vec::with_capacity(n + 1);
        let mut shear_gain = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let theta = state.exit_angle + h * i as f64;
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            weights.push(w * h / 3.0);
            let ct = math::cos(theta);
            let st = math::sin(theta);
            cos_theta.push(ct);
            sin_theta.push(st);
            let base = (geometry.radius * (ct - cos_entry)).max(0.0);
            ln_base.push(math::ln(base));
            let j = (geometry.radius
                * ((state.entry_angle - theta) - (1.0 - state.slip) * (sin_entry - st)))
                .max(0.0);
            shear_gain.push(1.0 - math::exp(-j / soil.shear_modulus));
        }
        Ok(Self {
            weights,
            cos_theta,
            sin_theta,
            ln_base,
            shear_gain,
            sigma_coeff: soil.cohesive_modulus / geometry.width + soil.frictional_modulus,
            cohesion: soil.cohesion,
            radius: geometry.radius,
            width: geometry.width,
        })
    }

    pub(crate) fn eval(&self, n_exp: f64, tan_phi: f64) -> WheelForces {
        let mut load = 0.0;
        let mut torque = 0.0;
        for i in 0..self.weights.len() {
            // exp(N * ln base) is the stress power law; ln base = -inf at a
            // vanishing base gives sigma = 0 exactly.
            let sigma = self.sigma_coeff * math::exp(n_exp * self.ln_base[i]);
            let tau = (self.cohesion + sigma * tan_phi) * self.shear_gain[i];
            let w = self.weights[i];
            load += w * (sigma * self.cos_theta[i] + tau * self.sin_theta[i]);
            torque += w * tau;
        }
        WheelForces {
            vertical_load: load * self.radius * self.width,
            drive_torque: torque * self.radius * self.radius * self.width,
        }
    }
}
