//! Inverse identification of the dominant soil parameters.
//!
//! The forward model is strictly monotone in each identified parameter:
//! with a contact base `r (cos theta - cos theta_1)` well under one meter,
//! raising the sinkage exponent lowers every stress and with it the
//! vertical load, while raising the friction angle raises shear and with
//! it the torque. The solver exploits this with alternating 1-D bisection
//! on (load -> N) and (torque -> phi) until both relative residuals drop
//! below tolerance.

use alloc::vec::Vec;

use super::wheel::ContactTable;
use super::{entry_angle, slip_ratio, SoilParams, TerramechError, WheelGeometry, WheelState};
use crate::math;

/// One telemetry sample of a driven wheel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionSample {
    /// Timestamp, seconds.
    pub t: f64,
    /// Measured vertical load, N.
    pub vertical_load: f64,
    /// Measured drive torque, N·m.
    pub drive_torque: f64,
    /// Wheel angular velocity, rad/s.
    pub angular_velocity: f64,
    /// Vehicle forward speed, m/s.
    pub forward_speed: f64,
    /// Measured sinkage, m.
    pub sinkage: f64,
    /// Terrain class index the wheel was on, when known.
    pub label: Option<usize>,
}

/// Identified dominant parameters for one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentifiedProperties {
    pub n_exp: f64,
    pub phi_deg: f64,
    pub slip: f64,
    pub entry_angle: f64,
    /// Both relative residuals reached the solver tolerance.
    pub converged: bool,
    /// `forward(n_exp, phi_deg) - measured`, N.
    pub residual_load: f64,
    /// `forward(n_exp, phi_deg) - measured`, N·m.
    pub residual_torque: f64,
    pub label: Option<usize>,
    pub t: f64,
}

/// Search box and stop criteria for [`identify_dominant`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub n_min: f64,
    pub n_max: f64,
    pub phi_min_deg: f64,
    pub phi_max_deg: f64,
    /// Relative residual required on both targets.
    pub rel_tol: f64,
    /// Alternating outer iterations before giving up.
    pub max_outer: usize,
    /// Simpson subintervals for the forward model.
    pub quadrature_n: usize,
    /// Rear contact exit angle passed to the forward model, radians.
    pub exit_angle: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_min: 0.05,
            n_max: 2.5,
            phi_min_deg: 0.0,
            phi_max_deg: 60.0,
            rel_tol: 1e-6,
            max_outer: 50,
            quadrature_n: 200,
            exit_angle: 0.0,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<(), TerramechError> {
        if !self.n_min.is_finite() || !self.n_max.is_finite() || self.n_min <= 0.0
            || self.n_min >= self.n_max
        {
            return Err(TerramechError::EmptySolverBox {
                name: "sinkage exponent",
                lo: self.n_min,
                hi: self.n_max,
            });
        }
        if !self.phi_min_deg.is_finite()
            || !self.phi_max_deg.is_finite()
            || self.phi_min_deg < 0.0
            || self.phi_max_deg >= 90.0
            || self.phi_min_deg >= self.phi_max_deg
        {
            return Err(TerramechError::EmptySolverBox {
                name: "friction angle",
                lo: self.phi_min_deg,
                hi: self.phi_max_deg,
            });
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(TerramechError::NonPositive { name: "rel_tol", value: self.rel_tol });
        }
        if self.max_outer == 0 {
            return Err(TerramechError::NonPositive { name: "max_outer", value: 0.0 });
        }
        Ok(())
    }
}

/// Bisection for a monotone scalar function on `[lo, hi]`.
///
/// Returns the abscissa, its function value, and whether the target was
/// bracketed. An unbracketed target clamps to the nearer box edge.
fn bisect_monotone(
    lo: f64,
    hi: f64,
    target: f64,
    increasing: bool,
    rel_stop: f64,
    mut eval: impl FnMut(f64) -> f64,
) -> (f64, f64, bool) {
    let signed = |v: f64| if increasing { v } else { -v };
    let f_lo = eval(lo);
    let f_hi = eval(hi);
    if signed(target) <= signed(f_lo) {
        return (lo, f_lo, false);
    }
    if signed(target) >= signed(f_hi) {
        return (hi, f_hi, false);
    }
    let scale = math::abs(target).max(1e-300);
    let (mut a, mut b) = (lo, hi);
    let mut x = 0.5 * (a + b);
    let mut fx = eval(x);
    for _ in 0..60 {
        if math::abs(fx - target) <= rel_stop * scale {
            break;
        }
        if signed(fx) < signed(target) {
            a = x;
        } else {
            b = x;
        }
        x = 0.5 * (a + b);
        fx = eval(x);
    }
    (x, fx, true)
}

/// Identifies the sinkage exponent and friction angle matching one sample.
///
/// Preconditions (each a hard error): positive measured load, nonnegative
/// torque, a definable slip, and sinkage within `[0, radius)`. A target
/// outside what the search box can produce is not an error; the solver
/// clamps to the box edge and reports `converged = false` with the
/// residuals it reached.
pub fn identify_dominant(
    sample: &InteractionSample,
    geometry: &WheelGeometry,
    soil: &SoilParams,
    config: &SolverConfig,
) -> Result<IdentifiedProperties, TerramechError> {
    config.validate()?;
    if !sample.vertical_load.is_finite() {
        return Err(TerramechError::NonFinite { name: "vertical load" });
    }
    if sample.vertical_load <= 0.0 {
        return Err(TerramechError::NonPositiveLoad { load: sample.vertical_load });
    }
    if !sample.drive_torque.is_finite() {
        return Err(TerramechError::NonFinite { name: "drive torque" });
    }
    if sample.drive_torque < 0.0 {
        return Err(TerramechError::NegativeTorque { torque: sample.drive_torque });
    }
    let slip = slip_ratio(sample.angular_velocity, sample.forward_speed, geometry.slip_radius)?;
    let entry = entry_angle(sample.sinkage, geometry.radius)?;
    let state = WheelState { slip: slip.value, entry_angle: entry, exit_angle: config.exit_angle };
    let table = ContactTable::new(&state, geometry, soil, config.quadrature_n)?;

    let tan_of = |phi_deg: f64| math::tan(math::to_radians(phi_deg));
    let target_load = sample.vertical_load;
    let target_torque = sample.drive_torque;
    // A tighter stop than the outer tolerance so the alternation, not the
    // inner bisection, decides convergence.
    let inner_stop = config.rel_tol / 8.0;

    let mut phi = 0.5 * (config.phi_min_deg + config.phi_max_deg);
    let mut n_exp = 0.5 * (config.n_min + config.n_max);
    let mut converged = false;
    let mut forces = table.eval(n_exp, tan_of(phi));
    for _ in 0..config.max_outer {
        // Load falls as the exponent rises.
        let (n_new, _, _) = bisect_monotone(
            config.n_min,
            config.n_max,
            target_load,
            false,
            inner_stop,
            |n| table.eval(n, tan_of(phi)).vertical_load,
        );
        n_exp = n_new;
        // Torque rises with the friction angle.
        let (phi_new, _, _) = bisect_monotone(
            config.phi_min_deg,
            config.phi_max_deg,
            target_torque,
            true,
            inner_stop,
            |p| table.eval(n_exp, tan_of(p)).drive_torque,
        );
        phi = phi_new;
        forces = table.eval(n_exp, tan_of(phi));
        if !forces.vertical_load.is_finite() || !forces.drive_torque.is_finite() {
            return Err(TerramechError::NonFiniteIntegrand { theta: entry });
        }
        let load_res = math::abs(forces.vertical_load - target_load)
            / math::abs(target_load).max(1e-300);
        let torque_res = math::abs(forces.drive_torque - target_torque)
            / math::abs(target_torque).max(1e-9);
        if load_res <= config.rel_tol && torque_res <= config.rel_tol {
            converged = true;
            break;
        }
    }

    Ok(IdentifiedProperties {
        n_exp,
        phi_deg: phi,
        slip: slip.value,
        entry_angle: entry,
        converged,
        residual_load: forces.vertical_load - target_load,
        residual_torque: forces.drive_torque - target_torque,
        label: sample.label,
        t: sample.t,
    })
}

/// Centered moving average over the measured channels.
///
/// Each output sample averages every input sample within `window_s / 2`
/// seconds of its timestamp. Timestamps and labels pass through untouched;
/// a zero window returns the input as-is.
pub fn moving_average(
    samples: &[InteractionSample],
    window_s: f64,
) -> Result<Vec<InteractionSample>, TerramechError> {
    if !window_s.is_finite() || window_s < 0.0 {
        return Err(TerramechError::NonPositive { name: "window", value: window_s });
    }
    check_monotonic(samples)?;
    if window_s == 0.0 {
        return Ok(samples.to_vec());
    }
    let half = window_s / 2.0;
    let mut out = Vec::with_capacity(samples.len());
    let mut lo = 0usize;
    let mut hi = 0usize;
    for (i, center) in samples.iter().enumerate() {
        while samples[lo].t < center.t - half {
            lo += 1;
        }
        if hi <= i {
            hi = i;
        }
        while hi < samples.len() && samples[hi].t <= center.t + half {
            hi += 1;
        }
        let span = &samples[lo..hi];
        let n = span.len() as f64;
        let mut avg = *center;
        avg.vertical_load = span.iter().map(|s| s.vertical_load).sum::<f64>() / n;
        avg.drive_torque = span.iter().map(|s| s.drive_torque).sum::<f64>() / n;
        avg.angular_velocity = span.iter().map(|s| s.angular_velocity).sum::<f64>() / n;
        avg.forward_speed = span.iter().map(|s| s.forward_speed).sum::<f64>() / n;
        avg.sinkage = span.iter().map(|s| s.sinkage).sum::<f64>() / n;
        out.push(avg);
    }
    Ok(out)
}

/// Keeps the first sample of each `period_s` bucket, measured from the
/// first timestamp.
pub fn downsample_log(
    samples: &[InteractionSample],
    period_s: f64,
) -> Result<Vec<InteractionSample>, TerramechError> {
    if !period_s.is_finite() || period_s <= 0.0 {
        return Err(TerramechError::NonPositive { name: "period", value: period_s });
    }
    check_monotonic(samples)?;
    let mut out = Vec::new();
    let mut next_bucket = f64::NEG_INFINITY;
    for sample in samples {
        if sample.t >= next_bucket {
            out.push(*sample);
            let t0 = samples[0].t;
            let bucket = math::floor((sample.t - t0) / period_s);
            next_bucket = t0 + (bucket + 1.0) * period_s;
        }
    }
    Ok(out)
}

fn check_monotonic(samples: &[InteractionSample]) -> Result<(), TerramechError> {
    for (i, pair) in samples.windows(2).enumerate() {
        if pair[1].t < pair[0].t {
            return Err(TerramechError::NonMonotonicTime { index: i + 1 });
        }
    }
    Ok(())
}
