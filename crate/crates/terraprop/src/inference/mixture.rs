//! Gaussian mixture moments and density for one soil parameter.
//!
//! At a pixel with class probabilities `p` the parameter follows the
//! mixture `f(x) = sum_i p_i Normal(x; mu_i, sigma_i)`. Its mean is
//! `sum_i p_i mu_i` and its variance `sum_i p_i (mu_i^2 + sigma_i^2) -
//! mean^2`, both exact even for zero-sigma components. The density is
//! only defined when every weighted component has positive sigma.

use alloc::vec::Vec;

use super::InferenceError;
use crate::math;
use crate::terramech::{TerrainParameter, TerrainPropertyModel};

/// Tolerated deviation of a probability vector's sum from one.
pub(crate) const PROBABILITY_SUM_TOL: f64 = 1e-5;

/// Mixture mean and standard deviation at one pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureMoments {
    pub mean: f64,
    pub std_dev: f64,
    /// Roundoff pushed the variance a hair below zero and it was clamped.
    pub clamped: bool,
}

/// Per-class `mu` and `mu^2 + sigma^2` for one parameter, precomputed so
/// per-pixel moment evaluation is a pair of dot products.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    parameter: TerrainParameter,
    mu: Vec<f64>,
    second: Vec<f64>,
}

impl MomentTable {
    pub fn new(model: &TerrainPropertyModel, parameter: TerrainParameter) -> Self {
        let mut mu = Vec::with_capacity(model.len());
        let mut second = Vec::with_capacity(model.len());
        for class in model.classes() {
            let g = class.param(parameter);
            mu.push(g.mean);
            second.push(g.mean * g.mean + g.std_dev * g.std_dev);
        }
        Self { parameter, mu, second }
    }

    pub fn parameter(&self) -> TerrainParameter {
        self.parameter
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// Moments of the mixture weighted by `p`, after validating `p`.
    pub fn moments(&self, p: &[f64]) -> Result<MixtureMoments, InferenceError> {
        check_probabilities(p, self.len())?;
        Ok(self.moments_unchecked(p))
    }

    /// Moments without re-validating `p`. Callers holding an already
    /// validated probability raster use this path; the arithmetic is the
    /// one path shared with [`MomentTable::moments`].
    pub(crate) fn moments_unchecked(&self, p: &[f64]) -> MixtureMoments {
        // Weights are renormalized by their sum so a vector that passes
        // the 1e-5 sum check cannot leak its defect into the variance
        // cancellation below. When the sum is exactly 1.0 this multiplies
        // by 1.0 and changes no bits.
        let mut sum = 0.0;
        for &pi in p {
            sum += pi;
        }
        let inv = 1.0 / sum;
        let mut mean = 0.0;
        let mut second = 0.0;
        for i in 0..p.len() {
            let q = p[i] * inv;
            mean += q * self.mu[i];
            second += q * self.second[i];
        }
        let mut var = second - mean * mean;
        let mut clamped = false;
        if var < 0.0 {
            debug_assert!(var >= -1e-12, "variance cancellation beyond roundoff: {var}");
            var = 0.0;
            clamped = true;
        }
        MixtureMoments { mean, std_dev: math::sqrt(var), clamped }
    }
}

/// Mean and standard deviation of the mixture for one parameter.
pub fn mixture_moments(
    p: &[f64],
    model: &TerrainPropertyModel,
    parameter: TerrainParameter,
) -> Result<MixtureMoments, InferenceError> {
    MomentTable::new(model, parameter).moments(p)
}

/// Mixture density at `x`.
///
/// Every class with positive weight must have positive sigma; a point
/// mass contributes no density and is rejected. Weights are normalized by
/// their sum, so the density integrates to one exactly.
pub fn mixture_pdf(
    p: &[f64],
    model: &TerrainPropertyModel,
    parameter: TerrainParameter,
    x: f64,
) -> Result<f64, InferenceError> {
    check_probabilities(p, model.len())?;
    if !x.is_finite() {
        return Err(InferenceError::NonFinite { name: "x" });
    }
    let sum: f64 = p.iter().sum();
    let mut density = 0.0;
    for (class, &weight) in p.iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        let g = model.classes()[class].param(parameter);
        if g.std_dev == 0.0 {
            return Err(InferenceError::DegenerateComponent { class, weight });
        }
        let z = (x - g.mean) / g.std_dev;
        let norm = 1.0 / (g.std_dev * math::sqrt(2.0 * core::f64::consts::PI));
        density += (weight / sum) * norm * math::exp(-0.5 * z * z);
    }
    Ok(density)
}

pub(crate) fn check_probabilities(p: &[f64], classes: usize) -> Result<(), InferenceError> {
    if p.len() != classes {
        return Err(InferenceError::ClassCountMismatch { got: p.len(), expected: classes });
    }
    let mut sum = 0.0;
    for (index, &value) in p.iter().enumerate() {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(InferenceError::ProbabilityRange { index, value });
        }
        sum += value;
    }
    if math::abs(sum - 1.0) > PROBABILITY_SUM_TOL {
        return Err(InferenceError::ProbabilitySum { sum });
    }
    Ok(())
}
