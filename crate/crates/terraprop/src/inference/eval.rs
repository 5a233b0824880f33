//! Route-level accuracy metrics against in-situ identification.

use super::InferenceError;
use crate::math;

/// Default full-scale denominator for the sinkage exponent, spanning the
/// identification search box [0, 2].
pub const DEFAULT_FULL_SCALE_N: f64 = 2.0;

/// Default full-scale denominator for the friction angle, spanning the
/// identification search box [0 deg, 60 deg].
pub const DEFAULT_FULL_SCALE_PHI_DEG: f64 = 60.0;

/// Mean absolute error as a percentage of a full-scale range.
///
/// `mean_i |pred_i - truth_i| / full_scale * 100`.
pub fn full_scale_error(
    pred: &[f64],
    truth: &[f64],
    full_scale: f64,
) -> Result<f64, InferenceError> {
    if pred.is_empty() {
        return Err(InferenceError::EmptyInput { name: "prediction series" });
    }
    if pred.len() != truth.len() {
        return Err(InferenceError::LengthMismatch {
            name: "truth series",
            got: truth.len(),
            expected: pred.len(),
        });
    }
    if !full_scale.is_finite() || full_scale <= 0.0 {
        return Err(InferenceError::NonPositive { name: "full_scale", value: full_scale });
    }
    let mut sum = 0.0;
    for (&p, &t) in pred.iter().zip(truth) {
        if !p.is_finite() || !t.is_finite() {
            return Err(InferenceError::NonFinite { name: "series entry" });
        }
        sum += math::abs(p - t);
    }
    Ok(sum / pred.len() as f64 / full_scale * 100.0)
}

/// Fraction of points whose truth lies within `multiplier` standard
/// deviations of the predicted mean, boundary inclusive.
pub fn interval_coverage(
    pred_means: &[f64],
    pred_stds: &[f64],
    truth: &[f64],
    multiplier: f64,
) -> Result<f64, InferenceError> {
    if pred_means.is_empty() {
        return Err(InferenceError::EmptyInput { name: "prediction series" });
    }
    if pred_stds.len() != pred_means.len() {
        return Err(InferenceError::LengthMismatch {
            name: "std series",
            got: pred_stds.len(),
            expected: pred_means.len(),
        });
    }
    if truth.len() != pred_means.len() {
        return Err(InferenceError::LengthMismatch {
            name: "truth series",
            got: truth.len(),
            expected: pred_means.len(),
        });
    }
    if !multiplier.is_finite() || multiplier <= 0.0 {
        return Err(InferenceError::NonPositive { name: "multiplier", value: multiplier });
    }
    let mut inside = 0usize;
    for i in 0..pred_means.len() {
        let (mu, sigma, t) = (pred_means[i], pred_stds[i], truth[i]);
        if !mu.is_finite() || !sigma.is_finite() || !t.is_finite() {
            return Err(InferenceError::NonFinite { name: "series entry" });
        }
        if sigma < 0.0 {
            return Err(InferenceError::NonPositive { name: "std entry", value: sigma });
        }
        if math::abs(t - mu) <= multiplier * sigma {
            inside += 1;
        }
    }
    Ok(inside as f64 / pred_means.len() as f64)
}
