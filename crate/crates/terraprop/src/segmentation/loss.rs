//! Weighted softmax cross-entropy over label rasters.

use alloc::vec;
use alloc::vec::Vec;

use super::{ClassWeights, SegmentationError};
use crate::math;
use crate::raster::{LabelImage, LogitMap, IGNORE};

/// Floor applied to probabilities before taking the log.
pub const PROB_FLOOR: f64 = 1e-12;

/// Numerically stable softmax of one logit vector.
pub fn softmax(logits: &[f64]) -> Result<Vec<f64>, SegmentationError> {
    if logits.iter().any(|v| !v.is_finite()) {
        return Err(SegmentationError::NonFinite { what: "logit" });
    }
    let mut out = vec![0.0; logits.len()];
    softmax_into(logits, &mut out);
    Ok(out)
}

/// Caller guarantees finite logits and `out.len() == logits.len()`.
pub(crate) fn softmax_into(logits: &[f64], out: &mut [f64]) {
    let mut max = f64::NEG_INFINITY;
    for &v in logits {
        if v > max {
            max = v;
        }
    }
    let mut sum = 0.0;
    for (o, &v) in out.iter_mut().zip(logits) {
        let e = math::exp(v - max);
        *o = e;
        sum += e;
    }
    for o in out.iter_mut() {
        *o /= sum;
    }
}

fn check_pair(
    logits: &LogitMap,
    labels: &LabelImage,
    weights: &ClassWeights,
) -> Result<(), SegmentationError> {
    if logits.width() != labels.width() || logits.height() != labels.height() {
        return Err(SegmentationError::ShapeMismatch {
            a_width: logits.width(),
            a_height: logits.height(),
            b_width: labels.width(),
            b_height: labels.height(),
        });
    }
    if logits.classes() != weights.classes() {
        return Err(SegmentationError::ClassCountMismatch {
            expected: weights.classes(),
            got: logits.classes(),
        });
    }
    Ok(())
}

/// Mean weighted cross-entropy over the scored (non-IGNORE) pixels.
pub fn weighted_cross_entropy(
    logits: &LogitMap,
    labels: &LabelImage,
    weights: &ClassWeights,
) -> Result<f64, SegmentationError> {
    let (loss, _) = loss_and_gradient(logits, labels, weights, false)?;
    Ok(loss)
}

/// Gradient of [`weighted_cross_entropy`] with respect to the logits.
///
/// IGNORE pixels get a zero gradient. The returned map shares the logits'
/// layout.
pub fn weighted_cross_entropy_gradient(
    logits: &LogitMap,
    labels: &LabelImage,
    weights: &ClassWeights,
) -> Result<LogitMap, SegmentationError> {
    let (_, grad) = loss_and_gradient(logits, labels, weights, true)?;
    Ok(grad.expect("gradient requested"))
}

fn loss_and_gradient(
    logits: &LogitMap,
    labels: &LabelImage,
    weights: &ClassWeights,
    want_gradient: bool,
) -> Result<(f64, Option<LogitMap>), SegmentationError> {
    check_pair(logits, labels, weights)?;
    let classes = logits.classes();
    let scored = labels.scored_pixels();
    if scored == 0 {
        return Err(SegmentationError::NoScoredPixels);
    }

    let mut grad = if want_gradient {
        Some(LogitMap::zeroed(logits.width(), logits.height(), classes)?)
    } else {
        None
    };
    let inv_scored = 1.0 / scored as f64;
    let mut probs = vec![0.0; classes];
    let mut loss = 0.0;
    for y in 0..logits.height() {
        for x in 0..logits.width() {
            let label = labels.at(x, y);
            if label == IGNORE {
                continue;
            }
            let truth = usize::from(label);
            if truth >= classes {
                return Err(SegmentationError::LabelOutOfRange { label, classes });
            }
            softmax_into(logits.pixel(x, y), &mut probs);
            let beta = weights.beta()[truth];
            let p_truth = if probs[truth] < PROB_FLOOR { PROB_FLOOR } else { probs[truth] };
            loss -= beta * math::ln(p_truth) * inv_scored;
            if let Some(g) = grad.as_mut() {
                let gp = g.pixel_mut(x, y);
                for k in 0..classes {
                    let indicator = if k == truth { 1.0 } else { 0.0 };
                    gp[k] = beta * (probs[k] - indicator) * inv_scored;
                }
            }
        }
    }
    Ok((loss, grad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_class_weights() -> ClassWeights {
        ClassWeights::from_betas(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn uniform_logits_single_pixel() {
        let logits = LogitMap::from_raw(1, 1, 2, vec![0.0, 0.0]).unwrap();
        let labels = LabelImage::from_raw(1, 1, vec![0]).unwrap();
        let loss = weighted_cross_entropy(&logits, &labels, &two_class_weights()).unwrap();
        // beta * ln 2 with beta = 0.5
        assert_relative_eq!(loss, 0.34657359027997264, epsilon = 1e-15);
    }

    #[test]
    fn confident_correct_prediction_costs_nothing() {
        let logits = LogitMap::from_raw(1, 1, 2, vec![50.0, 0.0]).unwrap();
        let labels = LabelImage::from_raw(1, 1, vec![0]).unwrap();
        let loss = weighted_cross_entropy(&logits, &labels, &two_class_weights()).unwrap();
        assert!(loss >= 0.0 && loss <= 1e-12, "loss {loss}");
    }

    #[test]
    fn ignore_pixels_do_not_move_the_loss() {
        let weights = two_class_weights();
        let labels_a = LabelImage::from_raw(2, 1, vec![0, IGNORE]).unwrap();
        let logits_a = LogitMap::from_raw(2, 1, 2, vec![0.3, -0.2, 5.0, -7.0]).unwrap();
        let logits_b = LogitMap::from_raw(2, 1, 2, vec![0.3, -0.2, -100.0, 3.0]).unwrap();
        let la = weighted_cross_entropy(&logits_a, &labels_a, &weights).unwrap();
        let lb = weighted_cross_entropy(&logits_b, &labels_a, &weights).unwrap();
        assert_eq!(la, lb);

        let grad = weighted_cross_entropy_gradient(&logits_a, &labels_a, &weights).unwrap();
        assert_eq!(grad.pixel(1, 0), &[0.0, 0.0]);
    }

    #[test]
    fn all_ignore_is_an_error() {
        let logits = LogitMap::zeroed(2, 2, 2).unwrap();
        let labels = LabelImage::new(2, 2).unwrap();
        assert!(matches!(
            weighted_cross_entropy(&logits, &labels, &two_class_weights()),
            Err(SegmentationError::NoScoredPixels)
        ));
    }

    #[test]
    fn shape_and_class_mismatches_are_rejected() {
        let logits = LogitMap::zeroed(2, 2, 2).unwrap();
        let labels = LabelImage::new(2, 3).unwrap();
        assert!(matches!(
            weighted_cross_entropy(&logits, &labels, &two_class_weights()),
            Err(SegmentationError::ShapeMismatch { .. })
        ));
        let labels = LabelImage::from_raw(2, 2, vec![0, 1, 2, 0]).unwrap();
        assert!(matches!(
            weighted_cross_entropy(&logits, &labels, &two_class_weights()),
            Err(SegmentationError::LabelOutOfRange { label: 2, classes: 2 })
        ));
    }

    #[test]
    fn gradient_matches_central_differences() {
        let weights = ClassWeights::from_betas(vec![0.2, 0.5, 0.3]).unwrap();
        let base = vec![
            0.4, -1.2, 0.7, //
            2.1, 0.0, -0.3, //
            -0.8, 0.9, 0.1, //
            0.0, 0.0, 0.0,
        ];
        let labels = LabelImage::from_raw(2, 2, vec![0, 2, IGNORE, 1]).unwrap();
        let logits = LogitMap::from_raw(2, 2, 3, base.clone()).unwrap();
        let grad = weighted_cross_entropy_gradient(&logits, &labels, &weights).unwrap();

        let h = 1e-6;
        for i in 0..base.len() {
            let mut plus = base.clone();
            plus[i] += h;
            let mut minus = base.clone();
            minus[i] -= h;
            let lp = weighted_cross_entropy(
                &LogitMap::from_raw(2, 2, 3, plus).unwrap(),
                &labels,
                &weights,
            )
            .unwrap();
            let lm = weighted_cross_entropy(
                &LogitMap::from_raw(2, 2, 3, minus).unwrap(),
                &labels,
                &weights,
            )
            .unwrap();
            let fd = (lp - lm) / (2.0 * h);
            let an = grad.data()[i];
            assert!(
                (fd - an).abs() <= 1e-7 + 1e-5 * an.abs(),
                "entry {i}: finite diff {fd} vs analytic {an}"
            );
        }
    }

    #[test]
    fn softmax_handles_plain_cases() {
        let p = softmax(&[0.0, (3.0f64).ln()]).unwrap();
        assert_relative_eq!(p[0], 0.25, epsilon = 1e-15);
        assert_relative_eq!(p[1], 0.75, epsilon = 1e-15);
        assert!(matches!(
            softmax(&[f64::INFINITY, 0.0]),
            Err(SegmentationError::NonFinite { .. })
        ));
    }
}
