//! Multinomial logistic pixel classifier.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::loss::{softmax_into, PROB_FLOOR};
use super::{ClassWeights, FeatureConfig, SegmentationError};
use crate::classes::TerrainClassSet;
use crate::math;
use crate::raster::{FeatureMap, LabelImage, ProbabilityMap, IGNORE};

/// Linear softmax model over per-pixel features.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelClassifier {
    class_set: TerrainClassSet,
    feature_config: FeatureConfig,
    features: usize,
    /// `classes x (features + 1)` row-major, bias last in each row.
    weights: Vec<f64>,
}

impl PixelClassifier {
    pub fn new(
        class_set: TerrainClassSet,
        feature_config: FeatureConfig,
        features: usize,
        weights: Vec<f64>,
    ) -> Result<Self, SegmentationError> {
        if features == 0 {
            return Err(SegmentationError::FeatureCountMismatch { expected: 1, got: 0 });
        }
        let expected = class_set.len() * (features + 1);
        if weights.len() != expected {
            return Err(SegmentationError::FeatureCountMismatch {
                expected,
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(SegmentationError::NonFinite { what: "classifier weight" });
        }
        Ok(Self { class_set, feature_config, features, weights })
    }

    pub fn zeroed(class_set: TerrainClassSet, feature_config: FeatureConfig, features: usize) -> Self {
        let weights = vec![0.0; class_set.len() * (features + 1)];
        Self { class_set, feature_config, features, weights }
    }

    pub fn class_set(&self) -> &TerrainClassSet {
        &self.class_set
    }

    pub fn feature_config(&self) -> &FeatureConfig {
        &self.feature_config
    }

    pub fn classes(&self) -> usize {
        self.class_set.len()
    }

    pub fn features(&self) -> usize {
        self.features
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    fn logits_into(&self, pixel: &[f64], out: &mut [f64]) {
        let stride = self.features + 1;
        for (k, o) in out.iter_mut().enumerate() {
            let row = &self.weights[k * stride..(k + 1) * stride];
            let mut acc = row[self.features];
            for (w, v) in row[..self.features].iter().zip(pixel) {
                acc += w * v;
            }
            *o = acc;
        }
    }

    /// Softmax class probabilities for every pixel of `features`.
    pub fn predict_probabilities(
        &self,
        features: &FeatureMap,
    ) -> Result<ProbabilityMap, SegmentationError> {
        if features.features() != self.features {
            return Err(SegmentationError::FeatureCountMismatch {
                expected: self.features,
                got: features.features(),
            });
        }
        let (w, h, k) = (features.width(), features.height(), self.classes());
        let mut data = vec![0.0; w * h * k];
        let mut logits = vec![0.0; k];
        for y in 0..h {
            for x in 0..w {
                self.logits_into(features.pixel(x, y), &mut logits);
                softmax_into(&logits, &mut data[(y * w + x) * k..(y * w + x + 1) * k]);
            }
        }
        Ok(ProbabilityMap::from_raw(w, h, k, data)?)
    }
}

/// Gradient-descent schedule for [`train_classifier`].
///
/// The learning rate for epoch `e` is `learning_rate * decay^e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub decay: f64,
    pub epochs: usize,
    /// Seeds subset selection in the annotation-ratio experiment; plain
    /// training is deterministic regardless.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self { learning_rate: 1e-3, decay: 0.96, epochs: 300, seed: 0 }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<(), SegmentationError> {
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(SegmentationError::BadHyperparameter {
                name: "learning_rate",
                value: self.learning_rate,
            });
        }
        if !self.decay.is_finite() || self.decay <= 0.0 || self.decay > 1.0 {
            return Err(SegmentationError::BadHyperparameter { name: "decay", value: self.decay });
        }
        Ok(())
    }
}

/// Per-epoch loss curve and any non-fatal observations from training.
#[derive(Debug, Clone, Default)]
pub struct TrainReport {
    /// Loss evaluated on the full batch at the start of each epoch.
    pub epoch_losses: Vec<f64>,
    pub warnings: Vec<String>,
}

impl TrainReport {
    pub fn final_loss(&self) -> Option<f64> {
        self.epoch_losses.last().copied()
    }
}

/// Full-batch gradient descent from zero-initialized weights.
///
/// Every scored pixel across all images forms one batch; the loss is the
/// class-weighted cross-entropy. Deterministic: identical inputs produce
/// bit-identical classifiers.
pub fn train_classifier(
    features: &[&FeatureMap],
    labels: &[&LabelImage],
    class_weights: &ClassWeights,
    class_set: &TerrainClassSet,
    feature_config: &FeatureConfig,
    config: &TrainConfig,
) -> Result<(PixelClassifier, TrainReport), SegmentationError> {
    config.validate()?;
    if features.len() != labels.len() {
        return Err(SegmentationError::SampleCountMismatch {
            count: features.len(),
            other: labels.len(),
        });
    }
    if features.is_empty() {
        return Err(SegmentationError::EmptyCorpus { split: "training" });
    }
    let classes = class_set.len();
    if class_weights.classes() != classes {
        return Err(SegmentationError::ClassCountMismatch {
            expected: classes,
            got: class_weights.classes(),
        });
    }
    let feature_count = features[0].features();

    // Flatten scored pixels: feature vector plus bias, truth, truth weight.
    let stride = feature_count + 1;
    let mut xs: Vec<f64> = Vec::new();
    let mut truths: Vec<u8> = Vec::new();
    for (fm, lm) in features.iter().zip(labels) {
        if fm.features() != feature_count {
            return Err(SegmentationError::FeatureCountMismatch {
                expected: feature_count,
                got: fm.features(),
            });
        }
        if fm.width() != lm.width() || fm.height() != lm.height() {
            return Err(SegmentationError::ShapeMismatch {
                a_width: fm.width(),
                a_height: fm.height(),
                b_width: lm.width(),
                b_height: lm.height(),
            });
        }
        for y in 0..fm.height() {
            for x in 0..fm.width() {
                let label = lm.at(x, y);
                if label == IGNORE {
                    continue;
                }
                if usize::from(label) >= classes {
                    return Err(SegmentationError::LabelOutOfRange { label, classes });
                }
                xs.extend_from_slice(fm.pixel(x, y));
                xs.push(1.0);
                truths.push(label);
            }
        }
    }
    let scored = truths.len();
    if scored == 0 {
        return Err(SegmentationError::NoScoredPixels);
    }
    if scored < classes {
        return Err(SegmentationError::TooFewPixels { scored, classes });
    }

    let mut report = TrainReport::default();
    let mut present = vec![false; classes];
    for &t in &truths {
        present[usize::from(t)] = true;
    }
    let present_count = present.iter().filter(|&&p| p).count();
    if present_count < 2 {
        let only = present.iter().position(|&p| p).unwrap_or(0);
        report.warnings.push(alloc::format!(
            "training labels contain only class {} ({})",
            only,
            class_set.name(only).unwrap_or("?")
        ));
    }

    let mut weights = vec![0.0f64; classes * stride];
    let mut grad = vec![0.0f64; classes * stride];
    let mut logits = vec![0.0f64; classes];
    let mut probs = vec![0.0f64; classes];
    let inv_scored = 1.0 / scored as f64;
    let beta = class_weights.beta();

    for epoch in 0..config.epochs {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut loss = 0.0;
        for (px, &truth) in truths.iter().enumerate() {
            let x = &xs[px * stride..(px + 1) * stride];
            for k in 0..classes {
                let row = &weights[k * stride..(k + 1) * stride];
                let mut acc = 0.0;
                for (w, v) in row.iter().zip(x) {
                    acc += w * v;
                }
                logits[k] = acc;
            }
            softmax_into(&logits, &mut probs);
            let truth = usize::from(truth);
            let b = beta[truth];
            let p_truth = if probs[truth] < PROB_FLOOR { PROB_FLOOR } else { probs[truth] };
            loss -= b * math::ln(p_truth) * inv_scored;
            for k in 0..classes {
                let coef = b * (probs[k] - if k == truth { 1.0 } else { 0.0 }) * inv_scored;
                let row = &mut grad[k * stride..(k + 1) * stride];
                for (g, v) in row.iter_mut().zip(x) {
                    *g += coef * v;
                }
            }
        }
        if !loss.is_finite() {
            return Err(SegmentationError::Diverged { epoch, loss });
        }
        report.epoch_losses.push(loss);
        let lr = config.learning_rate * math::powf(config.decay, epoch as f64);
        for (w, g) in weights.iter_mut().zip(&grad) {
            *w -= lr * g;
        }
    }

    let classifier =
        PixelClassifier::new(class_set.clone(), *feature_config, feature_count, weights)?;
    Ok((classifier, report))
}
