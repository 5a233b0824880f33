//! Annotation-ratio experiment: how much does full annotation buy?

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    class_proportions, metrics, train_classifier, ClassWeights, ConfusionMatrix, FeatureConfig,
    SegmentationError, TrainConfig,
};
use crate::classes::TerrainClassSet;
use crate::raster::{FeatureMap, LabelImage};

/// One image with both a full and a partial annotation.
#[derive(Debug, Clone)]
pub struct AnnotatedSample {
    pub features: FeatureMap,
    pub full: LabelImage,
    pub partial: LabelImage,
}

/// Train/test corpus for [`annotation_ratio_experiment`].
#[derive(Debug, Clone)]
pub struct Corpus {
    pub class_set: TerrainClassSet,
    pub feature_config: FeatureConfig,
    pub train: Vec<AnnotatedSample>,
    pub test: Vec<AnnotatedSample>,
}

/// Test-split quality after training at one annotation ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub ratio: f64,
    /// Training images that used their full annotation.
    pub full_count: usize,
    pub pixel_accuracy: f64,
    pub mean_iou: f64,
}

/// Retrains the classifier at each annotation ratio and scores the test
/// split against its full annotations.
///
/// A ratio `r` means `round(r * train_count)` training images contribute
/// their full annotation and the rest their partial one. Which images get
/// the full annotation is drawn once from `config.seed`, and the subsets
/// are nested: a higher ratio keeps every fully annotated image of a lower
/// one. Class weights are recomputed from the selected labels at each
/// ratio with the weight constant `weight_c`.
pub fn annotation_ratio_experiment(
    corpus: &Corpus,
    ratios: &[f64],
    config: &TrainConfig,
    weight_c: f64,
) -> Result<Vec<RatioPoint>, SegmentationError> {
    if corpus.train.is_empty() {
        return Err(SegmentationError::EmptyCorpus { split: "train" });
    }
    if corpus.test.is_empty() {
        return Err(SegmentationError::EmptyCorpus { split: "test" });
    }
    for &ratio in ratios {
        if !ratio.is_finite() || !(0.0..=1.0).contains(&ratio) {
            return Err(SegmentationError::BadRatio { ratio });
        }
    }

    let n = corpus.train.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    order.shuffle(&mut rng);

    let classes = corpus.class_set.len();
    let mut points = Vec::with_capacity(ratios.len());
    for &ratio in ratios {
        let full_count = crate::math::round(ratio * n as f64) as usize;
        let mut use_full = vec![false; n];
        for &index in order.iter().take(full_count) {
            use_full[index] = true;
        }
        let labels: Vec<&LabelImage> = corpus
            .train
            .iter()
            .zip(&use_full)
            .map(|(sample, &full)| if full { &sample.full } else { &sample.partial })
            .collect();
        let features: Vec<&FeatureMap> =
            corpus.train.iter().map(|sample| &sample.features).collect();

        let proportions = class_proportions(&labels, classes)?;
        let weights = ClassWeights::from_proportions(&proportions, weight_c)?;
        let (model, _) = train_classifier(
            &features,
            &labels,
            &weights,
            &corpus.class_set,
            &corpus.feature_config,
            config,
        )?;

        let mut cm = ConfusionMatrix::new(classes)?;
        for sample in &corpus.test {
            let probs = model.predict_probabilities(&sample.features)?;
            cm.accumulate(&probs.argmax_labels(), &sample.full)?;
        }
        let m = metrics(&cm)?;
        points.push(RatioPoint {
            ratio,
            full_count,
            pixel_accuracy: m.pixel_accuracy,
            mean_iou: m.mean_iou,
        });
    }
    Ok(points)
}
