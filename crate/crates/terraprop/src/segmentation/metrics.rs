//! Confusion-matrix evaluation of predicted label rasters.

use alloc::vec;
use alloc::vec::Vec;

use super::SegmentationError;
use crate::raster::{LabelImage, IGNORE};

/// Counts of (truth, prediction) pairs over scored pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    classes: usize,
    /// Row-major, truth outermost: `counts[truth * classes + pred]`.
    counts: Vec<u64>,
}

impl ConfusionMatrix {
    pub fn new(classes: usize) -> Result<Self, SegmentationError> {
        if classes < 2 {
            return Err(SegmentationError::ClassCountMismatch { expected: 2, got: classes });
        }
        Ok(Self { classes, counts: vec![0; classes * classes] })
    }

    pub fn from_labels(
        prediction: &LabelImage,
        truth: &LabelImage,
        classes: usize,
    ) -> Result<Self, SegmentationError> {
        let mut cm = Self::new(classes)?;
        cm.accumulate(prediction, truth)?;
        Ok(cm)
    }

    /// Adds one prediction/truth pair. Pixels whose truth is IGNORE are
    /// skipped; a prediction of IGNORE at a scored pixel is an error.
    pub fn accumulate(
        &mut self,
        prediction: &LabelImage,
        truth: &LabelImage,
    ) -> Result<(), SegmentationError> {
        if prediction.width() != truth.width() || prediction.height() != truth.height() {
            return Err(SegmentationError::ShapeMismatch {
                a_width: prediction.width(),
                a_height: prediction.height(),
                b_width: truth.width(),
                b_height: truth.height(),
            });
        }
        for (&p, &t) in prediction.data().iter().zip(truth.data()) {
            if t == IGNORE {
                continue;
            }
            if usize::from(t) >= self.classes {
                return Err(SegmentationError::LabelOutOfRange {
                    label: t,
                    classes: self.classes,
                });
            }
            if p == IGNORE {
                return Err(SegmentationError::PredictionIgnored);
            }
            if usize::from(p) >= self.classes {
                return Err(SegmentationError::LabelOutOfRange {
                    label: p,
                    classes: self.classes,
                });
            }
            self.counts[usize::from(t) * self.classes + usize::from(p)] += 1;
        }
        Ok(())
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn count(&self, truth: usize, prediction: usize) -> u64 {
        self.counts[truth * self.classes + prediction]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// IoU, recall, and accuracy derived from a [`ConfusionMatrix`].
///
/// A class with an empty union (absent from both truth and prediction) has
/// no defined IoU; such classes are `None` here and listed in
/// `absent_classes`. `mean_iou` averages the defined values only, while
/// `mean_iou_all_classes` divides the same sum by the full class count.
#[derive(Debug, Clone, PartialEq)]
pub struct SegMetrics {
    pub per_class_iou: Vec<Option<f64>>,
    pub per_class_recall: Vec<Option<f64>>,
    pub mean_iou: f64,
    pub mean_iou_all_classes: f64,
    pub pixel_accuracy: f64,
    pub absent_classes: Vec<usize>,
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<SegMetrics, SegmentationError> {
    let total = cm.total();
    if total == 0 {
        return Err(SegmentationError::NoScoredPixels);
    }
    let k = cm.classes();
    let mut per_class_iou = Vec::with_capacity(k);
    let mut per_class_recall = Vec::with_capacity(k);
    let mut absent = Vec::new();
    let mut iou_sum = 0.0;
    let mut iou_defined = 0usize;
    let mut diagonal = 0u64;
    for class in 0..k {
        let tp = cm.count(class, class);
        diagonal += tp;
        let truth_total: u64 = (0..k).map(|p| cm.count(class, p)).sum();
        let pred_total: u64 = (0..k).map(|t| cm.count(t, class)).sum();
        let union = truth_total + pred_total - tp;
        if union == 0 {
            absent.push(class);
            per_class_iou.push(None);
        } else {
            let iou = tp as f64 / union as f64;
            iou_sum += iou;
            iou_defined += 1;
            per_class_iou.push(Some(iou));
        }
        per_class_recall.push(if truth_total == 0 {
            None
        } else {
            Some(tp as f64 / truth_total as f64)
        });
    }
    debug_assert!(iou_defined > 0, "total > 0 implies a nonempty union somewhere");
    Ok(SegMetrics {
        per_class_iou,
        per_class_recall,
        mean_iou: iou_sum / iou_defined as f64,
        mean_iou_all_classes: iou_sum / k as f64,
        pixel_accuracy: diagonal as f64 / total as f64,
        absent_classes: absent,
    })
}
