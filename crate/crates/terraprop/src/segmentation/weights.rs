//! Inverse-log-frequency class weights for the training loss.

use alloc::vec;
use alloc::vec::Vec;

use super::SegmentationError;
use crate::math;
use crate::raster::{LabelImage, IGNORE};

/// Per-class loss weights; positive and normalized to sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassWeights {
    beta: Vec<f64>,
}

impl ClassWeights {
    /// Weights each class `k` by `1 / ln(p_k + c)`, normalized to sum 1.
    ///
    /// `proportions` are the per-class shares of scored pixels and must sum
    /// to 1. `c` shifts the log so that rare classes get large but finite
    /// weights; every `p_k + c` must exceed 1 or the log would vanish or
    /// flip the weight's sign.
    pub fn from_proportions(proportions: &[f64], c: f64) -> Result<Self, SegmentationError> {
        if proportions.len() < 2 {
            return Err(SegmentationError::ClassCountMismatch {
                expected: 2,
                got: proportions.len(),
            });
        }
        if !c.is_finite() || c <= 0.0 {
            return Err(SegmentationError::BadConstant { c });
        }
        let mut sum = 0.0;
        for (class, &p) in proportions.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(SegmentationError::ProportionRange { class, value: p });
            }
            sum += p;
        }
        if math::abs(sum - 1.0) > 1e-6 {
            return Err(SegmentationError::ProportionSum { sum });
        }
        let mut raw = Vec::with_capacity(proportions.len());
        for (class, &p) in proportions.iter().enumerate() {
            let shifted = p + c;
            if shifted <= 1.0 {
                return Err(SegmentationError::WeightLogDomain { class, shifted });
            }
            raw.push(1.0 / math::ln(shifted));
        }
        let total: f64 = raw.iter().sum();
        Self::from_betas(raw.iter().map(|w| w / total).collect())
    }

    pub fn from_betas(beta: Vec<f64>) -> Result<Self, SegmentationError> {
        if beta.len() < 2 {
            return Err(SegmentationError::ClassCountMismatch { expected: 2, got: beta.len() });
        }
        let mut sum = 0.0;
        for &b in &beta {
            if !b.is_finite() || b <= 0.0 {
                return Err(SegmentationError::BadWeights { sum: b });
            }
            sum += b;
        }
        if math::abs(sum - 1.0) > 1e-9 {
            return Err(SegmentationError::BadWeights { sum });
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn classes(&self) -> usize {
        self.beta.len()
    }
}

/// Shares of scored pixels per class across a label set.
///
/// Classes absent from the labels get proportion 0; IGNORE pixels are not
/// counted. Errors if nothing is scored or any label is out of range.
pub fn class_proportions(
    labels: &[&LabelImage],
    classes: usize,
) -> Result<Vec<f64>, SegmentationError> {
    let mut counts = vec![0u64; classes];
    for image in labels {
        for &label in image.data() {
            if label == IGNORE {
                continue;
            }
            if usize::from(label) >= classes {
                return Err(SegmentationError::LabelOutOfRange { label, classes });
            }
            counts[usize::from(label)] += 1;
        }
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(SegmentationError::NoScoredPixels);
    }
    Ok(counts.iter().map(|&n| n as f64 / total as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn equal_proportions_give_equal_weights() {
        for k in 2..8 {
            let p = vec![1.0 / k as f64; k];
            let w = ClassWeights::from_proportions(&p, 1.1).unwrap();
            for &b in w.beta() {
                assert_relative_eq!(b, 1.0 / k as f64, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn imbalanced_two_class_case() {
        let w = ClassWeights::from_proportions(&[0.9, 0.1], 1.1).unwrap();
        assert_relative_eq!(w.beta()[0], 0.20825593081144253, epsilon = 1e-12);
        assert_relative_eq!(w.beta()[1], 0.7917440691885574, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            ClassWeights::from_proportions(&[0.6, 0.6], 1.1),
            Err(SegmentationError::ProportionSum { .. })
        ));
        assert!(matches!(
            ClassWeights::from_proportions(&[-0.1, 1.1], 1.1),
            Err(SegmentationError::ProportionRange { class: 0, .. })
        ));
        assert!(matches!(
            ClassWeights::from_proportions(&[0.9, 0.1], 0.0),
            Err(SegmentationError::BadConstant { .. })
        ));
        // c = 0.5 leaves ln(p + c) <= 0 for the rare class.
        assert!(matches!(
            ClassWeights::from_proportions(&[0.9, 0.1], 0.5),
            Err(SegmentationError::WeightLogDomain { class: 1, .. })
        ));
        // ln(p + c) = ln(1) vanishes exactly.
        assert!(matches!(
            ClassWeights::from_proportions(&[0.0, 1.0], 1.0),
            Err(SegmentationError::WeightLogDomain { class: 0, .. })
        ));
    }

    #[test]
    fn proportions_count_scored_pixels_only() {
        let a = LabelImage::from_raw(2, 2, vec![0, 0, 1, IGNORE]).unwrap();
        let b = LabelImage::from_raw(2, 1, vec![1, IGNORE]).unwrap();
        let p = class_proportions(&[&a, &b], 3).unwrap();
        assert_relative_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_relative_eq!(p[1], 0.5, epsilon = 1e-15);
        assert_eq!(p[2], 0.0);

        let empty = LabelImage::new(2, 2).unwrap();
        assert!(matches!(
            class_proportions(&[&empty], 3),
            Err(SegmentationError::NoScoredPixels)
        ));
        let bad = LabelImage::from_raw(1, 1, vec![3]).unwrap();
        assert!(matches!(
            class_proportions(&[&bad], 3),
            Err(SegmentationError::LabelOutOfRange { label: 3, classes: 3 })
        ));
    }
}
