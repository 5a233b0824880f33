//! Pixel terrain classification.
//!
//! Training pairs hand-crafted texture features with a multinomial logistic
//! model. The loss is cross-entropy weighted per class by inverse log
//! frequency, so rare classes are not drowned out by common ones, and
//! pixels labeled [`IGNORE`](crate::raster::IGNORE) never contribute.
//! Evaluation reports IoU, recall, and pixel accuracy from a confusion
//! matrix. The annotation-ratio experiment retrains the classifier while
//! sweeping the fraction of fully annotated images and measures the payoff
//! on a fully annotated test split.

mod classifier;
mod experiment;
mod features;
mod loss;
mod metrics;
mod weights;

pub use classifier::{train_classifier, PixelClassifier, TrainConfig, TrainReport};
pub use experiment::{annotation_ratio_experiment, AnnotatedSample, Corpus, RatioPoint};
pub use features::{extract_features, FeatureConfig, FEATURES_PER_PIXEL};
pub use loss::{
    softmax, weighted_cross_entropy, weighted_cross_entropy_gradient, PROB_FLOOR,
};
pub use metrics::{metrics, ConfusionMatrix, SegMetrics};
pub use weights::{class_proportions, ClassWeights};

use crate::raster::RasterError;
use alloc::string::String;

#[derive(Debug, thiserror::Error)]
pub enum SegmentationError {
    #[error("class proportions sum to {sum}, expected 1")]
    ProportionSum { sum: f64 },
    #[error("class {class} proportion {value} is outside [0, 1]")]
    ProportionRange { class: usize, value: f64 },
    #[error("weight constant {c} must be finite and positive")]
    BadConstant { c: f64 },
    #[error("ln({shifted}) for class {class} is not positive; raise the weight constant")]
    WeightLogDomain { class: usize, shifted: f64 },
    #[error("weights must be positive and sum to 1, got sum {sum}")]
    BadWeights { sum: f64 },
    #[error("expected {expected} classes, got {got}")]
    ClassCountMismatch { expected: usize, got: usize },
    #[error("expected {expected} features, got {got}")]
    FeatureCountMismatch { expected: usize, got: usize },
    #[error("raster shapes differ: {a_width}x{a_height} vs {b_width}x{b_height}")]
    ShapeMismatch { a_width: usize, a_height: usize, b_width: usize, b_height: usize },
    #[error("label {label} exceeds class count {classes}")]
    LabelOutOfRange { label: u8, classes: usize },
    #[error("no scored pixels (all labels are IGNORE)")]
    NoScoredPixels,
    #[error("{scored} scored pixels cannot cover {classes} classes")]
    TooFewPixels { scored: usize, classes: usize },
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("training diverged at epoch {epoch} (loss {loss})")]
    Diverged { epoch: usize, loss: f64 },
    #[error("hyperparameter {name} = {value} is invalid")]
    BadHyperparameter { name: &'static str, value: f64 },
    #[error("annotation ratio {ratio} is outside [0, 1]")]
    BadRatio { ratio: f64 },
    #[error("corpus has no {split} samples")]
    EmptyCorpus { split: &'static str },
    #[error("{count} feature maps but {other} label images")]
    SampleCountMismatch { count: usize, other: usize },
    #[error("prediction contains IGNORE at a pixel scored by the truth")]
    PredictionIgnored,
    #[error("sample {index}: {source}")]
    BadSample { index: usize, source: RasterError },
    #[error(transparent)]
    Raster(#[from] RasterError),
    #[error("{0}")]
    Other(String),
}
