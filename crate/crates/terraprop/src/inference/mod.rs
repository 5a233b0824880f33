//! Dense terrain property inference from class probabilities.
//!
//! Per-pixel class probabilities and the per-class Gaussian property
//! model combine into a Gaussian mixture at every pixel. Its first two
//! moments become dense mean and uncertainty maps, which route profiles
//! sample by bilinear interpolation. Evaluation helpers compare sampled
//! predictions against in-situ identification, and a hazard screen turns
//! the maps into a coarse traversability bitmask.

mod eval;
mod hazard;
mod maps;
mod mixture;
mod route;

pub use eval::{
    full_scale_error, interval_coverage, DEFAULT_FULL_SCALE_N, DEFAULT_FULL_SCALE_PHI_DEG,
};
pub use hazard::{
    hazard_flags, FlagRaster, HazardSummary, HazardThresholds, FLAG_SLIPPERY, FLAG_SOFT,
    FLAG_UNCERTAIN,
};
pub use maps::{infer_property_maps, infer_property_rows, PropertyMap};
pub use mixture::{mixture_moments, mixture_pdf, MixtureMoments, MomentTable};
pub use route::{predict_route, Route, RoutePoint, RoutePrediction, RoutePredictionRow, WheelTrack};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InferenceError {
    #[error("probability vector has {got} entries, property model has {expected} classes")]
    ClassCountMismatch { got: usize, expected: usize },
    #[error("probability entry {value} at index {index} outside [0, 1]")]
    ProbabilityRange { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1 within 1e-5")]
    ProbabilitySum { sum: f64 },
    #[error("class {class} has zero standard deviation with weight {weight}; a point mass has no density, use mixture moments instead")]
    DegenerateComponent { class: usize, weight: f64 },
    #[error("{name} is {got_width}x{got_height}, expected {width}x{height}")]
    ShapeMismatch { name: &'static str, got_width: usize, got_height: usize, width: usize, height: usize },
    #[error("{name} has {got} entries, expected {expected}")]
    LengthMismatch { name: &'static str, got: usize, expected: usize },
    #[error("route point (row {row}, col {col}) outside raster bounds {width}x{height}")]
    OutOfBounds { row: f64, col: f64, width: usize, height: usize },
    #[error("{name} is empty")]
    EmptyInput { name: &'static str },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} is not finite")]
    NonFinite { name: &'static str },
    #[error("expected a {expected:?} map, got {got:?}")]
    ParameterMismatch {
        expected: crate::terramech::TerrainParameter,
        got: crate::terramech::TerrainParameter,
    },
    #[error("row range {start}..{end} outside raster height {height}")]
    RowRange { start: usize, end: usize, height: usize },
}
