//! Terrain mechanical property estimation for wheeled rovers.
//!
//! The crate covers four stages of a perception-to-traversability pipeline:
//!
//! * [`segmentation`]: pixel terrain classification with hand-crafted
//!   texture features, a multinomial logistic model trained with
//!   frequency-weighted cross-entropy, confusion-matrix metrics, and an
//!   annotation-ratio experiment.
//! * [`terramech`]: wheel-soil interaction, a forward pressure-sinkage /
//!   shear model for vertical load and drive torque, inverse identification
//!   of the sinkage exponent and internal friction angle from drive
//!   telemetry, and per-class Gaussian property fitting.
//! * [`inference`]: fusion of class probabilities with the per-class
//!   property model into per-pixel property means and standard deviations,
//!   route sampling, error metrics, and hazard flagging.
//! * [`labeling`]: cross-frame label propagation through depth maps and
//!   camera poses, for densifying sparse manual annotation.
//!
//! Units are SI throughout: meters, Pascals, Newtons, Newton-meters,
//! radians. The one deliberate exception is the internal friction angle,
//! which crosses public APIs in degrees wherever the parameter or field
//! name says `deg`; conversion happens at that boundary.
//!
//! The crate builds without `std` (using `alloc` and `libm`) when the
//! default `std` feature is disabled.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classes;
pub mod inference;
pub mod labeling;
mod math;
pub mod raster;
pub mod segmentation;
pub mod terramech;

pub use classes::TerrainClassSet;
pub use raster::{
    DepthImage, FeatureMap, LabelImage, LogitMap, ProbabilityMap, RgbImage, IGNORE,
};
