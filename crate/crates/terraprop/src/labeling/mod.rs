//! Semi-automatic label propagation between calibrated RGB-D frames.
//!
//! A handful of carefully annotated frames is stretched across a whole
//! traverse: labeled pixels are lifted to 3D with the source depth image,
//! moved through the pose pair, projected into the destination frame, and
//! written wherever the destination depth confirms the point is actually
//! the surface seen there. Everything else stays unlabeled.

mod camera;
mod pose;
mod propagate;

pub use camera::{CameraModel, Projection, MIN_PROJECTION_DEPTH};
pub use pose::{transform_between, Pose};
pub use propagate::{propagate_labels, PropagationStats, DEFAULT_Z_TOL};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabelingError {
    #[error("intrinsic {name} = {value} is invalid")]
    BadIntrinsics { name: &'static str, value: f64 },
    #[error("depth {depth} is not usable (must be finite and > 0)")]
    InvalidDepth { depth: f64 },
    #[error("pixel ({u}, {v}) outside a {width}x{height} image")]
    PixelOutOfBounds { u: f64, v: f64, width: usize, height: usize },
    #[error("rotation is not orthonormal (defect {defect:e})")]
    NotOrthonormal { defect: f64 },
    #[error("rotation determinant {det} is not +1 (reflection or scale)")]
    BadDeterminant { det: f64 },
    #[error("quaternion norm {norm} too far from 1")]
    NotUnitQuaternion { norm: f64 },
    #[error("{name} is not finite")]
    NonFinite { name: &'static str },
    #[error("{name} is {got_width}x{got_height}, expected {width}x{height}")]
    ShapeMismatch { name: &'static str, got_width: usize, got_height: usize, width: usize, height: usize },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
}
