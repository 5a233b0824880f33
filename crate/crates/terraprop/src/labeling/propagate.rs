//! Label transport from an annotated frame into an unlabeled one.

use super::camera::CameraModel;
use super::pose::{transform_between, Pose};
use super::LabelingError;
use crate::raster::{DepthImage, LabelImage, IGNORE};

/// Default depth agreement tolerance, m. Matches typical RGB-D noise in
/// the 1 m to 3 m working range.
pub const DEFAULT_Z_TOL: f64 = 0.03;

/// Where each labeled source pixel ended up.
///
/// `labeled` always equals the sum of the other four counters: every
/// labeled source pixel lands in exactly one bucket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PropagationStats {
    /// Source pixels carrying a label.
    pub labeled: usize,
    /// Passed every check. Collision losers still count; the written
    /// pixel count can be smaller when several sources land together.
    pub propagated: usize,
    /// Depth disagreed with the destination surface by more than the
    /// tolerance (typically the point is hidden behind it).
    pub occluded: usize,
    /// Projected behind the camera or outside the destination image.
    pub out_of_view: usize,
    /// Missing depth measurement at the source or destination pixel.
    pub invalid_depth: usize,
}

/// Carries source labels into the destination frame.
///
/// Each labeled source pixel with valid depth is back-projected, moved
/// through `src_pose` and `dst_pose`, and projected onto the destination
/// image. The label is written to the nearest pixel when the destination
/// depth there confirms the point within `z_tol` meters. Collisions keep
/// the nearest point; exact depth ties keep the earliest source pixel in
/// row-major order, so the result is independent of any parallel
/// partitioning of the source. Untouched pixels stay `IGNORE`.
pub fn propagate_labels(
    src_labels: &LabelImage,
    src_depth: &DepthImage,
    src_pose: &Pose,
    dst_pose: &Pose,
    dst_depth: &DepthImage,
    camera: &CameraModel,
    z_tol: f64,
) -> Result<(LabelImage, PropagationStats), LabelingError> {
    if !z_tol.is_finite() || z_tol <= 0.0 {
        return Err(LabelingError::NonPositive { name: "z_tol", value: z_tol });
    }
    let (w, h) = (camera.width, camera.height);
    for (name, gw, gh) in [
        ("source labels", src_labels.width(), src_labels.height()),
        ("source depth", src_depth.width(), src_depth.height()),
        ("destination depth", dst_depth.width(), dst_depth.height()),
    ] {
        if (gw, gh) != (w, h) {
            return Err(LabelingError::ShapeMismatch {
                name,
                got_width: gw,
                got_height: gh,
                width: w,
                height: h,
            });
        }
    }

    let mut out = LabelImage::new(w, h).expect("camera dimensions are nonzero");
    let mut winner_depth = alloc::vec![f64::INFINITY; w * h];
    let mut stats = PropagationStats::default();
    for y in 0..h {
        for x in 0..w {
            let label = src_labels.at(x, y);
            if label == IGNORE {
                continue;
            }
            stats.labeled += 1;
            if !src_depth.is_valid(x, y) {
                stats.invalid_depth += 1;
                continue;
            }
            let point = camera
                .backproject(x as f64, y as f64, src_depth.at(x, y) as f64)
                .expect("in-bounds pixel with validated depth");
            let proj = camera.project(transform_between(src_pose, dst_pose, point));
            if !proj.visible {
                stats.out_of_view += 1;
                continue;
            }
            // Visibility bounds the coordinates to (-0.5, size - 0.5), so
            // rounding lands on a real pixel.
            let px = crate::math::round(proj.u) as usize;
            let py = crate::math::round(proj.v) as usize;
            if !dst_depth.is_valid(px, py) {
                stats.invalid_depth += 1;
                continue;
            }
            if crate::math::abs(proj.depth - dst_depth.at(px, py) as f64) > z_tol {
                stats.occluded += 1;
                continue;
            }
            stats.propagated += 1;
            let index = py * w + px;
            if proj.depth < winner_depth[index] {
                winner_depth[index] = proj.depth;
                out.set(px, py, label);
            }
        }
    }
    debug_assert_eq!(
        stats.labeled,
        stats.propagated + stats.occluded + stats.out_of_view + stats.invalid_depth
    );
    Ok((out, stats))
}
