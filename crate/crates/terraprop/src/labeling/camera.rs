//! Pinhole camera model.
//!
//! Coordinates follow the usual camera frame: X right, Y down, Z forward
//! along the optical axis. Depth images store Z, not ray length. No lens
//! distortion; the rig is assumed rectified.

use super::LabelingError;

/// Points closer than this to the image plane count as behind the camera.
pub const MIN_PROJECTION_DEPTH: f64 = 1e-6;

/// Pinhole intrinsics, in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraModel {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

/// Result of projecting a camera-frame point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    /// Column coordinate, px.
    pub u: f64,
    /// Row coordinate, px.
    pub v: f64,
    /// Z depth of the point, m.
    pub depth: f64,
    /// In front of the camera and inside the image.
    pub visible: bool,
}

impl CameraModel {
    pub fn new(
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, LabelingError> {
        if width == 0 {
            return Err(LabelingError::BadIntrinsics { name: "width", value: 0.0 });
        }
        if height == 0 {
            return Err(LabelingError::BadIntrinsics { name: "height", value: 0.0 });
        }
        if !fx.is_finite() || fx <= 0.0 {
            return Err(LabelingError::BadIntrinsics { name: "fx", value: fx });
        }
        if !fy.is_finite() || fy <= 0.0 {
            return Err(LabelingError::BadIntrinsics { name: "fy", value: fy });
        }
        if !cx.is_finite() || cx < 0.0 || cx >= width as f64 {
            return Err(LabelingError::BadIntrinsics { name: "cx", value: cx });
        }
        if !cy.is_finite() || cy < 0.0 || cy >= height as f64 {
            return Err(LabelingError::BadIntrinsics { name: "cy", value: cy });
        }
        Ok(Self { fx, fy, cx, cy, width, height })
    }

    fn pixel_in_bounds(&self, u: f64, v: f64) -> bool {
        // Pixel centers sit on integers; the image spans half a pixel past
        // the outermost centers.
        u > -0.5 && u < self.width as f64 - 0.5 && v > -0.5 && v < self.height as f64 - 0.5
    }

    /// Lifts pixel `(u, v)` at `depth` meters into the camera frame.
    pub fn backproject(&self, u: f64, v: f64, depth: f64) -> Result<[f64; 3], LabelingError> {
        if !depth.is_finite() || depth <= 0.0 {
            return Err(LabelingError::InvalidDepth { depth });
        }
        if !u.is_finite() || !v.is_finite() || !self.pixel_in_bounds(u, v) {
            return Err(LabelingError::PixelOutOfBounds {
                u,
                v,
                width: self.width,
                height: self.height,
            });
        }
        Ok([(u - self.cx) / self.fx * depth, (v - self.cy) / self.fy * depth, depth])
    }

    /// Projects a camera-frame point onto the image plane.
    ///
    /// Never fails; `visible` is false behind the camera or outside the
    /// image, and the pixel coordinates are only meaningful when the point
    /// is in front.
    pub fn project(&self, point: [f64; 3]) -> Projection {
        let [x, y, z] = point;
        let u = self.fx * x / z + self.cx;
        let v = self.fy * y / z + self.cy;
        let in_front = z.is_finite() && z > MIN_PROJECTION_DEPTH;
        let visible = in_front && u.is_finite() && v.is_finite() && self.pixel_in_bounds(u, v);
        Projection { u, v, depth: z, visible }
    }
}
