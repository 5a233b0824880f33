//! Hand-crafted texture features for pixel classification.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::raster::{FeatureMap, RgbImage};

/// Features per pixel: patch mean and patch standard deviation for each of
/// the three channels, then the patch mean gradient magnitude for each.
pub const FEATURES_PER_PIXEL: usize = 9;

/// Patch statistics configuration for [`extract_features`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureConfig {
    /// Half-width of the square statistics window; the patch spans
    /// `2 * patch_radius + 1` pixels and is clamped at the image border.
    pub patch_radius: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        Self { patch_radius: 4 }
    }
}

// Scale factors mapping raw 8-bit statistics into roughly [0, 1]: the
// largest possible channel mean is 255, the largest population standard
// deviation of 8-bit data is 127.5, and the largest central-difference
// gradient magnitude is 127.5 * sqrt(2).
const MEAN_SCALE: f64 = 1.0 / 255.0;
const STD_SCALE: f64 = 1.0 / 127.5;
const GRAD_SCALE: f64 = 1.0 / (127.5 * core::f64::consts::SQRT_2);

/// Per-pixel patch statistics over the image, channels scaled to ~[0, 1].
///
/// Border pixels reuse the nearest valid row/column (clamped patches), so
/// every pixel sees a full-size window.
pub fn extract_features(image: &RgbImage, config: &FeatureConfig) -> FeatureMap {
    let (w, h) = (image.width(), image.height());
    let r = config.patch_radius as isize;

    // Channel planes and their central-difference gradient magnitudes.
    let mut planes = vec![0.0f64; w * h * 3];
    for y in 0..h {
        for x in 0..w {
            let px = image.at(x, y);
            for ch in 0..3 {
                planes[ch * w * h + y * w + x] = f64::from(px[ch]);
            }
        }
    }
    let clamp = |v: isize, hi: usize| -> usize { v.clamp(0, hi as isize - 1) as usize };
    let mut grads = vec![0.0f64; w * h * 3];
    for ch in 0..3 {
        let plane = &planes[ch * w * h..(ch + 1) * w * h];
        for y in 0..h {
            for x in 0..w {
                let (xi, yi) = (x as isize, y as isize);
                let gx = (plane[y * w + clamp(xi + 1, w)] - plane[y * w + clamp(xi - 1, w)]) / 2.0;
                let gy = (plane[clamp(yi + 1, h) * w + x] - plane[clamp(yi - 1, h) * w + x]) / 2.0;
                grads[ch * w * h + y * w + x] = math::sqrt(gx * gx + gy * gy);
            }
        }
    }

    let mut data = Vec::with_capacity(w * h * FEATURES_PER_PIXEL);
    let patch_len = ((2 * r + 1) * (2 * r + 1)) as f64;
    for y in 0..h {
        for x in 0..w {
            let mut sum = [0.0f64; 3];
            let mut sum_sq = [0.0f64; 3];
            let mut grad_sum = [0.0f64; 3];
            for dy in -r..=r {
                let yy = clamp(y as isize + dy, h);
                for dx in -r..=r {
                    let xx = clamp(x as isize + dx, w);
                    let i = yy * w + xx;
                    for ch in 0..3 {
                        let v = planes[ch * w * h + i];
                        sum[ch] += v;
                        sum_sq[ch] += v * v;
                        grad_sum[ch] += grads[ch * w * h + i];
                    }
                }
            }
            for ch in 0..3 {
                data.push(sum[ch] / patch_len * MEAN_SCALE);
            }
            for ch in 0..3 {
                let mean = sum[ch] / patch_len;
                let var = sum_sq[ch] / patch_len - mean * mean;
                data.push(math::sqrt(var.max(0.0)) * STD_SCALE);
            }
            for ch in 0..3 {
                data.push(grad_sum[ch] / patch_len * GRAD_SCALE);
            }
        }
    }
    FeatureMap::from_raw(w, h, FEATURES_PER_PIXEL, data).expect("features are finite by construction")
}
