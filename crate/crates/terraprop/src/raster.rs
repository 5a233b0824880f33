//! Dense row-major raster containers.
//!
//! All rasters index as `(x, y)` = (column, row) with `(0, 0)` at the top
//! left. Multi-channel maps store channels innermost:
//! `data[(y * width + x) * channels + channel]`.

use alloc::vec;
use alloc::vec::Vec;

/// Label value marking pixels excluded from losses and metrics.
pub const IGNORE: u8 = 255;

/// Per-pixel probability vectors may miss an exact sum of 1 by this much
/// (covers float32 storage round-trips).
pub const PROBABILITY_SUM_TOL: f64 = 1e-5;

#[derive(Debug, thiserror::Error)]
pub enum RasterError {
    #[error("raster dimensions must be nonzero")]
    ZeroDimension,
    #[error("buffer holds {got} values, dimensions require {expected}")]
    BufferSize { expected: usize, got: usize },
    #[error("label {label} at ({x}, {y}) exceeds class count {classes}")]
    LabelOutOfRange { x: usize, y: usize, label: u8, classes: usize },
    #[error("non-finite value at ({x}, {y}) channel {channel}")]
    NonFinite { x: usize, y: usize, channel: usize },
    #[error("value {value} at ({x}, {y}) channel {channel} is not a probability")]
    NotAProbability { x: usize, y: usize, channel: usize, value: f64 },
    #[error("probabilities at ({x}, {y}) sum to {sum}, expected 1")]
    BadPixelSum { x: usize, y: usize, sum: f64 },
    #[error("negative depth {depth} at ({x}, {y})")]
    NegativeDepth { x: usize, y: usize, depth: f32 },
}

fn check_dims(width: usize, height: usize) -> Result<(), RasterError> {
    if width == 0 || height == 0 {
        return Err(RasterError::ZeroDimension);
    }
    Ok(())
}

fn check_len(expected: usize, got: usize) -> Result<(), RasterError> {
    if expected != got {
        return Err(RasterError::BufferSize { expected, got });
    }
    Ok(())
}

/// 8-bit RGB image, three bytes per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        Ok(Self { width, height, data: vec![0; width * height * 3] })
    }

    pub fn from_raw(width: usize, height: usize, data: Vec<u8>) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        check_len(width * height * 3, data.len())?;
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = (y * self.width + x) * 3;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }
}

/// 8-bit class label raster; [`IGNORE`] marks unscored pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl LabelImage {
    /// All pixels start as [`IGNORE`].
    pub fn new(width: usize, height: usize) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        Ok(Self { width, height, data: vec![IGNORE; width * height] })
    }

    pub fn from_raw(width: usize, height: usize, data: Vec<u8>) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        check_len(width * height, data.len())?;
        Ok(Self { width, height, data })
    }

    /// Checks that every non-IGNORE label is below `classes`.
    pub fn check_classes(&self, classes: usize) -> Result<(), RasterError> {
        for y in 0..self.height {
            for x in 0..self.width {
                let label = self.at(x, y);
                if label != IGNORE && usize::from(label) >= classes {
                    return Err(RasterError::LabelOutOfRange { x, y, label, classes });
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, label: u8) {
        self.data[y * self.width + x] = label;
    }

    pub fn scored_pixels(&self) -> usize {
        self.data.iter().filter(|&&l| l != IGNORE).count()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }
}

/// Per-pixel feature vectors, channels innermost.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMap {
    width: usize,
    height: usize,
    features: usize,
    data: Vec<f64>,
}

impl FeatureMap {
    pub fn from_raw(
        width: usize,
        height: usize,
        features: usize,
        data: Vec<f64>,
    ) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        if features == 0 {
            return Err(RasterError::ZeroDimension);
        }
        check_len(width * height * features, data.len())?;
        for (i, v) in data.iter().enumerate() {
            if !v.is_finite() {
                let px = i / features;
                return Err(RasterError::NonFinite {
                    x: px % width,
                    y: px / width,
                    channel: i % features,
                });
            }
        }
        Ok(Self { width, height, features, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn features(&self) -> usize {
        self.features
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[f64] {
        let i = (y * self.width + x) * self.features;
        &self.data[i..i + self.features]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<f64> {
        self.data
    }
}

/// Per-pixel class scores before the softmax. Loss gradients share this
/// layout, so the type carries both.
#[derive(Debug, Clone, PartialEq)]
pub struct LogitMap {
    width: usize,
    height: usize,
    classes: usize,
    data: Vec<f64>,
}

impl LogitMap {
    pub fn zeroed(width: usize, height: usize, classes: usize) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        if classes < 2 {
            return Err(RasterError::ZeroDimension);
        }
        Ok(Self { width, height, classes, data: vec![0.0; width * height * classes] })
    }

    pub fn from_raw(
        width: usize,
        height: usize,
        classes: usize,
        data: Vec<f64>,
    ) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        if classes < 2 {
            return Err(RasterError::ZeroDimension);
        }
        check_len(width * height * classes, data.len())?;
        for (i, v) in data.iter().enumerate() {
            if !v.is_finite() {
                let px = i / classes;
                return Err(RasterError::NonFinite {
                    x: px % width,
                    y: px / width,
                    channel: i % classes,
                });
            }
        }
        Ok(Self { width, height, classes, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[f64] {
        let i = (y * self.width + x) * self.classes;
        &self.data[i..i + self.classes]
    }

    #[inline]
    pub fn pixel_mut(&mut self, x: usize, y: usize) -> &mut [f64] {
        let i = (y * self.width + x) * self.classes;
        &mut self.data[i..i + self.classes]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Per-pixel class probability vectors.
///
/// Invariants checked at construction: every entry in `[0, 1]` and every
/// pixel sum within [`PROBABILITY_SUM_TOL`] of 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMap {
    width: usize,
    height: usize,
    classes: usize,
    data: Vec<f64>,
}

impl ProbabilityMap {
    pub fn from_raw(
        width: usize,
        height: usize,
        classes: usize,
        data: Vec<f64>,
    ) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        if classes < 2 {
            return Err(RasterError::ZeroDimension);
        }
        check_len(width * height * classes, data.len())?;
        for px in 0..width * height {
            let (x, y) = (px % width, px / width);
            let mut sum = 0.0;
            for ch in 0..classes {
                let v = data[px * classes + ch];
                if !v.is_finite() {
                    return Err(RasterError::NonFinite { x, y, channel: ch });
                }
                if !(0.0..=1.0).contains(&v) {
                    return Err(RasterError::NotAProbability { x, y, channel: ch, value: v });
                }
                sum += v;
            }
            if crate::math::abs(sum - 1.0) > PROBABILITY_SUM_TOL {
                return Err(RasterError::BadPixelSum { x, y, sum });
            }
        }
        Ok(Self { width, height, classes, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> &[f64] {
        let i = (y * self.width + x) * self.classes;
        &self.data[i..i + self.classes]
    }

    /// Most probable class per pixel; ties go to the smaller class index.
    pub fn argmax_labels(&self) -> LabelImage {
        let mut out = LabelImage::new(self.width, self.height).expect("dims already checked");
        for y in 0..self.height {
            for x in 0..self.width {
                let p = self.pixel(x, y);
                let mut best = 0usize;
                for (k, &v) in p.iter().enumerate().skip(1) {
                    if v > p[best] {
                        best = k;
                    }
                }
                out.set(x, y, best as u8);
            }
        }
        out
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<f64> {
        self.data
    }
}

/// Per-pixel depth in meters along the optical axis; 0 marks missing depth.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthImage {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

impl DepthImage {
    pub fn from_raw(width: usize, height: usize, data: Vec<f32>) -> Result<Self, RasterError> {
        check_dims(width, height)?;
        check_len(width * height, data.len())?;
        for (i, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(RasterError::NonFinite { x: i % width, y: i / width, channel: 0 });
            }
            if v < 0.0 {
                return Err(RasterError::NegativeDepth { x: i % width, y: i / width, depth: v });
            }
        }
        Ok(Self { width, height, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    /// Depth 0 means the sensor produced no return for this pixel.
    #[inline]
    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        self.at(x, y) > 0.0
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }
}
