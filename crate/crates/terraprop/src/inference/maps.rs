//! Dense property maps from a probability raster.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::mixture::MomentTable;
use super::InferenceError;
use crate::raster::ProbabilityMap;
use crate::terramech::{TerrainParameter, TerrainPropertyModel};

/// Dense mean and uncertainty raster for one soil parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyMap {
    parameter: TerrainParameter,
    width: usize,
    height: usize,
    mean: Vec<f64>,
    std_dev: Vec<f64>,
    negative_variance_clamps: usize,
}

impl PropertyMap {
    /// Wraps precomputed rasters, checking shape, finiteness, and that no
    /// standard deviation is negative.
    pub fn from_raw(
        parameter: TerrainParameter,
        width: usize,
        height: usize,
        mean: Vec<f64>,
        std_dev: Vec<f64>,
    ) -> Result<Self, InferenceError> {
        if width == 0 || height == 0 {
            return Err(InferenceError::EmptyInput { name: "property map" });
        }
        let pixels = width * height;
        if mean.len() != pixels {
            return Err(InferenceError::LengthMismatch {
                name: "mean raster",
                got: mean.len(),
                expected: pixels,
            });
        }
        if std_dev.len() != pixels {
            return Err(InferenceError::LengthMismatch {
                name: "std raster",
                got: std_dev.len(),
                expected: pixels,
            });
        }
        for &v in &mean {
            if !v.is_finite() {
                return Err(InferenceError::NonFinite { name: "mean raster" });
            }
        }
        for &v in &std_dev {
            if !v.is_finite() {
                return Err(InferenceError::NonFinite { name: "std raster" });
            }
            if v < 0.0 {
                return Err(InferenceError::NonPositive { name: "std raster", value: v });
            }
        }
        Ok(Self { parameter, width, height, mean, std_dev, negative_variance_clamps: 0 })
    }

    pub fn parameter(&self) -> TerrainParameter {
        self.parameter
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Pixels whose mixture variance was a negative roundoff residue and
    /// got clamped to zero. Zero on any healthy run.
    pub fn negative_variance_clamps(&self) -> usize {
        self.negative_variance_clamps
    }

    pub fn mean_at(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height);
        self.mean[y * self.width + x]
    }

    pub fn std_at(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height);
        self.std_dev[y * self.width + x]
    }

    pub fn means(&self) -> &[f64] {
        &self.mean
    }

    pub fn std_devs(&self) -> &[f64] {
        &self.std_dev
    }
}

/// Fills mean and std rasters for the pixel rows `rows` of `prob`.
///
/// `mean_out` and `std_out` must hold exactly `rows.len() * width`
/// entries; they receive the rows in order. Returns the number of
/// negative-variance clamps. [`infer_property_maps`] routes every pixel
/// through this function, so a caller that partitions the rows across
/// threads reproduces the single-threaded rasters bit for bit.
pub fn infer_property_rows(
    prob: &ProbabilityMap,
    table: &MomentTable,
    rows: Range<usize>,
    mean_out: &mut [f64],
    std_out: &mut [f64],
) -> Result<usize, InferenceError> {
    if table.len() != prob.classes() {
        return Err(InferenceError::ClassCountMismatch {
            got: prob.classes(),
            expected: table.len(),
        });
    }
    if rows.start > rows.end || rows.end > prob.height() {
        return Err(InferenceError::RowRange {
            start: rows.start,
            end: rows.end,
            height: prob.height(),
        });
    }
    let width = prob.width();
    let expected = rows.len() * width;
    if mean_out.len() != expected {
        return Err(InferenceError::LengthMismatch {
            name: "mean output",
            got: mean_out.len(),
            expected,
        });
    }
    if std_out.len() != expected {
        return Err(InferenceError::LengthMismatch {
            name: "std output",
            got: std_out.len(),
            expected,
        });
    }
    let mut clamps = 0;
    for (i, y) in rows.enumerate() {
        let base = i * width;
        for x in 0..width {
            let m = table.moments_unchecked(prob.pixel(x, y));
            mean_out[base + x] = m.mean;
            std_out[base + x] = m.std_dev;
            clamps += m.clamped as usize;
        }
    }
    Ok(clamps)
}

/// Pixelwise mixture moments for both parameters.
///
/// Returns the sinkage exponent map and the friction angle map, same
/// shape as `prob`.
pub fn infer_property_maps(
    prob: &ProbabilityMap,
    model: &TerrainPropertyModel,
) -> Result<(PropertyMap, PropertyMap), InferenceError> {
    if model.len() != prob.classes() {
        return Err(InferenceError::ClassCountMismatch {
            got: prob.classes(),
            expected: model.len(),
        });
    }
    let (width, height) = (prob.width(), prob.height());
    let pixels = width * height;
    let mut out = Vec::with_capacity(2);
    for parameter in [TerrainParameter::SinkageExponent, TerrainParameter::FrictionAngle] {
        let table = MomentTable::new(model, parameter);
        let mut mean = vec![0.0; pixels];
        let mut std_dev = vec![0.0; pixels];
        let clamps = infer_property_rows(prob, &table, 0..height, &mut mean, &mut std_dev)?;
        out.push(PropertyMap {
            parameter,
            width,
            height,
            mean,
            std_dev,
            negative_variance_clamps: clamps,
        });
    }
    let phi = out.pop().expect("two maps pushed");
    let n = out.pop().expect("two maps pushed");
    Ok((n, phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::mixture::tests::campaign_model;
    use crate::inference::mixture::MixtureMoments;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;

    fn constant_prob(width: usize, height: usize, p: &[f64]) -> ProbabilityMap {
        let mut data = Vec::with_capacity(width * height * p.len());
        for _ in 0..width * height {
            data.extend_from_slice(p);
        }
        ProbabilityMap::from_raw(width, height, p.len(), data).unwrap()
    }

    fn random_prob(width: usize, height: usize, classes: usize, seed: u64) -> ProbabilityMap {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut data = Vec::with_capacity(width * height * classes);
        for _ in 0..width * height {
            let raw: Vec<f64> = (0..classes).map(|_| rng.random::<f64>() + 1e-3).collect();
            let sum: f64 = raw.iter().sum();
            data.extend(raw.iter().map(|v| v / sum));
        }
        ProbabilityMap::from_raw(width, height, classes, data).unwrap()
    }

    #[test]
    fn bedrock_one_hot_gives_constant_maps() {
        let model = campaign_model();
        let prob = constant_prob(7, 5, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let (n, phi) = infer_property_maps(&prob, &model).unwrap();
        assert_eq!(n.parameter(), TerrainParameter::SinkageExponent);
        assert_eq!(phi.parameter(), TerrainParameter::FrictionAngle);
        assert_eq!((n.width(), n.height()), (7, 5));
        for y in 0..5 {
            for x in 0..7 {
                assert_eq!(n.mean_at(x, y), 0.10);
                assert_relative_eq!(n.std_at(x, y), 0.01, epsilon = 1e-12);
                assert_eq!(phi.mean_at(x, y), 47.3);
                assert_relative_eq!(phi.std_at(x, y), 18.7, epsilon = 1e-12);
            }
        }
        assert_eq!(n.negative_variance_clamps(), 0);
    }

    #[test]
    fn uniform_probabilities_average_the_class_means() {
        let model = campaign_model();
        let prob = constant_prob(3, 3, &[1.0 / 6.0; 6]);
        let (n, _) = infer_property_maps(&prob, &model).unwrap();
        let expected = (1.36 + 1.28 + 0.92 + 0.10 + 0.10 + 0.0) / 6.0;
        assert_relative_eq!(n.mean_at(1, 1), expected, epsilon = 1e-12);
    }

    #[test]
    fn maps_equal_per_pixel_moments_bitwise() {
        let model = campaign_model();
        for seed in 0..4 {
            let prob = random_prob(16, 16, 6, seed);
            let (n, phi) = infer_property_maps(&prob, &model).unwrap();
            for y in 0..16 {
                for x in 0..16 {
                    let p = prob.pixel(x, y);
                    let mn =
                        crate::inference::mixture_moments(p, &model, TerrainParameter::SinkageExponent)
                            .unwrap();
                    let mp =
                        crate::inference::mixture_moments(p, &model, TerrainParameter::FrictionAngle)
                            .unwrap();
                    assert_eq!(n.mean_at(x, y).to_bits(), mn.mean.to_bits());
                    assert_eq!(n.std_at(x, y).to_bits(), mn.std_dev.to_bits());
                    assert_eq!(phi.mean_at(x, y).to_bits(), mp.mean.to_bits());
                    assert_eq!(phi.std_at(x, y).to_bits(), mp.std_dev.to_bits());
                }
            }
        }
    }

    #[test]
    fn row_partitions_reproduce_the_full_raster() {
        let model = campaign_model();
        let prob = random_prob(9, 11, 6, 3);
        let table = MomentTable::new(&model, TerrainParameter::SinkageExponent);
        let mut full_mean = vec![0.0; 99];
        let mut full_std = vec![0.0; 99];
        infer_property_rows(&prob, &table, 0..11, &mut full_mean, &mut full_std).unwrap();

        let mut part_mean = vec![0.0; 99];
        let mut part_std = vec![0.0; 99];
        let (mean_a, mean_b) = part_mean.split_at_mut(4 * 9);
        let (std_a, std_b) = part_std.split_at_mut(4 * 9);
        infer_property_rows(&prob, &table, 0..4, mean_a, std_a).unwrap();
        infer_property_rows(&prob, &table, 4..11, mean_b, std_b).unwrap();
        assert!(full_mean.iter().zip(&part_mean).all(|(a, b)| a.to_bits() == b.to_bits()));
        assert!(full_std.iter().zip(&part_std).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn shape_and_class_checks() {
        let model = campaign_model();
        let prob = constant_prob(2, 2, &[0.5, 0.5]);
        assert!(matches!(
            infer_property_maps(&prob, &model),
            Err(InferenceError::ClassCountMismatch { got: 2, expected: 6 })
        ));

        let prob = constant_prob(2, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let table = MomentTable::new(&model, TerrainParameter::SinkageExponent);
        let mut mean = vec![0.0; 4];
        let mut std = vec![0.0; 4];
        assert!(matches!(
            infer_property_rows(&prob, &table, 0..3, &mut mean, &mut std),
            Err(InferenceError::RowRange { .. })
        ));
        assert!(matches!(
            infer_property_rows(&prob, &table, 0..1, &mut mean, &mut std),
            Err(InferenceError::LengthMismatch { name: "mean output", .. })
        ));
    }

    #[test]
    fn from_raw_validates() {
        let p = TerrainParameter::SinkageExponent;
        assert!(PropertyMap::from_raw(p, 2, 1, vec![0.1, 0.2], vec![0.0, 0.3]).is_ok());
        assert!(matches!(
            PropertyMap::from_raw(p, 2, 1, vec![0.1], vec![0.0, 0.3]),
            Err(InferenceError::LengthMismatch { .. })
        ));
        assert!(matches!(
            PropertyMap::from_raw(p, 2, 1, vec![0.1, f64::NAN], vec![0.0, 0.3]),
            Err(InferenceError::NonFinite { .. })
        ));
        assert!(matches!(
            PropertyMap::from_raw(p, 2, 1, vec![0.1, 0.2], vec![-0.1, 0.3]),
            Err(InferenceError::NonPositive { .. })
        ));
        assert!(matches!(
            PropertyMap::from_raw(p, 0, 1, vec![], vec![]),
            Err(InferenceError::EmptyInput { .. })
        ));
    }

    #[test]
    fn moments_struct_round_trips_through_map_accessors() {
        let model = campaign_model();
        let prob = constant_prob(1, 1, &[0.5, 0.0, 0.0, 0.5, 0.0, 0.0]);
        let (n, _) = infer_property_maps(&prob, &model).unwrap();
        let m = MixtureMoments { mean: n.mean_at(0, 0), std_dev: n.std_at(0, 0), clamped: false };
        assert_relative_eq!(m.mean, 0.73, epsilon = 1e-12);
        assert_relative_eq!(m.std_dev, 0.6543699259593155, epsilon = 1e-12);
    }
}
