//! Raw little-endian float32 tensor codec with JSON sidecars.
//!
//! Payloads are row-major; the sidecar shape is `[height, width]` for
//! single-channel rasters (depth) and `[height, width, channels]` for
//! feature, probability, and property-map tensors. Property maps store
//! two planes per pixel, mean then standard deviation, and stamp the
//! parameter tag, units, and the hash of the model that produced them.

use std::path::Path;

use terraprop::inference::PropertyMap;
use terraprop::terramech::TerrainParameter;
use terraprop::{DepthImage, FeatureMap, ProbabilityMap};

use super::{read_bytes, read_sidecar, write_atomic, write_sidecar, CodecError, Result, Sidecar};

fn f32_bytes(values: impl Iterator<Item = f32>) -> Vec<u8> {
    let mut bytes = Vec::new();
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    bytes
}

fn write_tensor(path: &Path, sidecar: &Sidecar, values: impl Iterator<Item = f32>) -> Result<()> {
    write_sidecar(path, sidecar)?;
    write_atomic(path, &f32_bytes(values))
}

fn read_tensor(path: &Path, rank: usize, expected_shape: &'static str) -> Result<(Sidecar, Vec<f32>)> {
    let sidecar = read_sidecar(path, "f32")?;
    if sidecar.shape.len() != rank || sidecar.elements() == 0 {
        return Err(CodecError::BadShape {
            path: super::sidecar_path(path),
            expected: expected_shape,
            got: sidecar.shape,
        });
    }
    let bytes = read_bytes(path)?;
    if bytes.len() % 4 != 0 {
        return Err(CodecError::Truncated {
            path: path.to_path_buf(),
            expected: sidecar.elements() * 4,
            got: bytes.len(),
        });
    }
    let values: Vec<f32> =
        bytes.chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect();
    if values.len() != sidecar.elements() {
        return Err(CodecError::PayloadLengthMismatch {
            path: path.to_path_buf(),
            expected: sidecar.elements(),
            got: values.len(),
        });
    }
    Ok((sidecar, values))
}

fn bad_content(path: &Path, what: impl ToString) -> CodecError {
    CodecError::BadContent { path: path.to_path_buf(), what: what.to_string() }
}

pub fn write_probability_map(path: &Path, map: &ProbabilityMap) -> Result<()> {
    let mut sidecar = Sidecar::new("f32", vec![map.height(), map.width(), map.classes()]);
    sidecar.classes = Some(map.classes());
    write_tensor(path, &sidecar, map.data().iter().map(|&v| v as f32))
}

pub fn read_probability_map(path: &Path) -> Result<ProbabilityMap> {
    let (sidecar, values) = read_tensor(path, 3, "[height, width, classes]")?;
    let data: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    ProbabilityMap::from_raw(sidecar.shape[1], sidecar.shape[0], sidecar.shape[2], data)
        .map_err(|e| bad_content(path, e))
}

pub fn write_feature_map(path: &Path, map: &FeatureMap) -> Result<()> {
    let sidecar = Sidecar::new("f32", vec![map.height(), map.width(), map.features()]);
    write_tensor(path, &sidecar, map.data().iter().map(|&v| v as f32))
}

pub fn read_feature_map(path: &Path) -> Result<FeatureMap> {
    let (sidecar, values) = read_tensor(path, 3, "[height, width, features]")?;
    let data: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    FeatureMap::from_raw(sidecar.shape[1], sidecar.shape[0], sidecar.shape[2], data)
        .map_err(|e| bad_content(path, e))
}

pub fn write_depth(path: &Path, depth: &DepthImage) -> Result<()> {
    let sidecar = Sidecar::new("f32", vec![depth.height(), depth.width()]);
    write_tensor(path, &sidecar, depth.data().iter().copied())
}

pub fn read_depth(path: &Path) -> Result<DepthImage> {
    let (sidecar, values) = read_tensor(path, 2, "[height, width]")?;
    DepthImage::from_raw(sidecar.shape[1], sidecar.shape[0], values)
        .map_err(|e| bad_content(path, e))
}

fn parameter_tag(parameter: TerrainParameter) -> (&'static str, &'static str) {
    match parameter {
        TerrainParameter::SinkageExponent => ("N", "dimensionless"),
        TerrainParameter::FrictionAngle => ("phi", "deg"),
    }
}

/// Writes a property map as interleaved `(mean, std)` float32 planes.
///
/// `model_hash` is the SHA-256 of the property-model document the map was
/// inferred from, recorded for provenance.
pub fn write_property_map(path: &Path, map: &PropertyMap, model_hash: &str) -> Result<()> {
    let (tag, units) = parameter_tag(map.parameter());
    let mut sidecar = Sidecar::new("f32", vec![map.height(), map.width(), 2]);
    sidecar.parameter = Some(tag.to_owned());
    sidecar.units = Some(units.to_owned());
    sidecar.planes = Some(vec!["mean".into(), "std".into()]);
    sidecar.model_hash = Some(model_hash.to_owned());
    let values = map
        .means()
        .iter()
        .zip(map.std_devs())
        .flat_map(|(&m, &s)| [m as f32, s as f32]);
    write_tensor(path, &sidecar, values)
}

pub fn read_property_map(path: &Path, parameter: TerrainParameter) -> Result<PropertyMap> {
    let (sidecar, values) = read_tensor(path, 3, "[height, width, 2]")?;
    if sidecar.shape[2] != 2 {
        return Err(CodecError::BadShape {
            path: super::sidecar_path(path),
            expected: "[height, width, 2]",
            got: sidecar.shape,
        });
    }
    let (tag, _) = parameter_tag(parameter);
    match sidecar.parameter.as_deref() {
        Some(got) if got == tag => {}
        got => {
            return Err(bad_content(
                path,
                format!("expected parameter tag {tag:?}, sidecar says {got:?}"),
            ))
        }
    }
    let (height, width) = (sidecar.shape[0], sidecar.shape[1]);
    let mean: Vec<f64> = values.iter().step_by(2).map(|&v| v as f64).collect();
    let std_dev: Vec<f64> = values.iter().skip(1).step_by(2).map(|&v| v as f64).collect();
    PropertyMap::from_raw(parameter, width, height, mean, std_dev).map_err(|e| bad_content(path, e))
}
