//! JSON documents: class sets, trained classifiers, property models, and
//! camera intrinsics.
//!
//! The property model is keyed by class name, `{class: {param: {mu,
//! sigma, n}}}`, with parameter keys `"N"` and `"phi"`. JSON objects carry
//! no order, so readers take the class set and arrange entries by its
//! indices; a name missing from either side is an error.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use terraprop::segmentation::{FeatureConfig, PixelClassifier};
use terraprop::terramech::{
    ClassProperties, GaussianParam, TerrainParameter, TerrainPropertyModel,
};
use terraprop::TerrainClassSet;

use super::{read_bytes, write_atomic, CodecError, Result};

fn bad_content(path: &Path, what: impl ToString) -> CodecError {
    CodecError::BadContent { path: path.to_path_buf(), what: what.to_string() }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CodecError::Json { path: path.to_path_buf(), source: e })?;
    bytes.push(b'\n');
    write_atomic(path, &bytes)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let bytes = read_bytes(path)?;
    serde_json::from_slice(&bytes).map_err(|e| CodecError::Json { path: path.to_path_buf(), source: e })
}

/// Hex SHA-256 of a file's bytes, for provenance stamps.
pub fn sha256_hex_of(path: &Path) -> Result<String> {
    let bytes = read_bytes(path)?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

#[derive(Serialize, Deserialize)]
struct ClassSetFile {
    names: Vec<String>,
    colors: Vec<[u8; 3]>,
}

pub fn write_class_set(path: &Path, classes: &TerrainClassSet) -> Result<()> {
    let file = ClassSetFile {
        names: classes.names().map(str::to_owned).collect(),
        colors: (0..classes.len()).map(|k| classes.color(k).expect("index in range")).collect(),
    };
    write_json(path, &file)
}

pub fn read_class_set(path: &Path) -> Result<TerrainClassSet> {
    let file: ClassSetFile = read_json(path)?;
    TerrainClassSet::new(file.names, file.colors).map_err(|e| bad_content(path, e))
}

#[derive(Serialize, Deserialize)]
struct FeatureConfigFile {
    patch_radius: usize,
}

#[derive(Serialize, Deserialize)]
struct ClassifierFile {
    classes: ClassSetFile,
    feature_config: FeatureConfigFile,
    features: usize,
    /// One row per class, bias last.
    weights: Vec<Vec<f64>>,
}

pub fn write_classifier(path: &Path, model: &PixelClassifier) -> Result<()> {
    let stride = model.features() + 1;
    let file = ClassifierFile {
        classes: ClassSetFile {
            names: model.class_set().names().map(str::to_owned).collect(),
            colors: (0..model.classes())
                .map(|k| model.class_set().color(k).expect("index in range"))
                .collect(),
        },
        feature_config: FeatureConfigFile { patch_radius: model.feature_config().patch_radius },
        features: model.features(),
        weights: model.weights().chunks_exact(stride).map(<[f64]>::to_vec).collect(),
    };
    write_json(path, &file)
}

pub fn read_classifier(path: &Path) -> Result<PixelClassifier> {
    let file: ClassifierFile = read_json(path)?;
    let classes = TerrainClassSet::new(file.classes.names, file.classes.colors)
        .map_err(|e| bad_content(path, e))?;
    let stride = file.features + 1;
    if let Some(row) = file.weights.iter().find(|row| row.len() != stride) {
        return Err(bad_content(
            path,
            format!("weight row of length {} in a {}-feature model", row.len(), file.features),
        ));
    }
    let weights: Vec<f64> = file.weights.into_iter().flatten().collect();
    PixelClassifier::new(
        classes,
        FeatureConfig { patch_radius: file.feature_config.patch_radius },
        file.features,
        weights,
    )
    .map_err(|e| bad_content(path, e))
}

#[derive(Serialize, Deserialize)]
struct GaussEntry {
    mu: f64,
    sigma: f64,
    n: usize,
}

type PropertyModelFile = BTreeMap<String, BTreeMap<String, GaussEntry>>;

pub fn write_property_model(
    path: &Path,
    model: &TerrainPropertyModel,
    classes: &TerrainClassSet,
) -> Result<()> {
    if model.len() != classes.len() {
        return Err(bad_content(
            path,
            format!("{} model classes for a {}-name class set", model.len(), classes.len()),
        ));
    }
    let mut file = PropertyModelFile::new();
    for (k, props) in model.classes().iter().enumerate() {
        let name = classes.name(k).expect("index in range");
        let mut params = BTreeMap::new();
        for parameter in [TerrainParameter::SinkageExponent, TerrainParameter::FrictionAngle] {
            let g = props.param(parameter);
            params.insert(
                parameter.key().to_owned(),
                GaussEntry { mu: g.mean, sigma: g.std_dev, n: props.sample_count },
            );
        }
        file.insert(name.to_owned(), params);
    }
    write_json(path, &file)
}

pub fn read_property_model(
    path: &Path,
    classes: &TerrainClassSet,
) -> Result<TerrainPropertyModel> {
    let file: PropertyModelFile = read_json(path)?;
    for name in file.keys() {
        if classes.index_of(name).is_none() {
            return Err(bad_content(path, format!("class {name:?} is not in the class set")));
        }
    }
    let mut entries = Vec::with_capacity(classes.len());
    for name in classes.names() {
        let params = file
            .get(name)
            .ok_or_else(|| bad_content(path, format!("class {name:?} missing from the model")))?;
        let pick = |parameter: TerrainParameter| -> Result<(GaussianParam, usize)> {
            let entry = params.get(parameter.key()).ok_or_else(|| {
                bad_content(path, format!("class {name:?} missing parameter {:?}", parameter.key()))
            })?;
            Ok((GaussianParam { mean: entry.mu, std_dev: entry.sigma }, entry.n))
        };
        let (sinkage_exponent, n_count) = pick(TerrainParameter::SinkageExponent)?;
        let (friction_angle_deg, _) = pick(TerrainParameter::FrictionAngle)?;
        entries.push(ClassProperties {
            sinkage_exponent,
            friction_angle_deg,
            sample_count: n_count,
        });
    }
    TerrainPropertyModel::new(entries).map_err(|e| bad_content(path, e))
}

#[derive(Serialize, Deserialize)]
struct CameraFile {
    fx: f64,
    fy: f64,
    cx: f64,
    cy: f64,
    width: usize,
    height: usize,
}

pub fn write_camera(path: &Path, camera: &terraprop::labeling::CameraModel) -> Result<()> {
    let file = CameraFile {
        fx: camera.fx,
        fy: camera.fy,
        cx: camera.cx,
        cy: camera.cy,
        width: camera.width,
        height: camera.height,
    };
    write_json(path, &file)
}

pub fn read_camera(path: &Path) -> Result<terraprop::labeling::CameraModel> {
    let file: CameraFile = read_json(path)?;
    terraprop::labeling::CameraModel::new(
        file.fx,
        file.fy,
        file.cx,
        file.cy,
        file.width,
        file.height,
    )
    .map_err(|e| bad_content(path, e))
}
