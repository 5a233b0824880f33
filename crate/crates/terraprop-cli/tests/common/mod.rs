//! Helpers shared by the CLI and acceptance test targets.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use terraprop::terramech::{ClassProperties, GaussianParam, TerrainPropertyModel};
use terraprop::TerrainClassSet;

/// Per-class property Gaussians of the field campaign the defaults model:
/// (soil, stony soil, gravel, bedrock, rock, background), matching
/// [`TerrainClassSet::standard`] order.
pub const CAMPAIGN: [[f64; 4]; 6] = [
    // mu_N, sigma_N, mu_phi, sigma_phi
    [1.36, 0.25, 29.6, 8.9],
    [1.28, 0.32, 36.9, 8.6],
    [0.92, 0.27, 36.5, 12.4],
    [0.10, 0.01, 47.3, 18.7],
    [0.10, 0.01, 47.3, 18.7],
    [0.0, 0.0, 0.0, 0.0],
];

pub fn campaign_model() -> TerrainPropertyModel {
    TerrainPropertyModel::new(
        CAMPAIGN
            .iter()
            .map(|row| ClassProperties {
                sinkage_exponent: GaussianParam { mean: row[0], std_dev: row[1] },
                friction_angle_deg: GaussianParam { mean: row[2], std_dev: row[3] },
                sample_count: 1000,
            })
            .collect(),
    )
    .expect("campaign constants are valid")
}

pub fn standard_classes() -> TerrainClassSet {
    TerrainClassSet::standard()
}

/// Runs the CLI binary with `args`, returning raw output.
pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_terraprop"))
        .args(args)
        .output()
        .expect("binary spawns")
}

/// Runs the CLI and returns the JSON summary from the last stdout line,
/// panicking (with stderr shown) on a non-zero exit.
pub fn run_summary(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed with {:?}\nstderr: {}",
        args,
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    summary_of(&out)
}

/// Parses the last stdout line as the JSON summary object.
pub fn summary_of(out: &Output) -> Value {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let last = stdout.lines().last().unwrap_or_else(|| panic!("no stdout in {stdout:?}"));
    serde_json::from_str(last)
        .unwrap_or_else(|e| panic!("last stdout line is not JSON ({e}): {last:?}"))
}

pub fn path_str(path: &Path) -> &str {
    path.to_str().expect("temp paths are UTF-8")
}

/// Writes `classes.json` and `model.json` (the campaign model) into `dir`.
pub fn write_campaign_files(dir: &Path) -> (std::path::PathBuf, std::path::PathBuf) {
    let classes_path = dir.join("classes.json");
    let model_path = dir.join("model.json");
    let classes = standard_classes();
    terraprop_cli::codec::model::write_class_set(&classes_path, &classes).unwrap();
    terraprop_cli::codec::model::write_property_model(&model_path, &campaign_model(), &classes)
        .unwrap();
    (classes_path, model_path)
}
