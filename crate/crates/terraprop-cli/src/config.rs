//! Pipeline configuration file.
//!
//! A JSON document gathering the constants a run needs: wheel geometry,
//! soil moduli, solver box, training schedule, hazard thresholds, and
//! paths. Every numeric field is optional and falls back to the library
//! default, but the `units` block is mandatory and must declare exactly
//! the units the pipeline computes in; a config written in millimeters or
//! kilopascals is rejected instead of silently misread.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use terraprop::inference::HazardThresholds;
use terraprop::segmentation::TrainConfig;
use terraprop::terramech::{SoilParams, SolverConfig, WheelGeometry};

/// The unit tags a config file must declare.
pub const EXPECTED_UNITS: [(&str, &str); 5] =
    [("length", "m"), ("pressure", "Pa"), ("angle", "deg"), ("force", "N"), ("torque", "N.m")];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: missing units block; declare {EXPECTED_UNITS:?}")]
    MissingUnits { path: PathBuf },
    #[error("{path}: units.{field} is {got:?}, this pipeline computes in {expected:?}")]
    WrongUnit { path: PathBuf, field: String, got: String, expected: &'static str },
    #[error("{path}: units.{field} is not declared")]
    MissingUnit { path: PathBuf, field: &'static str },
    #[error("{path}: units block declares unknown field {field:?}")]
    UnknownUnit { path: PathBuf, field: String },
    #[error("{path}: referenced file {referenced} does not exist")]
    MissingFile { path: PathBuf, referenced: PathBuf },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    units: Option<std::collections::BTreeMap<String, String>>,
    classes: Option<PathBuf>,
    wheel: Option<WheelSection>,
    soil: Option<SoilSection>,
    solver: Option<SolverSection>,
    train: Option<TrainSection>,
    weight_constant: Option<f64>,
    thresholds: Option<ThresholdSection>,
    full_scale: Option<FullScaleSection>,
    z_tol: Option<f64>,
    smoothing_window: Option<f64>,
    downsample_period: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct WheelSection {
    radius: Option<f64>,
    width: Option<f64>,
    lug_height: Option<f64>,
    slip_radius: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SoilSection {
    k_c: Option<f64>,
    k_phi: Option<f64>,
    c: Option<f64>,
    #[serde(rename = "K")]
    shear_k: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    n_min: Option<f64>,
    n_max: Option<f64>,
    phi_min_deg: Option<f64>,
    phi_max_deg: Option<f64>,
    rel_tol: Option<f64>,
    max_outer: Option<usize>,
    quadrature_n: Option<usize>,
    exit_angle: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrainSection {
    learning_rate: Option<f64>,
    decay: Option<f64>,
    epochs: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdSection {
    soft_n_max: Option<f64>,
    slippery_phi_min_deg: Option<f64>,
    sigma_n_max: Option<f64>,
    sigma_phi_max_deg: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FullScaleSection {
    #[serde(rename = "N")]
    n: Option<f64>,
    phi: Option<f64>,
}

/// Validated pipeline constants, library defaults where the file is silent.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub classes: Option<PathBuf>,
    pub wheel: WheelGeometry,
    pub soil: SoilParams,
    pub solver: SolverConfig,
    pub train: TrainConfig,
    pub weight_constant: f64,
    pub thresholds: HazardThresholds,
    pub full_scale_n: f64,
    pub full_scale_phi: f64,
    pub z_tol: f64,
    pub smoothing_window: f64,
    pub downsample_period: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            classes: None,
            wheel: WheelGeometry::default(),
            soil: SoilParams::default(),
            solver: SolverConfig::default(),
            train: TrainConfig::default(),
            weight_constant: 1.02,
            thresholds: HazardThresholds::default(),
            full_scale_n: terraprop::inference::DEFAULT_FULL_SCALE_N,
            full_scale_phi: terraprop::inference::DEFAULT_FULL_SCALE_PHI_DEG,
            z_tol: terraprop::labeling::DEFAULT_Z_TOL,
            smoothing_window: 0.5,
            downsample_period: None,
        }
    }
}

impl PipelineConfig {
    /// Loads and validates a config file; `None` gives pure defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let bytes = std::fs::read(path)
            .map_err(|e| ConfigError::Io { path: path.to_path_buf(), source: e })?;
        let file: ConfigFile = serde_json::from_slice(&bytes)
            .map_err(|e| ConfigError::Json { path: path.to_path_buf(), source: e })?;

        let units = file.units.ok_or_else(|| ConfigError::MissingUnits { path: path.to_path_buf() })?;
        for field in units.keys() {
            if !EXPECTED_UNITS.iter().any(|(name, _)| name == field) {
                return Err(ConfigError::UnknownUnit {
                    path: path.to_path_buf(),
                    field: field.clone(),
                });
            }
        }
        for (field, expected) in EXPECTED_UNITS {
            match units.get(field) {
                None => return Err(ConfigError::MissingUnit { path: path.to_path_buf(), field }),
                Some(got) if got != expected => {
                    return Err(ConfigError::WrongUnit {
                        path: path.to_path_buf(),
                        field: field.to_owned(),
                        got: got.clone(),
                        expected,
                    })
                }
                Some(_) => {}
            }
        }

        let mut config = Self::default();
        // Relative referenced paths resolve against the config's directory.
        if let Some(classes) = file.classes {
            let resolved = if classes.is_relative() {
                path.parent().unwrap_or_else(|| Path::new(".")).join(classes)
            } else {
                classes
            };
            if !resolved.exists() {
                return Err(ConfigError::MissingFile {
                    path: path.to_path_buf(),
                    referenced: resolved,
                });
            }
            config.classes = Some(resolved);
        }
        if let Some(w) = file.wheel {
            set(&mut config.wheel.radius, w.radius);
            set(&mut config.wheel.width, w.width);
            set(&mut config.wheel.lug_height, w.lug_height);
            set(&mut config.wheel.slip_radius, w.slip_radius);
        }
        if let Some(s) = file.soil {
            set(&mut config.soil.cohesive_modulus, s.k_c);
            set(&mut config.soil.frictional_modulus, s.k_phi);
            set(&mut config.soil.cohesion, s.c);
            set(&mut config.soil.shear_modulus, s.shear_k);
        }
        if let Some(s) = file.solver {
            set(&mut config.solver.n_min, s.n_min);
            set(&mut config.solver.n_max, s.n_max);
            set(&mut config.solver.phi_min_deg, s.phi_min_deg);
            set(&mut config.solver.phi_max_deg, s.phi_max_deg);
            set(&mut config.solver.rel_tol, s.rel_tol);
            set(&mut config.solver.max_outer, s.max_outer);
            set(&mut config.solver.quadrature_n, s.quadrature_n);
            set(&mut config.solver.exit_angle, s.exit_angle);
        }
        if let Some(t) = file.train {
            set(&mut config.train.learning_rate, t.learning_rate);
            set(&mut config.train.decay, t.decay);
            set(&mut config.train.epochs, t.epochs);
        }
        set(&mut config.weight_constant, file.weight_constant);
        if let Some(t) = file.thresholds {
            set(&mut config.thresholds.soft_n_max, t.soft_n_max);
            set(&mut config.thresholds.slippery_phi_min_deg, t.slippery_phi_min_deg);
            set(&mut config.thresholds.sigma_n_max, t.sigma_n_max);
            set(&mut config.thresholds.sigma_phi_max_deg, t.sigma_phi_max_deg);
        }
        if let Some(f) = file.full_scale {
            set(&mut config.full_scale_n, f.n);
            set(&mut config.full_scale_phi, f.phi);
        }
        set(&mut config.z_tol, file.z_tol);
        set(&mut config.smoothing_window, file.smoothing_window);
        config.downsample_period = file.downsample_period;
        Ok(config)
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
