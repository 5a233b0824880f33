//! Per-class Gaussian model of the identified soil parameters.
//!
//! Identified samples are grouped by terrain class and each class gets a
//! Gaussian per parameter, fit by maximum likelihood. Classes the wheel
//! never drives on (rock faces, sky) cannot be fit from telemetry and
//! take caller-supplied defaults instead.

use alloc::vec::Vec;

use super::{IdentifiedProperties, TerramechError};
use crate::classes::TerrainClassSet;
use crate::math;

/// A soil parameter the property model tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TerrainParameter {
    SinkageExponent,
    FrictionAngle,
}

impl TerrainParameter {
    /// Short stable key, fit for file columns: `"N"` or `"phi"`.
    pub fn key(self) -> &'static str {
        match self {
            TerrainParameter::SinkageExponent => "N",
            TerrainParameter::FrictionAngle => "phi",
        }
    }
}

/// Mean and standard deviation of one parameter for one class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParam {
    pub mean: f64,
    pub std_dev: f64,
}

/// Fitted (or defaulted) parameter distributions for one terrain class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassProperties {
    pub sinkage_exponent: GaussianParam,
    pub friction_angle_deg: GaussianParam,
    /// Samples behind the fit; zero for defaulted classes.
    pub sample_count: usize,
}

impl ClassProperties {
    pub fn param(&self, parameter: TerrainParameter) -> GaussianParam {
        match parameter {
            TerrainParameter::SinkageExponent => self.sinkage_exponent,
            TerrainParameter::FrictionAngle => self.friction_angle_deg,
        }
    }

    fn validate(&self) -> Result<(), TerramechError> {
        for (name, g) in [
            ("sinkage exponent mean", self.sinkage_exponent),
            ("friction angle mean", self.friction_angle_deg),
        ] {
            if !g.mean.is_finite() || !g.std_dev.is_finite() {
                return Err(TerramechError::NonFinite { name });
            }
            if g.std_dev < 0.0 {
                return Err(TerramechError::NegativeStdDev { name, value: g.std_dev });
            }
        }
        Ok(())
    }
}

/// One [`ClassProperties`] per terrain class, indexed like the class set.
#[derive(Debug, Clone, PartialEq)]
pub struct TerrainPropertyModel {
    classes: Vec<ClassProperties>,
}

impl TerrainPropertyModel {
    pub fn new(classes: Vec<ClassProperties>) -> Result<Self, TerramechError> {
        if classes.len() < 2 {
            return Err(TerramechError::TooFewClasses(classes.len()));
        }
        for entry in &classes {
            entry.validate()?;
        }
        Ok(Self { classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, index: usize) -> Result<&ClassProperties, TerramechError> {
        self.classes
            .get(index)
            .ok_or(TerramechError::ClassOutOfRange { class: index, classes: self.classes.len() })
    }

    pub fn param(
        &self,
        index: usize,
        parameter: TerrainParameter,
    ) -> Result<GaussianParam, TerramechError> {
        Ok(self.class(index)?.param(parameter))
    }

    pub fn classes(&self) -> &[ClassProperties] {
        &self.classes
    }
}

/// Fallback properties for classes that cannot be fit from telemetry.
///
/// `entries[k] = Some(..)` marks class `k` as defaulted; `None` means the
/// class must earn its fit from samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyDefaults {
    pub entries: Vec<Option<ClassProperties>>,
}

/// Hard, essentially incompressible ground; matches a rigid rock surface.
const HARD_DEFAULT: ClassProperties = ClassProperties {
    sinkage_exponent: GaussianParam { mean: 0.10, std_dev: 0.01 },
    friction_angle_deg: GaussianParam { mean: 47.3, std_dev: 18.7 },
    sample_count: 0,
};

/// Placeholder for pixels that are not terrain at all.
const ZERO_DEFAULT: ClassProperties = ClassProperties {
    sinkage_exponent: GaussianParam { mean: 0.0, std_dev: 0.0 },
    friction_angle_deg: GaussianParam { mean: 0.0, std_dev: 0.0 },
    sample_count: 0,
};

/// Defaults for the conventional class names: `"rock"` gets the hard
/// profile, `"background"` the zero placeholder, everything else `None`.
pub fn untraversable_defaults(class_set: &TerrainClassSet) -> PropertyDefaults {
    untraversable_defaults_named(class_set, &["rock"], &["background"])
}

/// Defaults keyed by caller-chosen class names. Names absent from the
/// class set are ignored.
pub fn untraversable_defaults_named(
    class_set: &TerrainClassSet,
    hard: &[&str],
    zero: &[&str],
) -> PropertyDefaults {
    let entries = class_set
        .names()
        .map(|name| {
            if hard.contains(&name) {
                Some(HARD_DEFAULT)
            } else if zero.contains(&name) {
                Some(ZERO_DEFAULT)
            } else {
                None
            }
        })
        .collect();
    PropertyDefaults { entries }
}

/// Fits one Gaussian pair per class from identified samples.
///
/// Only converged, labeled samples count. A class with fewer than two such
/// samples takes its default; with no default the fit fails, naming every
/// class that came up short. Standard deviations use the maximum
/// likelihood `1/n` divisor.
pub fn fit_property_model(
    samples: &[IdentifiedProperties],
    class_set: &TerrainClassSet,
    defaults: &PropertyDefaults,
) -> Result<TerrainPropertyModel, TerramechError> {
    let k = class_set.len();
    if defaults.entries.len() != k {
        return Err(TerramechError::DefaultsMismatch {
            defaults: defaults.entries.len(),
            classes: k,
        });
    }
    let mut sums_n = alloc::vec![0.0f64; k];
    let mut sums_phi = alloc::vec![0.0f64; k];
    let mut counts = alloc::vec![0usize; k];
    for sample in samples {
        let Some(label) = sample.label else { continue };
        if label >= k {
            return Err(TerramechError::UnknownLabel { label, classes: k });
        }
        if !sample.converged {
            continue;
        }
        sums_n[label] += sample.n_exp;
        sums_phi[label] += sample.phi_deg;
        counts[label] += 1;
    }

    let mut vars_n = alloc::vec![0.0f64; k];
    let mut vars_phi = alloc::vec![0.0f64; k];
    for sample in samples {
        let Some(label) = sample.label else { continue };
        if !sample.converged || counts[label] < 2 {
            continue;
        }
        let n = counts[label] as f64;
        let dn = sample.n_exp - sums_n[label] / n;
        let dphi = sample.phi_deg - sums_phi[label] / n;
        vars_n[label] += dn * dn;
        vars_phi[label] += dphi * dphi;
    }

    let mut classes = Vec::with_capacity(k);
    let mut unfittable: Vec<&str> = Vec::new();
    for index in 0..k {
        if counts[index] >= 2 {
            let n = counts[index] as f64;
            classes.push(ClassProperties {
                sinkage_exponent: GaussianParam {
                    mean: sums_n[index] / n,
                    std_dev: math::sqrt(vars_n[index] / n),
                },
                friction_angle_deg: GaussianParam {
                    mean: sums_phi[index] / n,
                    std_dev: math::sqrt(vars_phi[index] / n),
                },
                sample_count: counts[index],
            });
        } else if let Some(default) = defaults.entries[index] {
            classes.push(default);
        } else {
            unfittable.push(class_set.name(index).unwrap_or(""));
            classes.push(ZERO_DEFAULT);
        }
    }
    if !unfittable.is_empty() {
        return Err(TerramechError::UnfittableClasses(unfittable.join(", ")));
    }
    TerrainPropertyModel::new(classes)
}
