//! Wheel-soil interaction mechanics.
//!
//! The forward model integrates pressure-sinkage and shear stresses over
//! the wheel-soil contact patch to predict the vertical load and drive
//! torque a rigid wheel sees at a given slip and sinkage. Inverting it
//! against measured load and torque identifies the two dominant soil
//! parameters: the sinkage exponent and the internal friction angle.

mod identify;
mod kinematics;
mod params;
mod property_model;
mod stress;
mod wheel;

pub use identify::{
    downsample_log, identify_dominant, moving_average, IdentifiedProperties, InteractionSample,
    SolverConfig,
};
pub use kinematics::{entry_angle, sinkage_for_entry, slip_ratio, SlipRatio, MIN_RIM_SPEED};
pub use params::{SoilParams, WheelGeometry};
pub use property_model::{
    fit_property_model, untraversable_defaults, untraversable_defaults_named, ClassProperties,
    GaussianParam, PropertyDefaults, TerrainParameter, TerrainPropertyModel,
};
pub use stress::{normal_stress, shear_displacement, shear_stress};
pub use wheel::{forward_wheel, WheelForces, WheelState};

use alloc::string::String;

#[derive(Debug, thiserror::Error)]
pub enum TerramechError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} is not finite")]
    NonFinite { name: &'static str },
    #[error("slip radius {slip_radius} must lie in [radius, radius + lug height] = [{radius}, {max}]")]
    SlipRadiusRange { slip_radius: f64, radius: f64, max: f64 },
    #[error("rim speed {rim_speed} m/s is too small to define slip")]
    WheelStationary { rim_speed: f64 },
    #[error("sinkage {sinkage} is negative")]
    NegativeSinkage { sinkage: f64 },
    #[error("sinkage {sinkage} reaches the axle (radius {radius})")]
    WheelBuried { sinkage: f64, radius: f64 },
    #[error("contact angle {theta} outside [{exit}, {entry}]")]
    OutsideContact { theta: f64, entry: f64, exit: f64 },
    #[error("entry angle {entry} outside [0, pi/2]")]
    EntryAngleRange { entry: f64 },
    #[error("exit angle {exit} must lie in [-pi/2, entry angle {entry}]")]
    ExitAngleRange { exit: f64, entry: f64 },
    #[error("slip {slip} outside [0, 1]")]
    SlipRange { slip: f64 },
    #[error("friction angle {phi_deg} deg outside [0, 90)")]
    FrictionAngleRange { phi_deg: f64 },
    #[error("sinkage exponent {n_exp} must be positive and finite")]
    SinkageExponentRange { n_exp: f64 },
    #[error("Simpson rule needs an even, nonzero subinterval count, got {n}")]
    BadQuadrature { n: usize },
    #[error("integrand is not finite at contact angle {theta}")]
    NonFiniteIntegrand { theta: f64 },
    #[error("measured load {load} N must be positive")]
    NonPositiveLoad { load: f64 },
    #[error("measured torque {torque} N.m must not be negative")]
    NegativeTorque { torque: f64 },
    #[error("solver box is empty: {name} range [{lo}, {hi}]")]
    EmptySolverBox { name: &'static str, lo: f64, hi: f64 },
    #[error("timestamps must not decrease (sample {index})")]
    NonMonotonicTime { index: usize },
    #[error("sample label {label} exceeds class count {classes}")]
    UnknownLabel { label: usize, classes: usize },
    #[error("no converged samples and no default for: {0}")]
    UnfittableClasses(String),
    #[error("property model needs at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("{name} standard deviation {value} must not be negative")]
    NegativeStdDev { name: &'static str, value: f64 },
    #[error("class {class} out of range for {classes}-class model")]
    ClassOutOfRange { class: usize, classes: usize },
    #[error("defaults cover {defaults} classes but the class set has {classes}")]
    DefaultsMismatch { defaults: usize, classes: usize },
}
