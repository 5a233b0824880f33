//! Synthetic data generation: a procedural texture corpus for the
//! segmentation pipeline and interaction logs for the identification
//! pipeline. Everything is driven by one seeded generator, so a corpus is
//! reproducible byte for byte from its seed.
//!
//! Each corpus image is three stripes (vertical in even images,
//! horizontal in odd ones) of classes drawn without replacement, textured
//! with per-class base color, uniform noise amplitude, and optional
//! speckle. The partial annotation covers three small random rectangles
//! and two small random ellipses, mimicking quickly scribbled regions;
//! everything else is IGNORE.

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use terraprop::terramech::{
    forward_wheel, IdentifiedProperties, InteractionSample, SoilParams, SolverConfig,
    TerrainParameter, TerrainPropertyModel, WheelGeometry, WheelState,
};
use terraprop::{LabelImage, RgbImage, TerrainClassSet};

use crate::codec::{self, CodecError};

/// Per-class texture appearance, indexed like [`TerrainClassSet::standard`].
struct Appearance {
    base: [u8; 3],
    amplitude: f64,
    speckle: Option<([u8; 3], f64)>,
}

const APPEARANCES: [Appearance; 6] = [
    // soil: warm, smooth
    Appearance { base: [178, 140, 98], amplitude: 9.0, speckle: None },
    // stony soil: soil tone with dark embedded stones
    Appearance { base: [152, 118, 84], amplitude: 10.0, speckle: Some(([48, 42, 38], 0.12)) },
    // gravel: mid gray, very noisy
    Appearance { base: [118, 106, 98], amplitude: 26.0, speckle: None },
    // bedrock: brown-gray, nearly flat
    Appearance { base: [96, 78, 64], amplitude: 4.0, speckle: None },
    // rock: dark with bright mineral speckle
    Appearance { base: [58, 54, 52], amplitude: 7.0, speckle: Some(([112, 110, 106], 0.25)) },
    // background: near black
    Appearance { base: [18, 16, 24], amplitude: 2.0, speckle: None },
];

/// One generated image with its full and partial annotations.
pub struct SynthSample {
    pub image: RgbImage,
    pub full: LabelImage,
    pub partial: LabelImage,
}

/// Generates image `index` of a corpus from the shared stream `rng`.
pub fn generate_sample(rng: &mut ChaCha8Rng, index: usize, size: usize) -> SynthSample {
    let classes = APPEARANCES.len();
    let mut order: Vec<usize> = (0..classes).collect();
    order.shuffle(rng);
    let stripe_classes = [order[0], order[1], order[2]];

    let lo = size / 5;
    let hi = 4 * size / 5;
    let mut cuts = [rng.random_range(lo..hi), rng.random_range(lo..hi)];
    cuts.sort_unstable();
    let vertical = index % 2 == 0;

    let mut image = RgbImage::new(size, size).expect("size > 0");
    let mut full = LabelImage::new(size, size).expect("size > 0");
    for y in 0..size {
        for x in 0..size {
            let along = if vertical { x } else { y };
            let stripe = usize::from(along >= cuts[0]) + usize::from(along >= cuts[1]);
            let class = stripe_classes[stripe];
            let look = &APPEARANCES[class];
            let base = match look.speckle {
                Some((speckle, rate)) if rng.random::<f64>() < rate => speckle,
                _ => look.base,
            };
            let mut rgb = [0u8; 3];
            for (slot, &b) in rgb.iter_mut().zip(&base) {
                let noise = (rng.random::<f64>() * 2.0 - 1.0) * look.amplitude;
                *slot = (b as f64 + noise).round().clamp(0.0, 255.0) as u8;
            }
            image.set(x, y, rgb);
            full.set(x, y, class as u8);
        }
    }

    let partial = carve_partial(rng, &full, size);
    SynthSample { image, full, partial }
}

/// Copies the full annotation inside three random rectangles and two
/// random ellipses; the rest stays IGNORE. The shapes are deliberately
/// small (6-14 px rectangles, 4-8 px semi-axes at 128 px, scaling with
/// the image) so partial annotation is genuinely scarce, a few percent
/// of the pixels, and adding full annotations measurably helps.
fn carve_partial(rng: &mut ChaCha8Rng, full: &LabelImage, size: usize) -> LabelImage {
    let mut partial = LabelImage::new(size, size).expect("size > 0");
    let scaled = |px: usize| ((px * size + 64) / 128).max(2).min(size - 1);

    for _ in 0..3 {
        let w = rng.random_range(scaled(6)..=scaled(14));
        let h = rng.random_range(scaled(6)..=scaled(14));
        let x0 = rng.random_range(0..=size - w);
        let y0 = rng.random_range(0..=size - h);
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                partial.set(x, y, full.at(x, y));
            }
        }
    }
    for _ in 0..2 {
        let a = rng.random_range(scaled(4)..=scaled(8)) as f64;
        let b = rng.random_range(scaled(4)..=scaled(8)) as f64;
        let cx = rng.random_range(0..size) as f64;
        let cy = rng.random_range(0..size) as f64;
        for y in 0..size {
            for x in 0..size {
                let dx = (x as f64 - cx) / a;
                let dy = (y as f64 - cy) / b;
                if dx * dx + dy * dy <= 1.0 {
                    partial.set(x, y, full.at(x, y));
                }
            }
        }
    }
    partial
}

/// `corpus.json`: class-set path plus per-sample file triples, all
/// relative to the manifest's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub classes: PathBuf,
    pub train: Vec<SamplePaths>,
    pub test: Vec<SamplePaths>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplePaths {
    pub image: PathBuf,
    pub full: PathBuf,
    pub partial: PathBuf,
}

/// Generates a corpus under `dir` and writes the manifest to
/// `dir/corpus.json`; returns the manifest path.
pub fn write_corpus(
    dir: &Path,
    seed: u64,
    train: usize,
    test: usize,
    size: usize,
) -> Result<PathBuf, CodecError> {
    let classes = TerrainClassSet::standard();
    std::fs::create_dir_all(dir.join("train")).map_err(|e| codec::io_err(dir, e))?;
    std::fs::create_dir_all(dir.join("test")).map_err(|e| codec::io_err(dir, e))?;
    codec::model::write_class_set(&dir.join("classes.json"), &classes)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut manifest =
        CorpusManifest { classes: "classes.json".into(), train: Vec::new(), test: Vec::new() };
    for (split, count, into) in
        [("train", train, 0usize), ("test", test, 1)]
    {
        for index in 0..count {
            let sample = generate_sample(&mut rng, index, size);
            let stem = format!("{split}/img_{index:03}");
            let paths = SamplePaths {
                image: PathBuf::from(format!("{stem}.ppm")),
                full: PathBuf::from(format!("{stem}.full.u8")),
                partial: PathBuf::from(format!("{stem}.partial.u8")),
            };
            codec::ppm::write_image(&dir.join(&paths.image), &sample.image)?;
            codec::raster::write_labels(&dir.join(&paths.full), &sample.full, classes.len())?;
            codec::raster::write_labels(&dir.join(&paths.partial), &sample.partial, classes.len())?;
            if into == 0 {
                manifest.train.push(paths);
            } else {
                manifest.test.push(paths);
            }
        }
    }
    let manifest_path = dir.join("corpus.json");
    let mut bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| CodecError::Json { path: manifest_path.clone(), source: e })?;
    bytes.push(b'\n');
    codec::write_atomic(&manifest_path, &bytes)?;
    Ok(manifest_path)
}

/// A corpus loaded back into memory.
pub struct LoadedCorpus {
    pub classes: TerrainClassSet,
    pub train: Vec<SynthSample>,
    pub test: Vec<SynthSample>,
}

pub fn read_corpus(manifest_path: &Path) -> Result<LoadedCorpus, CodecError> {
    let bytes = codec::read_bytes(manifest_path)?;
    let manifest: CorpusManifest = serde_json::from_slice(&bytes)
        .map_err(|e| CodecError::Json { path: manifest_path.to_path_buf(), source: e })?;
    let dir = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let classes = codec::model::read_class_set(&dir.join(&manifest.classes))?;
    let load = |paths: &[SamplePaths]| -> Result<Vec<SynthSample>, CodecError> {
        paths
            .iter()
            .map(|p| {
                Ok(SynthSample {
                    image: codec::ppm::read_image(&dir.join(&p.image))?,
                    full: codec::raster::read_labels(&dir.join(&p.full))?.0,
                    partial: codec::raster::read_labels(&dir.join(&p.partial))?.0,
                })
            })
            .collect()
    };
    Ok(LoadedCorpus { classes, train: load(&manifest.train)?, test: load(&manifest.test)? })
}

/// Draws `per_class` already-identified samples per class straight from
/// the model's Gaussians, as solver output with zero residuals. Feeding
/// the result to the model fitter recovers the Gaussians.
pub fn generate_report_samples(
    model: &TerrainPropertyModel,
    per_class: usize,
    seed: u64,
) -> Vec<IdentifiedProperties> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(model.len() * per_class);
    for (k, props) in model.classes().iter().enumerate() {
        let n_gauss = props.param(TerrainParameter::SinkageExponent);
        let phi_gauss = props.param(TerrainParameter::FrictionAngle);
        for i in 0..per_class {
            out.push(IdentifiedProperties {
                n_exp: draw_gaussian(&mut rng, n_gauss.mean, n_gauss.std_dev),
                phi_deg: draw_gaussian(&mut rng, phi_gauss.mean, phi_gauss.std_dev),
                slip: 0.2,
                entry_angle: 0.3,
                converged: true,
                residual_load: 0.0,
                residual_torque: 0.0,
                label: Some(k),
                t: (k * per_class + i) as f64 * 0.01,
            });
        }
    }
    out
}

fn draw_gaussian(rng: &mut ChaCha8Rng, mean: f64, std_dev: f64) -> f64 {
    if std_dev == 0.0 {
        return mean;
    }
    Normal::new(mean, std_dev).expect("finite parameters").sample(rng)
}

/// Synthesizes drive telemetry: per class, property draws are clamped
/// into the solver box (shrunk by a margin so nothing sits on an edge),
/// pushed through the forward model under random slip and sinkage, and
/// emitted as measured load/torque rows.
pub fn generate_telemetry(
    model: &TerrainPropertyModel,
    per_class: usize,
    seed: u64,
    wheel: &WheelGeometry,
    soil: &SoilParams,
    solver: &SolverConfig,
) -> Result<Vec<InteractionSample>, terraprop::terramech::TerramechError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_range = (solver.n_min.max(0.2), solver.n_max.min(2.2));
    let phi_range = (solver.phi_min_deg.max(5.0), solver.phi_max_deg.min(55.0));
    let mut out = Vec::with_capacity(model.len() * per_class);
    let mut t = 0.0;
    for (k, props) in model.classes().iter().enumerate() {
        let n_gauss = props.param(TerrainParameter::SinkageExponent);
        let phi_gauss = props.param(TerrainParameter::FrictionAngle);
        for _ in 0..per_class {
            let n_exp =
                draw_gaussian(&mut rng, n_gauss.mean, n_gauss.std_dev).clamp(n_range.0, n_range.1);
            let phi = draw_gaussian(&mut rng, phi_gauss.mean, phi_gauss.std_dev)
                .clamp(phi_range.0, phi_range.1);
            let slip = 0.1 + rng.random::<f64>() * 0.5;
            let entry = 0.15 + rng.random::<f64>() * 0.3;
            let sinkage = wheel.radius * (1.0 - entry.cos());
            let omega = 2.0;
            let state = WheelState::new(slip, entry);
            let forces = forward_wheel(n_exp, phi, &state, wheel, soil, solver.quadrature_n)?;
            out.push(InteractionSample {
                t,
                vertical_load: forces.vertical_load,
                drive_torque: forces.drive_torque,
                angular_velocity: omega,
                forward_speed: wheel.slip_radius * omega * (1.0 - slip),
                sinkage,
                label: Some(k),
            });
            t += 0.01;
        }
    }
    Ok(out)
}
