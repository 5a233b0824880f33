//! End-to-end checks of the command-line surface: IO contracts, exit
//! codes, determinism, and atomic output handling.

mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use common::{path_str, run, run_summary, summary_of, write_campaign_files};
use terraprop::inference::PropertyMap;
use terraprop::terramech::TerrainParameter;
use terraprop::{LabelImage, ProbabilityMap};
use terraprop_cli::codec;

/// One-hot probabilities select a single class, so the inferred property
/// rasters must be constant at that class's fitted Gaussian.
#[test]
fn one_hot_probability_gives_constant_property_rasters() {
    let dir = tempfile::tempdir().unwrap();
    let (classes_path, model_path) = write_campaign_files(dir.path());

    let (width, height, classes) = (8, 6, 6);
    let bedrock = 3;
    let mut data = vec![0.0; width * height * classes];
    for pixel in 0..width * height {
        data[pixel * classes + bedrock] = 1.0;
    }
    let prob = ProbabilityMap::from_raw(width, height, classes, data).unwrap();
    let prob_path = dir.path().join("prob.f32");
    codec::tensor::write_probability_map(&prob_path, &prob).unwrap();

    let out_n = dir.path().join("n.f32");
    let out_phi = dir.path().join("phi.f32");
    let summary = run_summary(&[
        "infer",
        "--probability",
        path_str(&prob_path),
        "--model",
        path_str(&model_path),
        "--classes",
        path_str(&classes_path),
        "--out-n",
        path_str(&out_n),
        "--out-phi",
        path_str(&out_phi),
    ]);
    assert_eq!(summary["negative_variance_clamps"], 0);

    let map_n = codec::tensor::read_property_map(&out_n, TerrainParameter::SinkageExponent).unwrap();
    let map_phi = codec::tensor::read_property_map(&out_phi, TerrainParameter::FrictionAngle).unwrap();
    for y in 0..height {
        for x in 0..width {
            // Values pass through f32 storage, hence the loose tolerance.
            assert!((map_n.mean_at(x, y) - 0.10).abs() < 1e-7);
            assert!((map_n.std_at(x, y) - 0.01).abs() < 1e-7);
            assert!((map_phi.mean_at(x, y) - 47.3).abs() < 1e-5);
            assert!((map_phi.std_at(x, y) - 18.7).abs() < 1e-5);
        }
    }
}

fn constant_map(parameter: TerrainParameter, mean: f64, std_dev: f64) -> PropertyMap {
    let (width, height) = (5, 4);
    PropertyMap::from_raw(
        parameter,
        width,
        height,
        vec![mean; width * height],
        vec![std_dev; width * height],
    )
    .unwrap()
}

/// With surveyed truth equal to the predicted mean everywhere, the route
/// scores are exactly zero error and full coverage. The map constants are
/// dyadic so the f32 round trip is lossless.
#[test]
fn route_matching_truth_scores_zero_error_and_full_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let map_n_path = dir.path().join("n.f32");
    let map_phi_path = dir.path().join("phi.f32");
    let map_n = constant_map(TerrainParameter::SinkageExponent, 0.75, 0.125);
    let map_phi = constant_map(TerrainParameter::FrictionAngle, 30.0, 4.0);
    codec::tensor::write_property_map(&map_n_path, &map_n, "test").unwrap();
    codec::tensor::write_property_map(&map_phi_path, &map_phi, "test").unwrap();

    let route_path = dir.path().join("route.csv");
    std::fs::write(
        &route_path,
        "wheel,row,col,arclength,truth_N,truth_phi\n\
         left,0,0,0.0,0.75,30.0\n\
         left,1,2,0.12,0.75,30.0\n\
         right,2,3,0.12,0.75,30.0\n",
    )
    .unwrap();

    let out = dir.path().join("prediction.csv");
    let summary = run_summary(&[
        "route",
        "--route",
        path_str(&route_path),
        "--map-n",
        path_str(&map_n_path),
        "--map-phi",
        path_str(&map_phi_path),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(summary["points"], 3);
    assert_eq!(summary["truth_points_n"], 3);
    assert_eq!(summary["fse"], 0.0);
    assert_eq!(summary["coverage"], 1.0);

    let rows = codec::logs::read_route_prediction(&out).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].mean_n, 0.75);
    assert_eq!(rows[0].std_phi, 4.0);
    assert_eq!(rows[2].truth_phi, Some(30.0));
}

fn dir_snapshot(dir: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(current) = stack.pop() {
        for entry in std::fs::read_dir(&current).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_path_buf();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

/// The same command with the same seed writes byte-identical outputs.
#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_a = dir.path().join("a");
    let corpus_b = dir.path().join("b");
    for corpus in [&corpus_a, &corpus_b] {
        run_summary(&[
            "--seed",
            "7",
            "synth-corpus",
            "--out",
            path_str(corpus),
            "--train",
            "2",
            "--test",
            "1",
            "--size",
            "32",
        ]);
    }
    assert_eq!(dir_snapshot(&corpus_a), dir_snapshot(&corpus_b));

    let model_a = dir.path().join("c1.json");
    let model_b = dir.path().join("c2.json");
    for model in [&model_a, &model_b] {
        run_summary(&[
            "--seed",
            "3",
            "train",
            "--corpus",
            path_str(&corpus_a.join("corpus.json")),
            "--annotation",
            "full",
            "--epochs",
            "40",
            "--learning-rate",
            "1000",
            "--decay",
            "0.999",
            "--out",
            path_str(model),
        ]);
    }
    assert_eq!(std::fs::read(&model_a).unwrap(), std::fs::read(&model_b).unwrap());
}

/// Property inference is row-parallel; thread count must not leak into
/// the written rasters.
#[test]
fn thread_count_does_not_change_inferred_maps() {
    let dir = tempfile::tempdir().unwrap();
    let (classes_path, model_path) = write_campaign_files(dir.path());

    let (width, height, classes) = (9, 7, 6);
    let mut data = Vec::with_capacity(width * height * classes);
    for pixel in 0..width * height {
        let raw: Vec<f64> = (0..classes).map(|k| 1.0 + ((pixel * 31 + k * 7) % 13) as f64).collect();
        let total: f64 = raw.iter().sum();
        data.extend(raw.iter().map(|v| v / total));
    }
    let prob = ProbabilityMap::from_raw(width, height, classes, data).unwrap();
    let prob_path = dir.path().join("prob.f32");
    codec::tensor::write_probability_map(&prob_path, &prob).unwrap();

    let mut outputs = Vec::new();
    for (tag, threads) in [("single", "1"), ("multi", "5")] {
        let out_n = dir.path().join(format!("{tag}_n.f32"));
        let out_phi = dir.path().join(format!("{tag}_phi.f32"));
        run_summary(&[
            "--threads",
            threads,
            "infer",
            "--probability",
            path_str(&prob_path),
            "--model",
            path_str(&model_path),
            "--classes",
            path_str(&classes_path),
            "--out-n",
            path_str(&out_n),
            "--out-phi",
            path_str(&out_phi),
        ]);
        outputs.push((std::fs::read(&out_n).unwrap(), std::fs::read(&out_phi).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

/// Exit code 2 for usage errors, 1 for data errors, 0 for success.
#[test]
fn exit_codes_follow_the_contract() {
    let usage = run(&["infer"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());

    let data = run(&[
        "metrics",
        "--truth",
        "no-such-file.u8",
        "--prediction",
        "no-such-file.u8",
        "--classes",
        "no-such-classes.json",
    ]);
    assert_eq!(data.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&data.stderr);
    assert!(stderr.contains("no-such"), "stderr should name the missing file: {stderr}");

    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}

/// A run that fails while reading inputs must not disturb whatever
/// already sits at the output path.
#[test]
fn failed_run_leaves_existing_output_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let (classes_path, model_path) = write_campaign_files(dir.path());

    // Sidecar promises 2x2x6 f32 values; the payload holds garbage bytes.
    let prob_path = dir.path().join("prob.f32");
    std::fs::write(
        codec::sidecar_path(&prob_path),
        r#"{"dtype": "f32", "shape": [2, 2, 6], "classes": 6}"#,
    )
    .unwrap();
    std::fs::write(&prob_path, [0u8; 10]).unwrap();

    let out_n = dir.path().join("n.f32");
    let out_phi = dir.path().join("phi.f32");
    std::fs::write(&out_n, b"sentinel").unwrap();

    let out = run(&[
        "infer",
        "--probability",
        path_str(&prob_path),
        "--model",
        path_str(&model_path),
        "--classes",
        path_str(&classes_path),
        "--out-n",
        path_str(&out_n),
        "--out-phi",
        path_str(&out_phi),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("prob.f32"), "stderr should name the bad tensor: {stderr}");
    assert_eq!(std::fs::read(&out_n).unwrap(), b"sentinel");
    assert!(!out_phi.exists());
}

/// Human-readable output goes first; the machine-readable summary is the
/// single last stdout line.
#[test]
fn summary_is_the_last_stdout_line() {
    let dir = tempfile::tempdir().unwrap();
    let classes_path = dir.path().join("classes.json");
    codec::model::write_class_set(&classes_path, &common::standard_classes()).unwrap();

    let labels = LabelImage::from_raw(4, 4, vec![0; 16]).unwrap();
    let truth_path = dir.path().join("truth.u8");
    let pred_path = dir.path().join("pred.u8");
    codec::raster::write_labels(&truth_path, &labels, 6).unwrap();
    codec::raster::write_labels(&pred_path, &labels, 6).unwrap();

    let out = run(&[
        "metrics",
        "--truth",
        path_str(&truth_path),
        "--prediction",
        path_str(&pred_path),
        "--classes",
        path_str(&classes_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().count() > 1, "expected a table before the summary: {stdout}");
    let summary = summary_of(&out);
    assert_eq!(summary["command"], "metrics");
    assert_eq!(summary["pixel_accuracy"], 1.0);
}

/// Configs declaring the wrong units are rejected before any work; valid
/// configs feed thresholds into commands that do not name them on the
/// command line.
#[test]
fn config_units_and_overrides_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let map_n_path = dir.path().join("n.f32");
    let map_phi_path = dir.path().join("phi.f32");
    let map_n = constant_map(TerrainParameter::SinkageExponent, 0.75, 0.125);
    let map_phi = constant_map(TerrainParameter::FrictionAngle, 30.0, 4.0);
    codec::tensor::write_property_map(&map_n_path, &map_n, "test").unwrap();
    codec::tensor::write_property_map(&map_phi_path, &map_phi, "test").unwrap();
    let out_flags = dir.path().join("flags.u8");

    let bad_config = dir.path().join("bad.json");
    std::fs::write(
        &bad_config,
        r#"{"units": {"length": "m", "pressure": "Pa", "angle": "rad", "force": "N", "torque": "N.m"}}"#,
    )
    .unwrap();
    let rejected = run(&[
        "--config",
        path_str(&bad_config),
        "flags",
        "--map-n",
        path_str(&map_n_path),
        "--map-phi",
        path_str(&map_phi_path),
        "--out",
        path_str(&out_flags),
    ]);
    assert_eq!(rejected.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&rejected.stderr);
    assert!(stderr.contains("units.angle"), "stderr should name the unit: {stderr}");
    assert!(!out_flags.exists());

    // soft_n_max 0.5 from the config marks every 0.75 pixel soft.
    let good_config = dir.path().join("good.json");
    std::fs::write(
        &good_config,
        r#"{
            "units": {"length": "m", "pressure": "Pa", "angle": "deg", "force": "N", "torque": "N.m"},
            "thresholds": {"soft_n_max": 0.5, "slippery_phi_min_deg": 10.0}
        }"#,
    )
    .unwrap();
    let summary = run_summary(&[
        "--config",
        path_str(&good_config),
        "flags",
        "--map-n",
        path_str(&map_n_path),
        "--map-phi",
        path_str(&map_phi_path),
        "--out",
        path_str(&out_flags),
    ]);
    assert_eq!(summary["total"], 20);
    assert_eq!(summary["soft"], 20);
    assert_eq!(summary["slippery"], 0);
    assert_eq!(summary["uncertain"], 0);
}
