//! Inference subcommands: probability maps to property maps, route
//! sampling with accuracy metrics, and hazard screening.

use anyhow::ensure;
use serde_json::{json, Value};
use terraprop::inference::{full_scale_error, hazard_flags, interval_coverage, predict_route};
use terraprop::terramech::TerrainParameter;

use super::Ctx;
use crate::cli::{FlagsArgs, InferArgs, RouteArgs};
use crate::codec;
use crate::threads::infer_maps_threaded;

pub fn infer(ctx: &Ctx, args: &InferArgs) -> anyhow::Result<Value> {
    let classes = codec::model::read_class_set(&args.classes)?;
    let prob = codec::tensor::read_probability_map(&args.probability)?;
    ensure!(
        prob.classes() == classes.len(),
        "{}: holds {} classes, class set has {}",
        args.probability.display(),
        prob.classes(),
        classes.len()
    );
    let model = codec::model::read_property_model(&args.model, &classes)?;
    let model_hash = codec::model::sha256_hex_of(&args.model)?;
    let maps = infer_maps_threaded(&prob, &model, ctx.threads)?;
    codec::tensor::write_property_map(&args.out_n, &maps.map_n, &model_hash)?;
    codec::tensor::write_property_map(&args.out_phi, &maps.map_phi, &model_hash)?;
    Ok(json!({
        "command": "infer",
        "width": prob.width(),
        "height": prob.height(),
        "threads": ctx.threads,
        "negative_variance_clamps": maps.clamps_n + maps.clamps_phi,
        "model_hash": model_hash,
        "out_n": args.out_n,
        "out_phi": args.out_phi,
    }))
}

pub fn route(ctx: &Ctx, args: &RouteArgs) -> anyhow::Result<Value> {
    let map_n = codec::tensor::read_property_map(&args.map_n, TerrainParameter::SinkageExponent)?;
    let map_phi = codec::tensor::read_property_map(&args.map_phi, TerrainParameter::FrictionAngle)?;
    let route = codec::logs::read_route(&args.route)?;
    let prediction = predict_route(&map_n, &map_phi, &route)?;
    codec::logs::write_route_prediction(&args.out, &prediction.rows)?;

    let mut summary = json!({
        "command": "route",
        "wheels": route.wheels.len(),
        "points": prediction.rows.len(),
        "multiplier": args.multiplier,
        "out": args.out,
    });
    let object = summary.as_object_mut().expect("summary is an object");

    // Accuracy against surveyed truth, per parameter over the points that
    // carry it: full-scale error of the means and the fraction of truths
    // inside mean +- multiplier * std.
    #[derive(Default)]
    struct Series {
        means: Vec<f64>,
        stds: Vec<f64>,
        truths: Vec<f64>,
    }
    let mut series_n = Series::default();
    let mut series_phi = Series::default();
    for row in &prediction.rows {
        if let Some(truth) = row.truth_n {
            series_n.means.push(row.mean_n);
            series_n.stds.push(row.std_n);
            series_n.truths.push(truth);
        }
        if let Some(truth) = row.truth_phi {
            series_phi.means.push(row.mean_phi);
            series_phi.stds.push(row.std_phi);
            series_phi.truths.push(truth);
        }
    }
    let mut scores = Vec::new();
    for (key, full_scale, series) in [
        ("n", ctx.config.full_scale_n, &series_n),
        ("phi", ctx.config.full_scale_phi, &series_phi),
    ] {
        object.insert(format!("truth_points_{key}"), json!(series.truths.len()));
        if series.truths.is_empty() {
            continue;
        }
        let fse = full_scale_error(&series.means, &series.truths, full_scale)?;
        let coverage =
            interval_coverage(&series.means, &series.stds, &series.truths, args.multiplier)?;
        object.insert(format!("fse_{key}"), json!(fse));
        object.insert(format!("coverage_{key}"), json!(coverage));
        scores.push((fse, coverage));
    }
    // Headline numbers take the worse parameter.
    if !scores.is_empty() {
        let fse = scores.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
        let coverage = scores.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        object.insert("fse".to_owned(), json!(fse));
        object.insert("coverage".to_owned(), json!(coverage));
    }
    Ok(summary)
}

pub fn flags(ctx: &Ctx, args: &FlagsArgs) -> anyhow::Result<Value> {
    let map_n = codec::tensor::read_property_map(&args.map_n, TerrainParameter::SinkageExponent)?;
    let map_phi = codec::tensor::read_property_map(&args.map_phi, TerrainParameter::FrictionAngle)?;
    let mut thresholds = ctx.config.thresholds;
    if let Some(v) = args.soft_n_max {
        thresholds.soft_n_max = v;
    }
    if let Some(v) = args.slippery_phi_min {
        thresholds.slippery_phi_min_deg = v;
    }
    if let Some(v) = args.sigma_n_max {
        thresholds.sigma_n_max = v;
    }
    if let Some(v) = args.sigma_phi_max {
        thresholds.sigma_phi_max_deg = v;
    }
    let (raster, counts) = hazard_flags(&map_n, &map_phi, &thresholds)?;
    codec::raster::write_flags(&args.out, &raster)?;
    Ok(json!({
        "command": "flags",
        "soft": counts.soft,
        "slippery": counts.slippery,
        "uncertain": counts.uncertain,
        "flagged": counts.flagged,
        "total": counts.total,
        "out": args.out,
    }))
}
