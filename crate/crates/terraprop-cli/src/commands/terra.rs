//! Wheel-soil subcommands: parameter identification from interaction
//! logs and Gaussian model fitting from identification reports.

use anyhow::ensure;
use serde_json::{json, Value};
use terraprop::terramech::{
    downsample_log, fit_property_model, identify_dominant, moving_average,
    untraversable_defaults_named, IdentifiedProperties,
};

use super::Ctx;
use crate::cli::{FitArgs, IdentifyArgs};
use crate::codec::{self, logs::ReportRow};

pub fn identify(ctx: &Ctx, args: &IdentifyArgs) -> anyhow::Result<Value> {
    let classes = codec::model::read_class_set(&args.classes)?;
    let samples = codec::logs::read_interaction_log(&args.log, &classes)?;
    let window = args.smooth.unwrap_or(ctx.config.smoothing_window);
    let smoothed = moving_average(&samples, window)?;
    let reduced = match args.downsample.or(ctx.config.downsample_period) {
        Some(period) => downsample_log(&smoothed, period)?,
        None => smoothed,
    };

    let mut rows = Vec::with_capacity(reduced.len());
    let (mut ok, mut unconverged, mut rejected) = (0usize, 0usize, 0usize);
    for sample in &reduced {
        match identify_dominant(sample, &ctx.config.wheel, &ctx.config.soil, &ctx.config.solver) {
            Ok(props) => {
                if props.converged {
                    ok += 1;
                } else {
                    unconverged += 1;
                }
                rows.push(ReportRow::from_identified(&props));
            }
            Err(reason) => {
                rejected += 1;
                rows.push(ReportRow {
                    t: sample.t,
                    label: sample.label,
                    status: reason.to_string(),
                    result: None,
                });
            }
        }
    }
    codec::logs::write_report(&args.out, &rows, &classes)?;
    Ok(json!({
        "command": "identify",
        "input_rows": samples.len(),
        "rows": rows.len(),
        "ok": ok,
        "unconverged": unconverged,
        "rejected": rejected,
        "out": args.out,
    }))
}

pub fn fit(_ctx: &Ctx, args: &FitArgs) -> anyhow::Result<Value> {
    let classes = codec::model::read_class_set(&args.classes)?;
    for name in args.default_hard.iter().chain(&args.default_zero) {
        ensure!(
            classes.index_of(name).is_some(),
            "{}: class set has no class named {name:?}",
            args.classes.display()
        );
    }
    let report = codec::logs::read_report(&args.report, &classes)?;
    let samples: Vec<IdentifiedProperties> =
        report.iter().filter_map(ReportRow::to_identified).collect();

    let hard: Vec<&str> = args.default_hard.iter().map(String::as_str).collect();
    let zero: Vec<&str> = args.default_zero.iter().map(String::as_str).collect();
    let defaults = untraversable_defaults_named(&classes, &hard, &zero);
    let model = fit_property_model(&samples, &classes, &defaults)?;
    codec::model::write_property_model(&args.out, &model, &classes)?;

    let sample_counts: Vec<usize> = model.classes().iter().map(|c| c.sample_count).collect();
    let defaulted: Vec<&str> = classes
        .names()
        .zip(model.classes())
        .filter(|(_, props)| props.sample_count == 0)
        .map(|(name, _)| name)
        .collect();
    Ok(json!({
        "command": "fit",
        "classes": classes.len(),
        "report_rows": report.len(),
        "used_samples": samples.iter().filter(|s| s.converged && s.label.is_some()).count(),
        "sample_counts": sample_counts,
        "defaulted": defaulted,
        "out": args.out,
    }))
}
