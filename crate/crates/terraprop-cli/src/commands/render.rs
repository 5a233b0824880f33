//! Raster visualization: property heatmaps, label paint, and overlays.

use anyhow::ensure;
use serde_json::{json, Value};
use terraprop::terramech::TerrainParameter;

use super::Ctx;
use crate::cli::{ParameterArg, PlaneArg, RenderArgs, RenderMode};
use crate::codec;
use crate::heatmap;

pub fn render(_ctx: &Ctx, args: &RenderArgs) -> anyhow::Result<Value> {
    match &args.mode {
        RenderMode::Heatmap(args) => {
            let parameter = match args.parameter {
                ParameterArg::N => TerrainParameter::SinkageExponent,
                ParameterArg::Phi => TerrainParameter::FrictionAngle,
            };
            let map = codec::tensor::read_property_map(&args.map, parameter)?;
            let values = match args.plane {
                PlaneArg::Mean => map.means(),
                PlaneArg::Std => map.std_devs(),
            };
            let data_min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let data_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut min = args.min.unwrap_or(data_min);
            let mut max = args.max.unwrap_or(data_max);
            // A constant plane has no auto range; center it on the LUT.
            if args.min.is_none() && args.max.is_none() && min == max {
                min -= 0.5;
                max += 0.5;
            }
            let image = heatmap::render_heatmap(values, map.width(), map.height(), min, max)?;
            codec::ppm::write_image(&args.out, &image)?;
            Ok(json!({
                "command": "render",
                "mode": "heatmap",
                "plane": match args.plane { PlaneArg::Mean => "mean", PlaneArg::Std => "std" },
                "min": min,
                "max": max,
                "width": image.width(),
                "height": image.height(),
                "out": args.out,
            }))
        }
        RenderMode::Labels(args) => {
            let (labels, count) = codec::raster::read_labels(&args.labels)?;
            let classes = codec::model::read_class_set(&args.classes)?;
            ensure!(
                count == classes.len(),
                "{}: declares {count} classes, class set has {}",
                args.labels.display(),
                classes.len()
            );
            let image = heatmap::render_labels(&labels, &classes)?;
            codec::ppm::write_image(&args.out, &image)?;
            Ok(json!({
                "command": "render",
                "mode": "labels",
                "width": image.width(),
                "height": image.height(),
                "out": args.out,
            }))
        }
        RenderMode::Overlay(args) => {
            let base = codec::ppm::read_image(&args.image)?;
            let (labels, count) = codec::raster::read_labels(&args.labels)?;
            let classes = codec::model::read_class_set(&args.classes)?;
            ensure!(
                count == classes.len(),
                "{}: declares {count} classes, class set has {}",
                args.labels.display(),
                classes.len()
            );
            let image = heatmap::render_overlay(&base, &labels, &classes, args.alpha)?;
            codec::ppm::write_image(&args.out, &image)?;
            Ok(json!({
                "command": "render",
                "mode": "overlay",
                "alpha": args.alpha,
                "width": image.width(),
                "height": image.height(),
                "out": args.out,
            }))
        }
    }
}
