//! Cross-frame label propagation.

use serde_json::{json, Value};
use terraprop::labeling::propagate_labels;

use super::Ctx;
use crate::cli::PropagateArgs;
use crate::codec;

pub fn propagate(ctx: &Ctx, args: &PropagateArgs) -> anyhow::Result<Value> {
    let (labels, classes) = codec::raster::read_labels(&args.labels)?;
    let src_depth = codec::tensor::read_depth(&args.src_depth)?;
    let dst_depth = codec::tensor::read_depth(&args.dst_depth)?;
    let poses = codec::logs::read_poses(&args.poses)?;
    let src_pose = codec::logs::find_pose(&args.poses, &poses, &args.src_frame)?;
    let dst_pose = codec::logs::find_pose(&args.poses, &poses, &args.dst_frame)?;
    let camera = codec::model::read_camera(&args.camera)?;
    let z_tol = args.z_tol.unwrap_or(ctx.config.z_tol);

    let (propagated, stats) =
        propagate_labels(&labels, &src_depth, src_pose, dst_pose, &dst_depth, &camera, z_tol)?;
    codec::raster::write_labels(&args.out, &propagated, classes)?;
    Ok(json!({
        "command": "propagate",
        "labeled": stats.labeled,
        "propagated": stats.propagated,
        "occluded": stats.occluded,
        "out_of_view": stats.out_of_view,
        "invalid_depth": stats.invalid_depth,
        "z_tol": z_tol,
        "out": args.out,
    }))
}
