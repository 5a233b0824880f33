//! Multi-threaded property inference. Rows are partitioned into
//! contiguous chunks, one per worker, and every chunk runs the same
//! row-major kernel the single-threaded path uses, so the output rasters
//! are bit-identical regardless of thread count.

use terraprop::inference::{
    infer_property_maps, infer_property_rows, InferenceError, MomentTable, PropertyMap,
};
use terraprop::raster::ProbabilityMap;
use terraprop::terramech::{TerrainParameter, TerrainPropertyModel};

/// Both parameter maps plus how many pixels had a negative roundoff
/// variance clamped to zero (normally 0; the raw count is folded across
/// chunks because [`PropertyMap::from_raw`] cannot carry it).
pub struct InferredMaps {
    pub map_n: PropertyMap,
    pub map_phi: PropertyMap,
    pub clamps_n: usize,
    pub clamps_phi: usize,
}

/// Runs mixture-moment inference over `prob` on `threads` workers.
pub fn infer_maps_threaded(
    prob: &ProbabilityMap,
    model: &TerrainPropertyModel,
    threads: usize,
) -> Result<InferredMaps, InferenceError> {
    let threads = threads.max(1);
    if threads == 1 || prob.height() < 2 {
        let (map_n, map_phi) = infer_property_maps(prob, model)?;
        let clamps_n = map_n.negative_variance_clamps();
        let clamps_phi = map_phi.negative_variance_clamps();
        return Ok(InferredMaps { map_n, map_phi, clamps_n, clamps_phi });
    }

    let width = prob.width();
    let height = prob.height();
    let chunk_rows = height.div_ceil(threads.min(height));
    let mut out = Vec::with_capacity(2);
    for parameter in [TerrainParameter::SinkageExponent, TerrainParameter::FrictionAngle] {
        let table = MomentTable::new(model, parameter);
        let mut mean = vec![0.0; width * height];
        let mut std_dev = vec![0.0; width * height];
        let clamps = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            let mut mean_rest = mean.as_mut_slice();
            let mut std_rest = std_dev.as_mut_slice();
            let mut row = 0;
            while row < height {
                let take = chunk_rows.min(height - row);
                let (mean_chunk, tail) =
                    std::mem::take(&mut mean_rest).split_at_mut(take * width);
                mean_rest = tail;
                let (std_chunk, tail) = std::mem::take(&mut std_rest).split_at_mut(take * width);
                std_rest = tail;
                let range = row..row + take;
                let table = &table;
                handles.push(
                    scope.spawn(move || infer_property_rows(prob, table, range, mean_chunk, std_chunk)),
                );
                row += take;
            }
            let mut clamps = 0usize;
            for handle in handles {
                clamps += handle.join().expect("inference worker never panics")?;
            }
            Ok::<usize, InferenceError>(clamps)
        })?;
        out.push((PropertyMap::from_raw(parameter, width, height, mean, std_dev)?, clamps));
    }
    let (map_phi, clamps_phi) = out.pop().expect("two maps pushed");
    let (map_n, clamps_n) = out.pop().expect("two maps pushed");
    Ok(InferredMaps { map_n, map_phi, clamps_n, clamps_phi })
}
