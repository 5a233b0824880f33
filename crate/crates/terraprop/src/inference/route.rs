//! Property profiles along planned wheel tracks.
//!
//! A route is a list of subpixel raster coordinates per wheel. Mean maps
//! are sampled by bilinear interpolation; uncertainty interpolates the
//! variance (the additive quantity in the mixture algebra) and takes the
//! square root afterwards.

use alloc::string::String;
use alloc::vec::Vec;

use super::maps::PropertyMap;
use super::InferenceError;
use crate::math;
use crate::terramech::TerrainParameter;

/// One sample point of a wheel track, in raster coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutePoint {
    pub row: f64,
    pub col: f64,
    /// Distance along the track, m, when the planner provides one.
    pub arclength: Option<f64>,
    /// In-situ identified sinkage exponent at this point, if surveyed.
    pub truth_n: Option<f64>,
    /// In-situ identified friction angle at this point, deg.
    pub truth_phi: Option<f64>,
}

impl RoutePoint {
    pub fn new(row: f64, col: f64) -> Self {
        Self { row, col, arclength: None, truth_n: None, truth_phi: None }
    }
}

/// Ordered track of one wheel.
#[derive(Debug, Clone, PartialEq)]
pub struct WheelTrack {
    pub wheel: String,
    pub points: Vec<RoutePoint>,
}

/// A planned route, one track per wheel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Route {
    pub wheels: Vec<WheelTrack>,
}

/// Prediction at one route point.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutePredictionRow {
    pub wheel: String,
    /// Point index within the wheel's track.
    pub index: usize,
    pub row: f64,
    pub col: f64,
    pub arclength: Option<f64>,
    pub mean_n: f64,
    pub std_n: f64,
    pub mean_phi: f64,
    pub std_phi: f64,
    pub truth_n: Option<f64>,
    pub truth_phi: Option<f64>,
}

/// Flattened predictions, wheels in route order, points in track order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RoutePrediction {
    pub rows: Vec<RoutePredictionRow>,
}

impl RoutePrediction {
    /// Rows of one wheel, in track order.
    pub fn wheel<'a>(&'a self, wheel: &'a str) -> impl Iterator<Item = &'a RoutePredictionRow> + 'a {
        self.rows.iter().filter(move |r| r.wheel == wheel)
    }
}

fn check_point(row: f64, col: f64, map: &PropertyMap) -> Result<(), InferenceError> {
    let oob = InferenceError::OutOfBounds { row, col, width: map.width(), height: map.height() };
    if !row.is_finite() || !col.is_finite() {
        return Err(oob);
    }
    if row < 0.0 || row > (map.height() - 1) as f64 || col < 0.0 || col > (map.width() - 1) as f64 {
        return Err(oob);
    }
    Ok(())
}

/// Bilinear sample of the mean and of the variance at `(row, col)`.
fn sample(map: &PropertyMap, row: f64, col: f64) -> (f64, f64) {
    let r0 = math::floor(row) as usize;
    let c0 = math::floor(col) as usize;
    let r1 = (r0 + 1).min(map.height() - 1);
    let c1 = (c0 + 1).min(map.width() - 1);
    let fr = row - r0 as f64;
    let fc = col - c0 as f64;
    let w00 = (1.0 - fr) * (1.0 - fc);
    let w01 = (1.0 - fr) * fc;
    let w10 = fr * (1.0 - fc);
    let w11 = fr * fc;
    let mean = w00 * map.mean_at(c0, r0)
        + w01 * map.mean_at(c1, r0)
        + w10 * map.mean_at(c0, r1)
        + w11 * map.mean_at(c1, r1);
    let sq = |v: f64| v * v;
    let var = w00 * sq(map.std_at(c0, r0))
        + w01 * sq(map.std_at(c1, r0))
        + w10 * sq(map.std_at(c0, r1))
        + w11 * sq(map.std_at(c1, r1));
    (mean, math::sqrt(var))
}

/// Samples both property maps along every wheel track.
pub fn predict_route(
    map_n: &PropertyMap,
    map_phi: &PropertyMap,
    route: &Route,
) -> Result<RoutePrediction, InferenceError> {
    if map_n.parameter() != TerrainParameter::SinkageExponent {
        return Err(InferenceError::ParameterMismatch {
            expected: TerrainParameter::SinkageExponent,
            got: map_n.parameter(),
        });
    }
    if map_phi.parameter() != TerrainParameter::FrictionAngle {
        return Err(InferenceError::ParameterMismatch {
            expected: TerrainParameter::FrictionAngle,
            got: map_phi.parameter(),
        });
    }
    if map_n.width() != map_phi.width() || map_n.height() != map_phi.height() {
        return Err(InferenceError::ShapeMismatch {
            name: "friction angle map",
            got_width: map_phi.width(),
            got_height: map_phi.height(),
            width: map_n.width(),
            height: map_n.height(),
        });
    }
    let mut rows = Vec::new();
    for track in &route.wheels {
        for (index, point) in track.points.iter().enumerate() {
            check_point(point.row, point.col, map_n)?;
            let (mean_n, std_n) = sample(map_n, point.row, point.col);
            let (mean_phi, std_phi) = sample(map_phi, point.row, point.col);
            rows.push(RoutePredictionRow {
                wheel: track.wheel.clone(),
                index,
                row: point.row,
                col: point.col,
                arclength: point.arclength,
                mean_n,
                std_n,
                mean_phi,
                std_phi,
                truth_n: point.truth_n,
                truth_phi: point.truth_phi,
            });
        }
    }
    Ok(RoutePrediction { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn flat_map(parameter: TerrainParameter, w: usize, h: usize, mean: f64, std: f64) -> PropertyMap {
        PropertyMap::from_raw(parameter, w, h, vec![mean; w * h], vec![std; w * h]).unwrap()
    }

    fn track(wheel: &str, points: Vec<RoutePoint>) -> WheelTrack {
        WheelTrack { wheel: wheel.to_string(), points }
    }

    #[test]
    fn constant_map_returns_the_pixel_values() {
        let n = flat_map(TerrainParameter::SinkageExponent, 4, 4, 1.36, 0.25);
        let phi = flat_map(TerrainParameter::FrictionAngle, 4, 4, 29.6, 8.9);
        let route = Route { wheels: vec![track("left", vec![RoutePoint::new(2.0, 1.0)])] };
        let pred = predict_route(&n, &phi, &route).unwrap();
        assert_eq!(pred.rows.len(), 1);
        assert_eq!(pred.rows[0].mean_n, 1.36);
        assert_eq!(pred.rows[0].std_n, 0.25);
        assert_eq!(pred.rows[0].mean_phi, 29.6);
        assert_eq!(pred.rows[0].std_phi, 8.9);
        assert_eq!(pred.rows[0].wheel, "left");
        assert_eq!(pred.rows[0].index, 0);
    }

    #[test]
    fn grid_points_sample_exactly() {
        let mean: Vec<f64> = (0..12).map(|i| i as f64 * 0.1).collect();
        let std: Vec<f64> = (0..12).map(|i| 0.01 + i as f64 * 0.002).collect();
        let n = PropertyMap::from_raw(TerrainParameter::SinkageExponent, 4, 3, mean, std).unwrap();
        let phi = flat_map(TerrainParameter::FrictionAngle, 4, 3, 30.0, 5.0);
        let points = vec![RoutePoint::new(2.0, 3.0), RoutePoint::new(0.0, 0.0)];
        let pred = predict_route(&n, &phi, &Route { wheels: vec![track("w", points)] }).unwrap();
        assert_eq!(pred.rows[0].mean_n.to_bits(), n.mean_at(3, 2).to_bits());
        assert_eq!(pred.rows[0].std_n.to_bits(), n.std_at(3, 2).to_bits());
        assert_eq!(pred.rows[1].mean_n.to_bits(), n.mean_at(0, 0).to_bits());
    }

    #[test]
    fn variance_interpolates_not_std() {
        // Two pixels, std 1 and 2. Halfway: var = (1 + 4)/2 = 2.5, so the
        // interpolated std is sqrt(2.5), not 1.5.
        let n = PropertyMap::from_raw(
            TerrainParameter::SinkageExponent,
            2,
            1,
            vec![0.0, 0.0],
            vec![1.0, 2.0],
        )
        .unwrap();
        let phi = flat_map(TerrainParameter::FrictionAngle, 2, 1, 0.0, 0.0);
        let route = Route { wheels: vec![track("w", vec![RoutePoint::new(0.0, 0.5)])] };
        let pred = predict_route(&n, &phi, &route).unwrap();
        assert_relative_eq!(pred.rows[0].std_n, 1.5811388300841898, epsilon = 1e-12);
    }

    #[test]
    fn boundary_crossing_transitions_monotonically() {
        // Left half soil (1.36), right half bedrock (0.10).
        let w = 10;
        let mean: Vec<f64> = (0..w).map(|x| if x < 5 { 1.36 } else { 0.10 }).collect();
        let std = vec![0.1; w];
        let n = PropertyMap::from_raw(TerrainParameter::SinkageExponent, w, 1, mean, std).unwrap();
        let phi = flat_map(TerrainParameter::FrictionAngle, w, 1, 30.0, 5.0);
        let points: Vec<RoutePoint> =
            (0..46).map(|i| RoutePoint::new(0.0, 2.0 + i as f64 * 0.1)).collect();
        let pred = predict_route(&n, &phi, &Route { wheels: vec![track("w", points)] }).unwrap();
        let means: Vec<f64> = pred.rows.iter().map(|r| r.mean_n).collect();
        assert_eq!(means[0], 1.36);
        assert_eq!(*means.last().unwrap(), 0.10);
        for pair in means.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12, "non-monotone: {} -> {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn wheel_permutation_permutes_output() {
        let n = flat_map(TerrainParameter::SinkageExponent, 3, 3, 1.0, 0.1);
        let phi = flat_map(TerrainParameter::FrictionAngle, 3, 3, 30.0, 5.0);
        let a = track("left", vec![RoutePoint::new(0.0, 0.0), RoutePoint::new(1.0, 1.0)]);
        let b = track("right", vec![RoutePoint::new(2.0, 2.0)]);
        let fwd = predict_route(&n, &phi, &Route { wheels: vec![a.clone(), b.clone()] }).unwrap();
        let rev = predict_route(&n, &phi, &Route { wheels: vec![b, a] }).unwrap();
        let fwd_left: Vec<_> = fwd.wheel("left").collect();
        let rev_left: Vec<_> = rev.wheel("left").collect();
        assert_eq!(fwd_left, rev_left);
        assert_eq!(fwd.rows.len(), rev.rows.len());
    }

    #[test]
    fn truth_and_arclength_pass_through() {
        let n = flat_map(TerrainParameter::SinkageExponent, 2, 2, 1.0, 0.1);
        let phi = flat_map(TerrainParameter::FrictionAngle, 2, 2, 30.0, 5.0);
        let mut point = RoutePoint::new(1.0, 1.0);
        point.arclength = Some(3.5);
        point.truth_n = Some(0.9);
        point.truth_phi = Some(28.0);
        let pred =
            predict_route(&n, &phi, &Route { wheels: vec![track("w", vec![point])] }).unwrap();
        assert_eq!(pred.rows[0].arclength, Some(3.5));
        assert_eq!(pred.rows[0].truth_n, Some(0.9));
        assert_eq!(pred.rows[0].truth_phi, Some(28.0));
    }

    #[test]
    fn out_of_bounds_and_mismatched_maps_are_rejected() {
        let n = flat_map(TerrainParameter::SinkageExponent, 3, 3, 1.0, 0.1);
        let phi = flat_map(TerrainParameter::FrictionAngle, 3, 3, 30.0, 5.0);
        for bad in [
            RoutePoint::new(-0.1, 1.0),
            RoutePoint::new(1.0, 2.5),
            RoutePoint::new(f64::NAN, 0.0),
        ] {
            let route = Route { wheels: vec![track("w", vec![bad])] };
            assert!(matches!(
                predict_route(&n, &phi, &route),
                Err(InferenceError::OutOfBounds { .. })
            ));
        }
        let phi_small = flat_map(TerrainParameter::FrictionAngle, 2, 3, 30.0, 5.0);
        let route = Route { wheels: vec![track("w", vec![RoutePoint::new(0.0, 0.0)])] };
        assert!(matches!(
            predict_route(&n, &phi_small, &route),
            Err(InferenceError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            predict_route(&phi, &phi, &route),
            Err(InferenceError::ParameterMismatch { .. })
        ));
    }
}
