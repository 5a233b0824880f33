//! CSV codecs: interaction logs, identification reports, pose tables,
//! routes, route predictions, annotation-ratio curves, and metrics.
//!
//! Columns are resolved by header name, so column order is free and a
//! missing column is reported by name. Floats are printed in shortest
//! round-trip form. Class labels cross the boundary as class names; an
//! empty label cell means "unknown".

use std::path::Path;

use csv::StringRecord;
use terraprop::inference::RoutePredictionRow;
use terraprop::inference::{Route, RoutePoint, WheelTrack};
use terraprop::labeling::Pose;
use terraprop::segmentation::{RatioPoint, SegMetrics};
use terraprop::terramech::{IdentifiedProperties, InteractionSample};
use terraprop::TerrainClassSet;

use super::{fmt_f64, io_err, write_atomic, CodecError, Result};

/// Column indices resolved from a header row.
struct Columns<'a> {
    path: &'a Path,
    header: StringRecord,
}

impl<'a> Columns<'a> {
    fn new(path: &'a Path, header: StringRecord) -> Self {
        Self { path, header }
    }

    fn required(&self, name: &'static str) -> Result<usize> {
        self.optional(name).ok_or_else(|| CodecError::MissingColumn {
            path: self.path.to_path_buf(),
            column: name,
        })
    }

    fn optional(&self, name: &'static str) -> Option<usize> {
        self.header.iter().position(|h| h.trim() == name)
    }
}

fn open_csv(path: &Path) -> Result<(csv::Reader<std::fs::File>, StringRecord)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| {
            if matches!(e.kind(), csv::ErrorKind::Io(_)) {
                match e.into_kind() {
                    csv::ErrorKind::Io(io) => io_err(path, io),
                    _ => unreachable!("kind checked"),
                }
            } else {
                CodecError::Csv { path: path.to_path_buf(), source: e }
            }
        })?;
    let header = reader
        .headers()
        .map_err(|e| CodecError::Csv { path: path.to_path_buf(), source: e })?
        .clone();
    Ok((reader, header))
}

fn record_line(record: &StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn cell<'r>(record: &'r StringRecord, index: usize) -> &'r str {
    record.get(index).unwrap_or("")
}

fn parse_f64(path: &Path, record: &StringRecord, index: usize, field: &'static str) -> Result<f64> {
    let text = cell(record, index);
    text.parse().map_err(|_| CodecError::BadField {
        path: path.to_path_buf(),
        line: record_line(record),
        field,
        value: text.to_owned(),
    })
}

fn parse_label(
    path: &Path,
    record: &StringRecord,
    index: usize,
    classes: &TerrainClassSet,
) -> Result<Option<usize>> {
    let text = cell(record, index);
    if text.is_empty() {
        return Ok(None);
    }
    classes.index_of(text).map(Some).ok_or_else(|| CodecError::BadField {
        path: path.to_path_buf(),
        line: record_line(record),
        field: "label",
        value: text.to_owned(),
    })
}

fn records(
    path: &Path,
    reader: csv::Reader<std::fs::File>,
) -> impl Iterator<Item = Result<StringRecord>> + '_ {
    reader.into_records().map(move |r| {
        r.map_err(|e| CodecError::Csv { path: path.to_path_buf(), source: e })
    })
}

fn finish_csv(path: &Path, writer: csv::Writer<Vec<u8>>) -> Result<()> {
    let bytes = writer
        .into_inner()
        .map_err(|e| io_err(path, std::io::Error::other(e.to_string())))?;
    write_atomic(path, &bytes)
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

// ---- interaction logs -------------------------------------------------

pub const INTERACTION_HEADER: [&str; 7] = ["t", "F_N", "M_R", "omega", "v", "z", "label"];

pub fn write_interaction_log(
    path: &Path,
    samples: &[InteractionSample],
    classes: &TerrainClassSet,
) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(INTERACTION_HEADER).expect("vec write");
    for s in samples {
        let label = match s.label {
            Some(k) => classes.name(k).unwrap_or_default().to_owned(),
            None => String::new(),
        };
        w.write_record([
            fmt_f64(s.t),
            fmt_f64(s.vertical_load),
            fmt_f64(s.drive_torque),
            fmt_f64(s.angular_velocity),
            fmt_f64(s.forward_speed),
            fmt_f64(s.sinkage),
            label,
        ])
        .expect("vec write");
    }
    finish_csv(path, w)
}

pub fn read_interaction_log(
    path: &Path,
    classes: &TerrainClassSet,
) -> Result<Vec<InteractionSample>> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let [t, f_n, m_r, omega, v, z] = [
        cols.required("t")?,
        cols.required("F_N")?,
        cols.required("M_R")?,
        cols.required("omega")?,
        cols.required("v")?,
        cols.required("z")?,
    ];
    let label = cols.required("label")?;
    let mut samples = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        samples.push(InteractionSample {
            t: parse_f64(path, &record, t, "t")?,
            vertical_load: parse_f64(path, &record, f_n, "F_N")?,
            drive_torque: parse_f64(path, &record, m_r, "M_R")?,
            angular_velocity: parse_f64(path, &record, omega, "omega")?,
            forward_speed: parse_f64(path, &record, v, "v")?,
            sinkage: parse_f64(path, &record, z, "z")?,
            label: parse_label(path, &record, label, classes)?,
        });
    }
    Ok(samples)
}

// ---- identification reports -------------------------------------------

/// One row of an identification report.
///
/// `status` is `"ok"`, `"unconverged"`, or a rejection reason; rejected
/// rows carry no numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub t: f64,
    pub label: Option<usize>,
    pub status: String,
    pub result: Option<ReportValues>,
}

/// The identified numbers of a non-rejected report row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportValues {
    pub n_exp: f64,
    pub phi_deg: f64,
    pub slip: f64,
    pub entry_angle: f64,
    pub residual_load: f64,
    pub residual_torque: f64,
}

impl ReportRow {
    pub fn from_identified(p: &IdentifiedProperties) -> Self {
        Self {
            t: p.t,
            label: p.label,
            status: if p.converged { "ok".into() } else { "unconverged".into() },
            result: Some(ReportValues {
                n_exp: p.n_exp,
                phi_deg: p.phi_deg,
                slip: p.slip,
                entry_angle: p.entry_angle,
                residual_load: p.residual_load,
                residual_torque: p.residual_torque,
            }),
        }
    }

    /// The row as solver output, if it was not rejected.
    pub fn to_identified(&self) -> Option<IdentifiedProperties> {
        let v = self.result?;
        Some(IdentifiedProperties {
            n_exp: v.n_exp,
            phi_deg: v.phi_deg,
            slip: v.slip,
            entry_angle: v.entry_angle,
            converged: self.status == "ok",
            residual_load: v.residual_load,
            residual_torque: v.residual_torque,
            label: self.label,
            t: self.t,
        })
    }
}

pub const REPORT_HEADER: [&str; 9] =
    ["t", "label", "status", "N", "phi", "slip", "theta1", "residual_F", "residual_M"];

pub fn write_report(path: &Path, rows: &[ReportRow], classes: &TerrainClassSet) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(REPORT_HEADER).expect("vec write");
    for row in rows {
        let label = match row.label {
            Some(k) => classes.name(k).unwrap_or_default().to_owned(),
            None => String::new(),
        };
        let values = match &row.result {
            Some(v) => [
                fmt_f64(v.n_exp),
                fmt_f64(v.phi_deg),
                fmt_f64(v.slip),
                fmt_f64(v.entry_angle),
                fmt_f64(v.residual_load),
                fmt_f64(v.residual_torque),
            ],
            None => Default::default(),
        };
        let mut record = vec![fmt_f64(row.t), label, row.status.clone()];
        record.extend(values);
        w.write_record(&record).expect("vec write");
    }
    finish_csv(path, w)
}

pub fn read_report(path: &Path, classes: &TerrainClassSet) -> Result<Vec<ReportRow>> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let t = cols.required("t")?;
    let label = cols.required("label")?;
    let status_col = cols.required("status")?;
    let numeric = [
        cols.required("N")?,
        cols.required("phi")?,
        cols.required("slip")?,
        cols.required("theta1")?,
        cols.required("residual_F")?,
        cols.required("residual_M")?,
    ];
    let names: [&'static str; 6] = ["N", "phi", "slip", "theta1", "residual_F", "residual_M"];
    let mut rows = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        let status = cell(&record, status_col).to_owned();
        let rejected = status != "ok" && status != "unconverged";
        let result = if rejected {
            None
        } else {
            let mut values = [0.0f64; 6];
            for ((slot, &index), name) in values.iter_mut().zip(&numeric).zip(names) {
                *slot = parse_f64(path, &record, index, name)?;
            }
            Some(ReportValues {
                n_exp: values[0],
                phi_deg: values[1],
                slip: values[2],
                entry_angle: values[3],
                residual_load: values[4],
                residual_torque: values[5],
            })
        };
        rows.push(ReportRow {
            t: parse_f64(path, &record, t, "t")?,
            label: parse_label(path, &record, label, classes)?,
            status,
            result,
        });
    }
    Ok(rows)
}

// ---- poses --------------------------------------------------------------

pub fn write_poses(path: &Path, poses: &[(String, Pose)]) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(["frame", "qw", "qx", "qy", "qz", "tx", "ty", "tz"]).expect("vec write");
    for (frame, pose) in poses {
        let q = rotation_to_quaternion(pose.rotation());
        let t = pose.translation();
        w.write_record([
            frame.clone(),
            fmt_f64(q[0]),
            fmt_f64(q[1]),
            fmt_f64(q[2]),
            fmt_f64(q[3]),
            fmt_f64(t[0]),
            fmt_f64(t[1]),
            fmt_f64(t[2]),
        ])
        .expect("vec write");
    }
    finish_csv(path, w)
}

/// Unit quaternion `(w, x, y, z)` of a rotation matrix, w nonnegative.
fn rotation_to_quaternion(m: [[f64; 3]; 3]) -> [f64; 4] {
    // Shepperd's method: pick the largest diagonal combination for
    // numerical safety, then normalize.
    let trace = m[0][0] + m[1][1] + m[2][2];
    let (mut w, mut x, mut y, mut z);
    if trace > 0.0 {
        let s = (trace + 1.0).sqrt() * 2.0;
        w = 0.25 * s;
        x = (m[2][1] - m[1][2]) / s;
        y = (m[0][2] - m[2][0]) / s;
        z = (m[1][0] - m[0][1]) / s;
    } else if m[0][0] > m[1][1] && m[0][0] > m[2][2] {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
        w = (m[2][1] - m[1][2]) / s;
        x = 0.25 * s;
        y = (m[0][1] + m[1][0]) / s;
        z = (m[0][2] + m[2][0]) / s;
    } else if m[1][1] > m[2][2] {
        let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
        w = (m[0][2] - m[2][0]) / s;
        x = (m[0][1] + m[1][0]) / s;
        y = 0.25 * s;
        z = (m[1][2] + m[2][1]) / s;
    } else {
        let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
        w = (m[1][0] - m[0][1]) / s;
        x = (m[0][2] + m[2][0]) / s;
        y = (m[1][2] + m[2][1]) / s;
        z = 0.25 * s;
    }
    let norm = (w * w + x * x + y * y + z * z).sqrt();
    w /= norm;
    x /= norm;
    y /= norm;
    z /= norm;
    if w < 0.0 {
        [-w, -x, -y, -z]
    } else {
        [w, x, y, z]
    }
}

pub fn read_poses(path: &Path) -> Result<Vec<(String, Pose)>> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let frame = cols.required("frame")?;
    let q = [
        cols.required("qw")?,
        cols.required("qx")?,
        cols.required("qy")?,
        cols.required("qz")?,
    ];
    let t = [cols.required("tx")?, cols.required("ty")?, cols.required("tz")?];
    let mut poses = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        let qv = [
            parse_f64(path, &record, q[0], "qw")?,
            parse_f64(path, &record, q[1], "qx")?,
            parse_f64(path, &record, q[2], "qy")?,
            parse_f64(path, &record, q[3], "qz")?,
        ];
        let tv = [
            parse_f64(path, &record, t[0], "tx")?,
            parse_f64(path, &record, t[1], "ty")?,
            parse_f64(path, &record, t[2], "tz")?,
        ];
        let pose = Pose::from_quaternion(qv[0], qv[1], qv[2], qv[3], tv).map_err(|e| {
            CodecError::BadField {
                path: path.to_path_buf(),
                line: record_line(&record),
                field: "pose",
                value: e.to_string(),
            }
        })?;
        poses.push((cell(&record, frame).to_owned(), pose));
    }
    Ok(poses)
}

/// Finds a frame by name in a pose table.
pub fn find_pose<'a>(
    path: &Path,
    poses: &'a [(String, Pose)],
    frame: &str,
) -> Result<&'a Pose> {
    poses
        .iter()
        .find(|(name, _)| name == frame)
        .map(|(_, pose)| pose)
        .ok_or_else(|| CodecError::BadContent {
            path: path.to_path_buf(),
            what: format!("frame {frame:?} not in pose table"),
        })
}

// ---- routes --------------------------------------------------------------

/// Reads a route CSV, grouping rows into wheel tracks by first appearance.
///
/// Required columns: `wheel,row,col`. Optional: `arclength`, and
/// `truth_N`/`truth_phi` (either both or neither per row).
pub fn read_route(path: &Path) -> Result<Route> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let wheel = cols.required("wheel")?;
    let row_col = cols.required("row")?;
    let col_col = cols.required("col")?;
    let arclength = cols.optional("arclength");
    let truth_n = cols.optional("truth_N");
    let truth_phi = cols.optional("truth_phi");

    let mut wheels: Vec<WheelTrack> = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        let mut point = RoutePoint::new(
            parse_f64(path, &record, row_col, "row")?,
            parse_f64(path, &record, col_col, "col")?,
        );
        if let Some(index) = arclength {
            if !cell(&record, index).is_empty() {
                point.arclength = Some(parse_f64(path, &record, index, "arclength")?);
            }
        }
        if let Some(index) = truth_n {
            if !cell(&record, index).is_empty() {
                point.truth_n = Some(parse_f64(path, &record, index, "truth_N")?);
            }
        }
        if let Some(index) = truth_phi {
            if !cell(&record, index).is_empty() {
                point.truth_phi = Some(parse_f64(path, &record, index, "truth_phi")?);
            }
        }
        let name = cell(&record, wheel).to_owned();
        match wheels.iter_mut().find(|track| track.wheel == name) {
            Some(track) => track.points.push(point),
            None => wheels.push(WheelTrack { wheel: name, points: vec![point] }),
        }
    }
    Ok(Route { wheels })
}

pub const PREDICTION_HEADER: [&str; 10] = [
    "wheel", "index", "row", "col", "mu_N", "sigma_N", "mu_phi", "sigma_phi", "truth_N",
    "truth_phi",
];

pub fn write_route_prediction(path: &Path, rows: &[RoutePredictionRow]) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(PREDICTION_HEADER).expect("vec write");
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for row in rows {
        w.write_record([
            row.wheel.clone(),
            row.index.to_string(),
            fmt_f64(row.row),
            fmt_f64(row.col),
            fmt_f64(row.mean_n),
            fmt_f64(row.std_n),
            fmt_f64(row.mean_phi),
            fmt_f64(row.std_phi),
            opt(row.truth_n),
            opt(row.truth_phi),
        ])
        .expect("vec write");
    }
    finish_csv(path, w)
}

pub fn read_route_prediction(path: &Path) -> Result<Vec<RoutePredictionRow>> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let wheel = cols.required("wheel")?;
    let index = cols.required("index")?;
    let row_col = cols.required("row")?;
    let col_col = cols.required("col")?;
    let mu_n = cols.required("mu_N")?;
    let sigma_n = cols.required("sigma_N")?;
    let mu_phi = cols.required("mu_phi")?;
    let sigma_phi = cols.required("sigma_phi")?;
    let truth_n = cols.required("truth_N")?;
    let truth_phi = cols.required("truth_phi")?;
    let mut rows = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        let index_text = cell(&record, index);
        let index_value: usize = index_text.parse().map_err(|_| CodecError::BadField {
            path: path.to_path_buf(),
            line: record_line(&record),
            field: "index",
            value: index_text.to_owned(),
        })?;
        let opt = |col: usize, name: &'static str| -> Result<Option<f64>> {
            if cell(&record, col).is_empty() {
                Ok(None)
            } else {
                parse_f64(path, &record, col, name).map(Some)
            }
        };
        rows.push(RoutePredictionRow {
            wheel: cell(&record, wheel).to_owned(),
            index: index_value,
            row: parse_f64(path, &record, row_col, "row")?,
            col: parse_f64(path, &record, col_col, "col")?,
            arclength: None,
            mean_n: parse_f64(path, &record, mu_n, "mu_N")?,
            std_n: parse_f64(path, &record, sigma_n, "sigma_N")?,
            mean_phi: parse_f64(path, &record, mu_phi, "mu_phi")?,
            std_phi: parse_f64(path, &record, sigma_phi, "sigma_phi")?,
            truth_n: opt(truth_n, "truth_N")?,
            truth_phi: opt(truth_phi, "truth_phi")?,
        });
    }
    Ok(rows)
}

// ---- experiment and metrics tables ----------------------------------------

pub fn write_ratio_curve(path: &Path, points: &[RatioPoint]) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(["ratio", "full_count", "pixel_accuracy", "mean_iou"]).expect("vec write");
    for p in points {
        w.write_record([
            fmt_f64(p.ratio),
            p.full_count.to_string(),
            fmt_f64(p.pixel_accuracy),
            fmt_f64(p.mean_iou),
        ])
        .expect("vec write");
    }
    finish_csv(path, w)
}

pub fn read_ratio_curve(path: &Path) -> Result<Vec<RatioPoint>> {
    let (reader, header) = open_csv(path)?;
    let cols = Columns::new(path, header);
    let ratio = cols.required("ratio")?;
    let full_count = cols.required("full_count")?;
    let accuracy = cols.required("pixel_accuracy")?;
    let miou = cols.required("mean_iou")?;
    let mut points = Vec::new();
    for record in records(path, reader) {
        let record = record?;
        let count_text = cell(&record, full_count);
        let count: usize = count_text.parse().map_err(|_| CodecError::BadField {
            path: path.to_path_buf(),
            line: record_line(&record),
            field: "full_count",
            value: count_text.to_owned(),
        })?;
        points.push(RatioPoint {
            ratio: parse_f64(path, &record, ratio, "ratio")?,
            full_count: count,
            pixel_accuracy: parse_f64(path, &record, accuracy, "pixel_accuracy")?,
            mean_iou: parse_f64(path, &record, miou, "mean_iou")?,
        });
    }
    Ok(points)
}

pub fn write_metrics(path: &Path, metrics: &SegMetrics, classes: &TerrainClassSet) -> Result<()> {
    let mut w = csv_writer();
    w.write_record(["class", "iou", "recall"]).expect("vec write");
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for k in 0..classes.len() {
        w.write_record([
            classes.name(k).expect("index in range").to_owned(),
            opt(metrics.per_class_iou[k]),
            opt(metrics.per_class_recall[k]),
        ])
        .expect("vec write");
    }
    finish_csv(path, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes() -> TerrainClassSet {
        TerrainClassSet::standard()
    }

    #[test]
    fn interaction_log_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        let samples = vec![
            InteractionSample {
                t: 0.0,
                vertical_load: 8.162774902209843,
                drive_torque: 0.4030959173457987,
                angular_velocity: 2.0,
                forward_speed: 0.232,
                sinkage: 0.0062528915224151625,
                label: Some(0),
            },
            InteractionSample {
                t: 0.25,
                vertical_load: 390.5,
                drive_torque: 20.7,
                angular_velocity: 1.0,
                forward_speed: 0.08,
                sinkage: 0.012,
                label: None,
            },
        ];
        write_interaction_log(&path, &samples, &classes()).unwrap();
        let back = read_interaction_log(&path, &classes()).unwrap();
        assert_eq!(back, samples);
    }

    #[test]
    fn missing_column_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        std::fs::write(&path, "t,F_N,M_R,omega,v\n0,1,2,3,4\n").unwrap();
        match read_interaction_log(&path, &classes()).unwrap_err() {
            CodecError::MissingColumn { column, .. } => assert_eq!(column, "z"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_label_name_is_an_error_with_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        std::fs::write(
            &path,
            "t,F_N,M_R,omega,v,z,label\n0,1,0.1,2,0.2,0.005,soil\n0.1,1,0.1,2,0.2,0.005,mud\n",
        )
        .unwrap();
        match read_interaction_log(&path, &classes()).unwrap_err() {
            CodecError::BadField { line, field, value, .. } => {
                assert_eq!((line, field, value.as_str()), (3, "label", "mud"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn report_rows_round_trip_including_rejections() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        let rows = vec![
            ReportRow {
                t: 0.5,
                label: Some(1),
                status: "ok".into(),
                result: Some(ReportValues {
                    n_exp: 1.36,
                    phi_deg: 29.6,
                    slip: 0.2,
                    entry_angle: 0.3,
                    residual_load: 1e-7,
                    residual_torque: -2e-8,
                }),
            },
            ReportRow {
                t: 0.75,
                label: None,
                status: "nonpositive vertical load -3 N".into(),
                result: None,
            },
        ];
        write_report(&path, &rows, &classes()).unwrap();
        let back = read_report(&path, &classes()).unwrap();
        assert_eq!(back, rows);
        assert!(back[0].to_identified().unwrap().converged);
        assert!(back[1].to_identified().is_none());
    }

    #[test]
    fn poses_round_trip_through_quaternions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("poses.csv");
        let half = std::f64::consts::FRAC_1_SQRT_2;
        let poses = vec![
            ("a".to_owned(), Pose::identity()),
            (
                "b".to_owned(),
                Pose::from_quaternion(half, 0.0, 0.0, half, [0.5, -0.25, 2.0]).unwrap(),
            ),
        ];
        write_poses(&path, &poses).unwrap();
        let back = read_poses(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].0, "a");
        let rot = back[1].1.rotation();
        let expect = poses[1].1.rotation();
        for i in 0..3 {
            for j in 0..3 {
                assert!((rot[i][j] - expect[i][j]).abs() < 1e-12);
            }
        }
        assert_eq!(back[1].1.translation(), [0.5, -0.25, 2.0]);
        assert!(find_pose(&path, &back, "b").is_ok());
        assert!(find_pose(&path, &back, "c").is_err());
    }

    #[test]
    fn route_groups_rows_by_wheel_in_first_appearance_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("route.csv");
        std::fs::write(
            &path,
            "wheel,row,col,arclength,truth_N,truth_phi\n\
             left,0,0,0.0,1.5,30\n\
             right,1,1,,,\n\
             left,2,0.5,0.1,1.25,28\n",
        )
        .unwrap();
        let route = read_route(&path).unwrap();
        assert_eq!(route.wheels.len(), 2);
        assert_eq!(route.wheels[0].wheel, "left");
        assert_eq!(route.wheels[0].points.len(), 2);
        assert_eq!(route.wheels[0].points[1].truth_n, Some(1.25));
        assert_eq!(route.wheels[1].points[0].arclength, None);
        assert_eq!(route.wheels[1].points[0].truth_phi, None);
    }

    #[test]
    fn route_without_optional_columns_still_reads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("route.csv");
        std::fs::write(&path, "wheel,row,col\nleft,0,0\n").unwrap();
        let route = read_route(&path).unwrap();
        assert_eq!(route.wheels[0].points[0].truth_n, None);
    }

    #[test]
    fn prediction_rows_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pred.csv");
        let rows = vec![RoutePredictionRow {
            wheel: "left".into(),
            index: 0,
            row: 1.5,
            col: 2.0,
            arclength: None,
            mean_n: 0.7300000000000001,
            std_n: 0.6543699259593155,
            mean_phi: 38.45,
            std_phi: 17.110596132221684,
            truth_n: Some(0.73),
            truth_phi: None,
        }];
        write_route_prediction(&path, &rows).unwrap();
        assert_eq!(read_route_prediction(&path).unwrap(), rows);
    }

    #[test]
    fn ratio_curve_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ratio.csv");
        let points = vec![
            RatioPoint { ratio: 0.0, full_count: 0, pixel_accuracy: 0.71, mean_iou: 0.5 },
            RatioPoint { ratio: 1.0, full_count: 20, pixel_accuracy: 0.95, mean_iou: 0.88 },
        ];
        write_ratio_curve(&path, &points).unwrap();
        assert_eq!(read_ratio_curve(&path).unwrap(), points);
    }
}
