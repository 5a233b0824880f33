//! File-format codecs: PPM images, raw rasters and tensors with JSON
//! sidecars, JSON model documents, and CSV logs.
//!
//! Every writer goes through [`write_atomic`], so a failed run never
//! leaves a partial file behind, and every codec round-trips its data
//! bit-exactly: integers and float32 payloads are stored raw (little
//! endian), and float64 values in JSON or CSV are printed with the
//! shortest representation that parses back to the identical bits.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub mod logs;
pub mod model;
pub mod ppm;
pub mod raster;
pub mod tensor;

/// What went wrong with a file, and in which file.
#[derive(Debug, thiserror::Error)]
pub enum CodecError {
    // The cause is chained, not embedded, so error reporters that walk
    // sources do not print it twice.
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: malformed CSV")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: expected {expected:?} magic")]
    BadMagic { path: PathBuf, expected: &'static str },
    #[error("{path}: bad header: {what}")]
    BadHeader { path: PathBuf, what: String },
    #[error("{path}: truncated: expected {expected} bytes, found {got}")]
    Truncated { path: PathBuf, expected: usize, got: usize },
    #[error("{path}: payload length mismatch: sidecar shape implies {expected} values, payload holds {got}")]
    PayloadLengthMismatch { path: PathBuf, expected: usize, got: usize },
    #[error("{path}: unknown dtype {dtype:?}")]
    UnknownDtype { path: PathBuf, dtype: String },
    #[error("{path}: sidecar shape {got:?} does not match expected rank or tags {expected}")]
    BadShape { path: PathBuf, expected: &'static str, got: Vec<usize> },
    #[error("{path}: missing column {column:?}")]
    MissingColumn { path: PathBuf, column: &'static str },
    #[error("{path} line {line}: bad {field} value {value:?}")]
    BadField { path: PathBuf, line: u64, field: &'static str, value: String },
    #[error("{path}: {what}")]
    BadContent { path: PathBuf, what: String },
}

pub type Result<T> = std::result::Result<T, CodecError>;

pub(crate) fn io_err(path: &Path, source: std::io::Error) -> CodecError {
    CodecError::Io { path: path.to_path_buf(), source }
}

/// Writes `bytes` to a temporary file in `path`'s directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| io_err(path, e))
}

/// Sidecar path for a raw payload: the payload name plus `.json`.
pub fn sidecar_path(payload: &Path) -> PathBuf {
    let mut name = payload.as_os_str().to_os_string();
    name.push(".json");
    PathBuf::from(name)
}

/// JSON sidecar describing a raw raster or tensor payload.
///
/// `dtype` and `shape` are always present; the rest depends on what the
/// payload holds (class count for label rasters and probability tensors,
/// parameter/units/planes/model hash for property maps, a legend for flag
/// rasters).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub dtype: String,
    pub shape: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legend: Option<BTreeMap<String, String>>,
}

impl Sidecar {
    pub fn new(dtype: &str, shape: Vec<usize>) -> Self {
        Self {
            dtype: dtype.to_owned(),
            shape,
            classes: None,
            parameter: None,
            units: None,
            planes: None,
            model_hash: None,
            legend: None,
        }
    }

    pub fn elements(&self) -> usize {
        self.shape.iter().product()
    }
}

pub(crate) fn write_sidecar(payload: &Path, sidecar: &Sidecar) -> Result<()> {
    let path = sidecar_path(payload);
    let mut bytes = serde_json::to_vec_pretty(sidecar)
        .map_err(|e| CodecError::Json { path: path.clone(), source: e })?;
    bytes.push(b'\n');
    write_atomic(&path, &bytes)
}

pub(crate) fn read_sidecar(payload: &Path, want_dtype: &str) -> Result<Sidecar> {
    let path = sidecar_path(payload);
    let bytes = read_bytes(&path)?;
    let sidecar: Sidecar = serde_json::from_slice(&bytes)
        .map_err(|e| CodecError::Json { path: path.clone(), source: e })?;
    if sidecar.dtype != want_dtype {
        return Err(CodecError::UnknownDtype { path, dtype: sidecar.dtype });
    }
    Ok(sidecar)
}

/// Shortest decimal form that parses back to the identical float.
pub fn fmt_f64(value: f64) -> String {
    format!("{value}")
}
