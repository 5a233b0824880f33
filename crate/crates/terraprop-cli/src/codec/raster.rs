//! Raw 8-bit raster codecs: label images and hazard flag masks.
//!
//! The payload is the bare row-major byte grid; a JSON sidecar at
//! `<payload>.json` records dtype, shape `[height, width]`, and either the
//! class count (labels) or the bit legend (flags).

use std::collections::BTreeMap;
use std::path::Path;

use terraprop::inference::{FlagRaster, FLAG_SLIPPERY, FLAG_SOFT, FLAG_UNCERTAIN};
use terraprop::LabelImage;

use super::{read_bytes, read_sidecar, write_atomic, write_sidecar, CodecError, Result, Sidecar};

pub fn write_labels(path: &Path, labels: &LabelImage, classes: usize) -> Result<()> {
    let mut sidecar = Sidecar::new("u8", vec![labels.height(), labels.width()]);
    sidecar.classes = Some(classes);
    write_sidecar(path, &sidecar)?;
    write_atomic(path, labels.data())
}

pub fn read_labels(path: &Path) -> Result<(LabelImage, usize)> {
    let (sidecar, data) = read_u8_payload(path)?;
    let classes = sidecar.classes.ok_or_else(|| CodecError::BadHeader {
        path: super::sidecar_path(path),
        what: "label sidecar missing \"classes\"".into(),
    })?;
    let labels = LabelImage::from_raw(sidecar.shape[1], sidecar.shape[0], data)
        .expect("shape checked against payload");
    labels.check_classes(classes).map_err(|e| CodecError::BadContent {
        path: path.to_path_buf(),
        what: e.to_string(),
    })?;
    Ok((labels, classes))
}

/// The flag raster's legend, bit value to meaning.
pub fn flag_legend() -> BTreeMap<String, String> {
    BTreeMap::from([
        (FLAG_SOFT.to_string(), "soft".into()),
        (FLAG_SLIPPERY.to_string(), "slippery".into()),
        (FLAG_UNCERTAIN.to_string(), "uncertain".into()),
    ])
}

pub fn write_flags(path: &Path, flags: &FlagRaster) -> Result<()> {
    let mut sidecar = Sidecar::new("u8", vec![flags.height(), flags.width()]);
    sidecar.legend = Some(flag_legend());
    write_sidecar(path, &sidecar)?;
    write_atomic(path, flags.data())
}

/// Reads a flag raster back as `(width, height, data)`; the mask bits are
/// validated against the legend values.
pub fn read_flags(path: &Path) -> Result<(usize, usize, Vec<u8>)> {
    let (sidecar, data) = read_u8_payload(path)?;
    let mask = FLAG_SOFT | FLAG_SLIPPERY | FLAG_UNCERTAIN;
    if let Some(bad) = data.iter().find(|&&b| b & !mask != 0) {
        return Err(CodecError::BadContent {
            path: path.to_path_buf(),
            what: format!("flag byte {bad:#04x} has bits outside the legend"),
        });
    }
    Ok((sidecar.shape[1], sidecar.shape[0], data))
}

fn read_u8_payload(path: &Path) -> Result<(Sidecar, Vec<u8>)> {
    let sidecar = read_sidecar(path, "u8")?;
    if sidecar.shape.len() != 2 {
        return Err(CodecError::BadShape {
            path: super::sidecar_path(path),
            expected: "[height, width]",
            got: sidecar.shape,
        });
    }
    let data = read_bytes(path)?;
    if data.len() != sidecar.elements() {
        return Err(CodecError::PayloadLengthMismatch {
            path: path.to_path_buf(),
            expected: sidecar.elements(),
            got: data.len(),
        });
    }
    Ok((sidecar, data))
}
