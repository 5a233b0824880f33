//! Binary PPM (P6, 8-bit) image codec.

use std::path::Path;

use terraprop::RgbImage;

use super::{read_bytes, write_atomic, CodecError, Result};

pub fn write_image(path: &Path, image: &RgbImage) -> Result<()> {
    let header = format!("P6\n{} {}\n255\n", image.width(), image.height());
    let mut bytes = Vec::with_capacity(header.len() + image.data().len());
    bytes.extend_from_slice(header.as_bytes());
    bytes.extend_from_slice(image.data());
    write_atomic(path, &bytes)
}

pub fn read_image(path: &Path) -> Result<RgbImage> {
    let bytes = read_bytes(path)?;
    if !bytes.starts_with(b"P6") {
        return Err(CodecError::BadMagic { path: path.to_path_buf(), expected: "P6" });
    }
    let mut cursor = 2usize;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        *field = next_header_field(path, &bytes, &mut cursor)?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(CodecError::BadHeader {
            path: path.to_path_buf(),
            what: format!("maxval {maxval}, only 255 supported"),
        });
    }
    // The header's final field is terminated by exactly one whitespace byte.
    let payload = &bytes[cursor..];
    let expected = width * height * 3;
    if payload.len() != expected {
        return Err(CodecError::Truncated {
            path: path.to_path_buf(),
            expected,
            got: payload.len(),
        });
    }
    RgbImage::from_raw(width, height, payload.to_vec()).map_err(|e| CodecError::BadContent {
        path: path.to_path_buf(),
        what: e.to_string(),
    })
}

/// Parses the next whitespace-delimited decimal field, skipping `#` comments,
/// and consumes the single whitespace byte that terminates it.
fn next_header_field(path: &Path, bytes: &[u8], cursor: &mut usize) -> Result<usize> {
    let bad = |what: &str| CodecError::BadHeader { path: path.to_path_buf(), what: what.into() };
    loop {
        match bytes.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while !matches!(bytes.get(*cursor), None | Some(b'\n')) {
                    *cursor += 1;
                }
            }
            Some(b) if b.is_ascii_digit() => break,
            Some(b) => return Err(bad(&format!("unexpected byte {b:#04x}"))),
            None => return Err(bad("unexpected end of header")),
        }
    }
    let start = *cursor;
    while matches!(bytes.get(*cursor), Some(b) if b.is_ascii_digit()) {
        *cursor += 1;
    }
    let text = std::str::from_utf8(&bytes[start..*cursor]).expect("digits are UTF-8");
    let value: usize = text.parse().map_err(|_| bad(&format!("field {text:?} out of range")))?;
    match bytes.get(*cursor) {
        Some(b) if b.is_ascii_whitespace() => *cursor += 1,
        _ => return Err(bad("header field not terminated by whitespace")),
    }
    Ok(value)
}
