//! Deterministic heatmap and label rendering.
//!
//! The colormap is a single fixed 256-entry lookup table built at compile
//! time from five documented control points, interpolated with integer
//! arithmetic only, so the table (and therefore every rendered byte) is
//! identical on every platform. Values map linearly onto the table;
//! out-of-range values clamp to the endpoint colors.

use terraprop::{LabelImage, RgbImage, TerrainClassSet, IGNORE};

/// Control points of the colormap, evenly spaced from value 0 to 1:
/// deep blue, teal, green, yellow-green, yellow. The ramp is ordered in
/// lightness so grayscale reproductions stay readable.
pub const LUT_STOPS: [[u8; 3]; 5] =
    [[13, 18, 120], [18, 118, 158], [36, 170, 108], [150, 200, 62], [250, 230, 40]];

/// The 256-entry table: piecewise-linear between [`LUT_STOPS`].
pub const LUT: [[u8; 3]; 256] = build_lut();

const fn build_lut() -> [[u8; 3]; 256] {
    let mut lut = [[0u8; 3]; 256];
    let mut i = 0;
    while i < 256 {
        // Position i/255 scaled into 4 segments of width 255/4: segment
        // index and an integer fraction in [0, 255].
        let pos = i * 4;
        let seg = if pos / 255 > 3 { 3 } else { pos / 255 };
        let frac = pos - seg * 255;
        let mut ch = 0;
        while ch < 3 {
            let a = LUT_STOPS[seg][ch] as usize;
            let b = LUT_STOPS[seg + 1][ch] as usize;
            // Rounded integer lerp: exact endpoints at frac 0 and 255.
            lut[i][ch] = ((a * (255 - frac) + b * frac + 127) / 255) as u8;
            ch += 1;
        }
        i += 1;
    }
    lut
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("value range [{min}, {max}] is empty or not finite")]
    BadRange { min: f64, max: f64 },
    #[error("raster is empty")]
    EmptyRaster,
    #[error("alpha {alpha} outside [0, 1]")]
    BadAlpha { alpha: f64 },
    #[error("{name} is {got_width}x{got_height}, expected {width}x{height}")]
    ShapeMismatch { name: &'static str, got_width: usize, got_height: usize, width: usize, height: usize },
    #[error("label {label} has no class color")]
    UnknownLabel { label: u8 },
}

/// Maps `values` (row-major, `width * height`) through [`LUT`].
///
/// Values at `min` take the first entry, at `max` the last; outside the
/// range they clamp. The index is `round((v - min) / (max - min) * 255)`.
pub fn render_heatmap(
    values: &[f64],
    width: usize,
    height: usize,
    min: f64,
    max: f64,
) -> Result<RgbImage, RenderError> {
    if width == 0 || height == 0 || values.len() != width * height {
        return Err(RenderError::EmptyRaster);
    }
    if !(min < max) || !min.is_finite() || !max.is_finite() {
        return Err(RenderError::BadRange { min, max });
    }
    let mut image = RgbImage::new(width, height).expect("dims checked");
    let scale = 255.0 / (max - min);
    for y in 0..height {
        for x in 0..width {
            let v = values[y * width + x];
            let t = ((v - min) * scale).round().clamp(0.0, 255.0);
            image.set(x, y, LUT[t as usize]);
        }
    }
    Ok(image)
}

/// Paints labels with their class colors; IGNORE pixels come out black.
pub fn render_labels(
    labels: &LabelImage,
    classes: &TerrainClassSet,
) -> Result<RgbImage, RenderError> {
    let mut image = RgbImage::new(labels.width(), labels.height()).expect("label dims valid");
    for y in 0..labels.height() {
        for x in 0..labels.width() {
            let label = labels.at(x, y);
            let rgb = if label == IGNORE {
                [0, 0, 0]
            } else {
                classes
                    .color(label as usize)
                    .ok_or(RenderError::UnknownLabel { label })?
            };
            image.set(x, y, rgb);
        }
    }
    Ok(image)
}

/// Blends class colors over an image: `round(image * (1 - alpha) + color *
/// alpha)` per channel; IGNORE pixels keep the image untouched.
pub fn render_overlay(
    image: &RgbImage,
    labels: &LabelImage,
    classes: &TerrainClassSet,
    alpha: f64,
) -> Result<RgbImage, RenderError> {
    if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
        return Err(RenderError::BadAlpha { alpha });
    }
    if image.width() != labels.width() || image.height() != labels.height() {
        return Err(RenderError::ShapeMismatch {
            name: "labels",
            got_width: labels.width(),
            got_height: labels.height(),
            width: image.width(),
            height: image.height(),
        });
    }
    let mut out = RgbImage::new(image.width(), image.height()).expect("dims valid");
    for y in 0..image.height() {
        for x in 0..image.width() {
            let base = image.at(x, y);
            let label = labels.at(x, y);
            let rgb = if label == IGNORE {
                base
            } else {
                let color = classes
                    .color(label as usize)
                    .ok_or(RenderError::UnknownLabel { label })?;
                let mut blended = [0u8; 3];
                for ch in 0..3 {
                    let v = base[ch] as f64 * (1.0 - alpha) + color[ch] as f64 * alpha;
                    blended[ch] = v.round() as u8;
                }
                blended
            };
            out.set(x, y, rgb);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lut_endpoints_are_the_outer_stops() {
        assert_eq!(LUT[0], LUT_STOPS[0]);
        assert_eq!(LUT[255], LUT_STOPS[4]);
    }

    #[test]
    fn lut_is_monotone_in_red_and_antitone_in_blue() {
        // The ramp runs blue to yellow, so red rises and blue mostly falls;
        // check weak monotonicity of the red channel as a sanity guard.
        for i in 1..256 {
            assert!(LUT[i][0] >= LUT[i - 1][0], "red dips at {i}");
        }
        assert!(LUT[255][2] < LUT[0][2]);
    }

    #[test]
    fn min_and_max_pixels_take_exact_endpoint_colors() {
        let image = render_heatmap(&[0.0, 1.0], 2, 1, 0.0, 1.0).unwrap();
        assert_eq!(image.at(0, 0), LUT_STOPS[0]);
        assert_eq!(image.at(1, 0), LUT_STOPS[4]);
    }

    #[test]
    fn constant_raster_at_midpoint_is_uniform_mid_lut() {
        let image = render_heatmap(&[0.5; 6], 3, 2, 0.0, 1.0).unwrap();
        // round(127.5) rounds away from zero
        let expect = LUT[128];
        for y in 0..2 {
            for x in 0..3 {
                assert_eq!(image.at(x, y), expect);
            }
        }
    }

    #[test]
    fn out_of_range_values_clamp_to_endpoints() {
        let image = render_heatmap(&[-10.0, 10.0], 2, 1, 0.0, 1.0).unwrap();
        assert_eq!(image.at(0, 0), LUT[0]);
        assert_eq!(image.at(1, 0), LUT[255]);
    }

    #[test]
    fn empty_or_inverted_ranges_are_rejected() {
        assert!(matches!(render_heatmap(&[], 0, 0, 0.0, 1.0), Err(RenderError::EmptyRaster)));
        assert!(matches!(
            render_heatmap(&[0.0], 1, 1, 1.0, 1.0),
            Err(RenderError::BadRange { .. })
        ));
    }

    #[test]
    fn labels_render_class_colors_and_black_ignore() {
        let classes = TerrainClassSet::standard();
        let mut labels = LabelImage::new(2, 1).unwrap();
        labels.set(0, 0, 3);
        let image = render_labels(&labels, &classes).unwrap();
        assert_eq!(image.at(0, 0), classes.color(3).unwrap());
        assert_eq!(image.at(1, 0), [0, 0, 0]);
    }

    #[test]
    fn overlay_blends_half_and_half() {
        let classes = TerrainClassSet::standard();
        let mut base = RgbImage::new(1, 1).unwrap();
        base.set(0, 0, [100, 100, 100]);
        let mut labels = LabelImage::new(1, 1).unwrap();
        labels.set(0, 0, 0);
        let color = classes.color(0).unwrap();
        let out = render_overlay(&base, &labels, &classes, 0.5).unwrap();
        for ch in 0..3 {
            let expect = (100.0 * 0.5 + color[ch] as f64 * 0.5).round() as u8;
            assert_eq!(out.at(0, 0)[ch], expect);
        }
    }
}
