//! Magnitude rendering to binary PPM and CSV export/import of images.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::PixelGrid;
use crate::geometry::Point2D;
use crate::reconstruction::ReflectivityImage;

pub const MARKER_COLOR: [u8; 3] = [0, 255, 0];
pub const DEFAULT_MARKER_RADIUS: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Scale by the largest magnitude in the image (1 if the image is all zero).
    GlobalMax,
    /// Scale by a fixed magnitude, which must be positive.
    FixedScale(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub normalization: Normalization,
    pub marker_radius_px: u32,
    pub markers: Vec<Point2D>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            normalization: Normalization::GlobalMax,
            marker_radius_px: DEFAULT_MARKER_RADIUS,
            markers: Vec::new(),
        }
    }
}

impl RenderSpec {
    pub fn with_markers(markers: Vec<Point2D>) -> Self {
        Self {
            markers,
            ..Self::default()
        }
    }

    /// Markers lying outside the grid's extent. They are still drawn, clipped
    /// to the raster.
    pub fn markers_outside(&self, grid: &PixelGrid) -> Vec<Point2D> {
        self.markers
            .iter()
            .filter(|m| !grid.contains(m))
            .copied()
            .collect()
    }
}

/// 8-bit RGB raster, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub rgb: Vec<u8>,
}

impl Raster {
    pub fn pixel(&self, col: usize, row: usize) -> [u8; 3] {
        let o = 3 * (row * self.width + col);
        [self.rgb[o], self.rgb[o + 1], self.rgb[o + 2]]
    }

    fn set(&mut self, col: usize, row: usize, c: [u8; 3]) {
        let o = 3 * (row * self.width + col);
        self.rgb[o..o + 3].copy_from_slice(&c);
    }

    /// Binary P6 encoding.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.rgb);
        out
    }

    pub fn write_ppm(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_ppm()).map_err(|e| Error::io(path, e))
    }
}

/// Grayscale magnitude map with green square markers. Image row `j` of the
/// grid lands on raster row `ny - 1 - j`, so y increases upward.
pub fn render_magnitude(img: &ReflectivityImage, spec: &RenderSpec) -> Result<Raster> {
    if img.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot render an empty image".into(),
        ));
    }
    let scale = match spec.normalization {
        Normalization::GlobalMax => {
            let max = img.max_magnitude();
            if max > 0.0 {
                max
            } else {
                1.0
            }
        }
        Normalization::FixedScale(s) if s > 0.0 && s.is_finite() => s,
        Normalization::FixedScale(s) => {
            return Err(Error::InvalidArgument(format!(
                "fixed render scale must be positive, got {s}"
            )))
        }
    };

    let grid = img.grid();
    let (w, h) = (grid.nx, grid.ny);
    let mut raster = Raster {
        width: w,
        height: h,
        rgb: vec![0; 3 * w * h],
    };
    for (n, v) in img.values().iter().enumerate() {
        let level = (255.0 * v.norm() / scale).round().clamp(0.0, 255.0) as u8;
        raster.set(n % w, h - 1 - n / w, [level; 3]);
    }

    let r = spec.marker_radius_px as i64;
    for m in &spec.markers {
        let (ci, cj) = grid.nearest_cell(m);
        for j in (cj - r)..=(cj + r) {
            for i in (ci - r)..=(ci + r) {
                if (0..w as i64).contains(&i) && (0..h as i64).contains(&j) {
                    raster.set(i as usize, h - 1 - j as usize, MARKER_COLOR);
                }
            }
        }
    }
    Ok(raster)
}

fn fmt_value(out: &mut String, v: f64) {
    // 17 significant digits: always round-trips
    write!(out, "{v:.16e}").expect("writing to a String");
}

/// CSV text: header `x,y,re,im`, one row per pixel in grid order.
pub fn image_to_csv(img: &ReflectivityImage) -> String {
    let grid = img.grid();
    let mut out = String::with_capacity(img.len() * 96 + 16);
    out.push_str("x,y,re,im\n");
    for (n, v) in img.values().iter().enumerate() {
        let c = grid.center(n);
        for (k, x) in [c.x, c.y, v.re, v.im].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            fmt_value(&mut out, x);
        }
        out.push('\n');
    }
    out
}

pub fn export_image_csv(img: &ReflectivityImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, image_to_csv(img)).map_err(|e| Error::io(path, e))
}

fn csv_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: Some(line),
        column: None,
        message: message.into(),
    }
}

/// Parses the CSV written by [`image_to_csv`]. The grid is recovered from the
/// pixel centers; a dimension with a single pixel borrows the other
/// dimension's pitch (or 1 m if the image is a single pixel).
pub fn image_from_csv(text: &str) -> Result<ReflectivityImage> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "x,y,re,im" => {}
        Some((_, header)) => {
            return Err(csv_error(
                1,
                format!("expected header `x,y,re,im`, found `{header}`"),
            ))
        }
        None => return Err(csv_error(1, "empty file")),
    }

    let mut rows: Vec<[f64; 4]> = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = [0.0f64; 4];
        let mut parts = line.split(',');
        for (k, slot) in fields.iter_mut().enumerate() {
            let part = parts
                .next()
                .ok_or_else(|| csv_error(lineno, format!("expected 4 fields, found {k}")))?;
            *slot = part
                .trim()
                .parse()
                .map_err(|_| csv_error(lineno, format!("cannot parse `{part}` as a number")))?;
            if !slot.is_finite() {
                return Err(csv_error(lineno, format!("non-finite value `{part}`")));
            }
        }
        if parts.next().is_some() {
            return Err(csv_error(lineno, "expected 4 fields, found more"));
        }
        rows.push(fields);
    }
    if rows.is_empty() {
        return Err(csv_error(2, "no pixel rows"));
    }

    let y0 = rows[0][1];
    let nx = rows.iter().take_while(|r| r[1] == y0).count();
    if !rows.len().is_multiple_of(nx) {
        return Err(csv_error(
            rows.len() + 1,
            format!("{} rows do not fill a grid {nx} pixels wide", rows.len()),
        ));
    }
    let ny = rows.len() / nx;
    for (n, r) in rows.iter().enumerate() {
        let (i, j) = (n % nx, n / nx);
        if r[0] != rows[i][0] || r[1] != rows[j * nx][1] {
            return Err(csv_error(
                n + 2,
                "pixel centers do not form a regular row-major grid",
            ));
        }
    }

    let dx = (nx > 1).then(|| rows[1][0] - rows[0][0]);
    let dy = (ny > 1).then(|| rows[nx][1] - rows[0][1]);
    let (dx, dy) = match (dx, dy) {
        (Some(dx), Some(dy)) => (dx, dy),
        (Some(d), None) | (None, Some(d)) => (d, d),
        (None, None) => (1.0, 1.0),
    };
    if !(dx > 0.0 && dy > 0.0) {
        return Err(csv_error(2, "pixel centers must increase in x and y"));
    }
    let x_min = rows[0][0] - 0.5 * dx;
    let y_min = rows[0][1] - 0.5 * dy;
    let grid = PixelGrid::new(
        x_min,
        x_min + nx as f64 * dx,
        y_min,
        y_min + ny as f64 * dy,
        nx,
        ny,
    )?;
    let values = rows.iter().map(|r| Complex64::new(r[2], r[3])).collect();
    ReflectivityImage::new(grid, values)
}

pub fn import_image_csv(path: impl AsRef<Path>) -> Result<ReflectivityImage> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    image_from_csv(&text)
}
