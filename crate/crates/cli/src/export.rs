//! Figure-data writers: binary PGM masks, cell-center CSVs, polyline CSVs.
//! All outputs are plain data for external plotting tools.

use std::io::Write;
use std::path::Path;

use supfact_core::region::{Region2D, RegionData};

use crate::error::{input_err, io_err, Result};

/// Writes the closed region (interior plus closure padding) as a binary PGM,
/// 0 = outside, 255 = inside. Rows run top to bottom, so the first row is
/// the highest y band. Only grid-backed regions have a mask to export.
pub fn write_mask_pgm(path: &Path, region: &Region2D) -> Result<()> {
    let RegionData::Grid { mask, padding } = region.data() else {
        return Err(input_err("region has no grid mask to export"));
    };
    let (nx, ny) = (mask.nx(), mask.ny());
    let mut buf = Vec::with_capacity(32 + nx * ny);
    buf.extend_from_slice(format!("P5\n{nx} {ny}\n255\n").as_bytes());
    for iy in (0..ny).rev() {
        for ix in 0..nx {
            let inside = mask.get(ix, iy) || padding.get(ix, iy);
            buf.push(if inside { 255 } else { 0 });
        }
    }
    std::fs::write(path, buf).map_err(|e| io_err(path, e))
}

/// Writes the centers of occupied cells as CSV with a `kind` column that
/// distinguishes interior cells from closure padding.
pub fn write_cells_csv(path: &Path, region: &Region2D) -> Result<()> {
    let RegionData::Grid { mask, padding } = region.data() else {
        return Err(input_err("region has no grid cells to export"));
    };
    let mut out = String::from("x,y,kind\n");
    for iy in 0..mask.ny() {
        for ix in 0..mask.nx() {
            let kind = if mask.get(ix, iy) {
                "interior"
            } else if padding.get(ix, iy) {
                "padding"
            } else {
                continue;
            };
            let (x, y) = region.center_of(ix, iy).expect("grid region has centers");
            out.push_str(&format!("{x},{y},{kind}\n"));
        }
    }
    write_text(path, &out)
}

/// Writes an (x, y) polyline as CSV.
pub fn write_polyline_csv(path: &Path, points: &[(f64, f64)]) -> Result<()> {
    let mut out = String::from("x,y\n");
    for &(x, y) in points {
        out.push_str(&format!("{x},{y}\n"));
    }
    write_text(path, &out)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(|e| io_err(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| io_err(path, e))
}
