//! Closed regions of the plane: boolean grid masks over a bounding box,
//! finite atom sets, and unions of axis-aligned slices, with a tolerance
//! comparison built on symmetric-difference measure and Hausdorff distance.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid_input, Result};
use crate::sets::ClosedSet1D;

/// Default cap on reported mismatch witnesses.
pub const DEFAULT_MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl BBox {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        let vals = [x_lo, x_hi, y_lo, y_hi];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(invalid_input("bbox coordinates must be finite"));
        }
        if x_lo > x_hi || y_lo > y_hi {
            return Err(invalid_input("bbox has inverted extents"));
        }
        Ok(BBox { x_lo, x_hi, y_lo, y_hi })
    }

    pub fn square(lo: f64, hi: f64) -> Result<Self> {
        BBox::new(lo, hi, lo, hi)
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x_lo <= x && x <= self.x_hi && self.y_lo <= y && y <= self.y_hi
    }

    fn approx_eq(&self, other: &BBox) -> bool {
        let scale = 1.0f64
            .max(self.width())
            .max(self.height())
            .max(other.width())
            .max(other.height());
        let tol = 1e-9 * scale;
        (self.x_lo - other.x_lo).abs() <= tol
            && (self.x_hi - other.x_hi).abs() <= tol
            && (self.y_lo - other.y_lo).abs() <= tol
            && (self.y_hi - other.y_hi).abs() <= tol
    }
}

/// Which coordinate an operation refers to. For slice regions this is the
/// axis carrying the discrete levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// How a region was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Built from a declared indicator or an exact set description.
    Analytic,
    /// Cartesian product of two one-dimensional sets.
    Product,
    /// Estimated from numeric probing or samples.
    GridEstimated,
}

/// Row-major boolean grid, `index = iy * nx + ix`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    nx: usize,
    ny: usize,
    cells: Vec<bool>,
}

impl GridMask {
    pub fn new(nx: usize, ny: usize) -> Self {
        GridMask { nx, ny, cells: vec![false; nx * ny] }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.cells[iy * self.nx + ix]
    }

    pub fn set(&mut self, ix: usize, iy: usize, v: bool) {
        self.cells[iy * self.nx + ix] = v;
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn any(&self) -> bool {
        self.cells.iter().any(|&c| c)
    }
}

/// Content of a [`Region2D`].
#[derive(Debug, Clone, PartialEq)]
pub enum RegionData {
    /// Positivity mask plus closure padding: boundary-adjacent cells added to
    /// close the set on the grid. Padding cells count for membership but are
    /// excluded from area so they do not bias measure comparisons.
    Grid { mask: GridMask, padding: GridMask },
    /// Finite point set, kept exact.
    Atoms(Vec<(f64, f64)>),
    /// Union of 1D sets, one per discrete level along `axis`.
    Slices { axis: Axis, slices: Vec<(f64, ClosedSet1D)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Region2D {
    bbox: BBox,
    data: RegionData,
    provenance: Provenance,
}

impl Region2D {
    /// Rasterizes an indicator at cell centers over `bbox`.
    pub fn from_indicator(
        bbox: BBox,
        nx: usize,
        ny: usize,
        provenance: Provenance,
        ind: impl Fn(f64, f64) -> bool,
    ) -> Result<Self> {
        check_dims(nx, ny)?;
        let mut mask = GridMask::new(nx, ny);
        for iy in 0..ny {
            for ix in 0..nx {
                let (x, y) = cell_center(&bbox, nx, ny, ix, iy);
                if ind(x, y) {
                    mask.set(ix, iy, true);
                }
            }
        }
        Ok(Region2D {
            bbox,
            data: RegionData::Grid { mask, padding: GridMask::new(nx, ny) },
            provenance,
        })
    }

    pub fn from_mask(bbox: BBox, mask: GridMask, provenance: Provenance) -> Result<Self> {
        check_dims(mask.nx(), mask.ny())?;
        let (nx, ny) = (mask.nx(), mask.ny());
        Ok(Region2D {
            bbox,
            data: RegionData::Grid { mask, padding: GridMask::new(nx, ny) },
            provenance,
        })
    }

    pub fn from_atoms(points: &[(f64, f64)], provenance: Provenance) -> Result<Self> {
        if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(invalid_input("region atoms must be finite"));
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pts.dedup();
        let bbox = if pts.is_empty() {
            BBox::new(0.0, 0.0, 0.0, 0.0)?
        } else {
            let mut b = BBox::new(pts[0].0, pts[0].0, pts[0].1, pts[0].1)?;
            for &(x, y) in &pts {
                b.x_lo = b.x_lo.min(x);
                b.x_hi = b.x_hi.max(x);
                b.y_lo = b.y_lo.min(y);
                b.y_hi = b.y_hi.max(y);
            }
            b
        };
        Ok(Region2D { bbox, data: RegionData::Atoms(pts), provenance })
    }

    pub fn from_slices(
        axis: Axis,
        slices: Vec<(f64, ClosedSet1D)>,
        provenance: Provenance,
    ) -> Result<Self> {
        if slices.iter().any(|(level, _)| !level.is_finite()) {
            return Err(invalid_input("slice levels must be finite"));
        }
        let mut slices = slices;
        slices.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in slices.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(invalid_input("duplicate slice level"));
            }
        }
        // bbox: levels along `axis`, union extent of the sets on the other.
        let mut level_lo = f64::INFINITY;
        let mut level_hi = f64::NEG_INFINITY;
        let mut set_lo = f64::INFINITY;
        let mut set_hi = f64::NEG_INFINITY;
        for (level, set) in &slices {
            level_lo = level_lo.min(*level);
            level_hi = level_hi.max(*level);
            if let Some((lo, hi)) = set.extent() {
                set_lo = set_lo.min(lo);
                set_hi = set_hi.max(hi);
            }
        }
        let bbox = if slices.is_empty() || !set_lo.is_finite() {
            BBox::new(0.0, 0.0, 0.0, 0.0)?
        } else {
            match axis {
                Axis::X => BBox::new(level_lo, level_hi, set_lo, set_hi)?,
                Axis::Y => BBox::new(set_lo, set_hi, level_lo, level_hi)?,
            }
        };
        Ok(Region2D { bbox, data: RegionData::Slices { axis, slices }, provenance })
    }

    pub fn empty() -> Self {
        Region2D {
            bbox: BBox { x_lo: 0.0, x_hi: 0.0, y_lo: 0.0, y_hi: 0.0 },
            data: RegionData::Atoms(Vec::new()),
            provenance: Provenance::Analytic,
        }
    }

    pub fn bbox(&self) -> &BBox {
        &self.bbox
    }

    pub fn data(&self) -> &RegionData {
        &self.data
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn grid_dims(&self) -> Option<(usize, usize)> {
        match &self.data {
            RegionData::Grid { mask, .. } => Some((mask.nx(), mask.ny())),
            _ => None,
        }
    }

    /// Cell sizes `(hx, hy)` for grid-backed regions.
    pub fn cell_size(&self) -> Option<(f64, f64)> {
        self.grid_dims()
            .map(|(nx, ny)| (self.bbox.width() / nx as f64, self.bbox.height() / ny as f64))
    }

    pub fn is_empty(&self) -> bool {
        match &self.data {
            RegionData::Grid { mask, padding } => !mask.any() && !padding.any(),
            RegionData::Atoms(pts) => pts.is_empty(),
            RegionData::Slices { slices, .. } => slices.iter().all(|(_, s)| s.is_empty()),
        }
    }

    /// Area of the core cells (padding excluded); zero for atom and slice
    /// regions, whose natural measures are count and length.
    pub fn area(&self) -> f64 {
        match &self.data {
            RegionData::Grid { mask, .. } => {
                let (hx, hy) = self.cell_size().unwrap_or((0.0, 0.0));
                hx * hy * mask.count() as f64
            }
            _ => 0.0,
        }
    }

    /// Area including closure padding.
    pub fn padded_area(&self) -> f64 {
        match &self.data {
            RegionData::Grid { mask, padding } => {
                let (hx, hy) = self.cell_size().unwrap_or((0.0, 0.0));
                hx * hy * (mask.count() + padding.count()) as f64
            }
            _ => self.area(),
        }
    }

    pub fn padding_count(&self) -> usize {
        match &self.data {
            RegionData::Grid { padding, .. } => padding.count(),
            _ => 0,
        }
    }

    pub fn atom_count(&self) -> usize {
        match &self.data {
            RegionData::Atoms(pts) => pts.len(),
            _ => 0,
        }
    }

    /// Grid closure: every cell outside the mask touching it (8-neighborhood)
    /// becomes padding. No-op for atom and slice regions, which are exact.
    pub fn dilate_closure(&mut self) {
        if let RegionData::Grid { mask, padding } = &mut self.data {
            let (nx, ny) = (mask.nx(), mask.ny());
            for iy in 0..ny {
                for ix in 0..nx {
                    if mask.get(ix, iy) {
                        continue;
                    }
                    let mut touches = false;
                    'scan: for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            if dx == 0 && dy == 0 {
                                continue;
                            }
                            let jx = ix as i64 + dx;
                            let jy = iy as i64 + dy;
                            if jx >= 0
                                && jy >= 0
                                && (jx as usize) < nx
                                && (jy as usize) < ny
                                && mask.get(jx as usize, jy as usize)
                            {
                                touches = true;
                                break 'scan;
                            }
                        }
                    }
                    if touches {
                        padding.set(ix, iy, true);
                    }
                }
            }
        }
    }

    /// Membership in the closed region (padding counts). Grid membership is
    /// by containing cell; points outside the bbox are out.
    pub fn contains_point_closed(&self, x: f64, y: f64) -> bool {
        match &self.data {
            RegionData::Grid { mask, padding } => {
                if !self.bbox.contains(x, y) {
                    return false;
                }
                let (nx, ny) = (mask.nx(), mask.ny());
                let ix = cell_index(x, self.bbox.x_lo, self.bbox.x_hi, nx);
                let iy = cell_index(y, self.bbox.y_lo, self.bbox.y_hi, ny);
                mask.get(ix, iy) || padding.get(ix, iy)
            }
            RegionData::Atoms(pts) => pts.iter().any(|&(px, py)| px == x && py == y),
            RegionData::Slices { axis, slices } => {
                let (level_coord, set_coord) = match axis {
                    Axis::X => (x, y),
                    Axis::Y => (y, x),
                };
                slices
                    .iter()
                    .any(|(level, set)| *level == level_coord && set.contains(set_coord))
            }
        }
    }

    /// Center of grid cell `(ix, iy)`.
    pub fn center_of(&self, ix: usize, iy: usize) -> Option<(f64, f64)> {
        self.grid_dims()
            .map(|(nx, ny)| cell_center(&self.bbox, nx, ny, ix, iy))
    }

    /// Re-renders an atom or slice region as a grid mask on the given frame.
    /// Grid regions are returned unchanged when the frame matches.
    pub fn rasterized(&self, bbox: &BBox, nx: usize, ny: usize) -> Result<Region2D> {
        check_dims(nx, ny)?;
        match &self.data {
            RegionData::Grid { mask, .. } => {
                if !self.bbox.approx_eq(bbox) || (mask.nx(), mask.ny()) != (nx, ny) {
                    return Err(invalid_input(
                        "grid regions cannot be resampled onto a different frame",
                    ));
                }
                Ok(self.clone())
            }
            RegionData::Atoms(pts) => {
                let mut mask = GridMask::new(nx, ny);
                for &(x, y) in pts {
                    if !bbox.contains(x, y) {
                        return Err(invalid_input("atom outside rasterization bbox"));
                    }
                    let ix = cell_index(x, bbox.x_lo, bbox.x_hi, nx);
                    let iy = cell_index(y, bbox.y_lo, bbox.y_hi, ny);
                    mask.set(ix, iy, true);
                }
                Ok(Region2D {
                    bbox: *bbox,
                    data: RegionData::Grid { mask, padding: GridMask::new(nx, ny) },
                    provenance: self.provenance,
                })
            }
            RegionData::Slices { axis, slices } => {
                let mut mask = GridMask::new(nx, ny);
                for (level, set) in slices {
                    match axis {
                        Axis::Y => {
                            if *level < bbox.y_lo || *level > bbox.y_hi {
                                return Err(invalid_input("slice level outside bbox"));
                            }
                            let iy = cell_index(*level, bbox.y_lo, bbox.y_hi, ny);
                            let hx = bbox.width() / nx as f64;
                            for ix in 0..nx {
                                let lo = bbox.x_lo + hx * ix as f64;
                                if set.intersects_interval(lo, lo + hx) {
                                    mask.set(ix, iy, true);
                                }
                            }
                        }
                        Axis::X => {
                            if *level < bbox.x_lo || *level > bbox.x_hi {
                                return Err(invalid_input("slice level outside bbox"));
                            }
                            let ix = cell_index(*level, bbox.x_lo, bbox.x_hi, nx);
                            let hy = bbox.height() / ny as f64;
                            for iy in 0..ny {
                                let lo = bbox.y_lo + hy * iy as f64;
                                if set.intersects_interval(lo, lo + hy) {
                                    mask.set(ix, iy, true);
                                }
                            }
                        }
                    }
                }
                Ok(Region2D {
                    bbox: *bbox,
                    data: RegionData::Grid { mask, padding: GridMask::new(nx, ny) },
                    provenance: self.provenance,
                })
            }
        }
    }
}

fn check_dims(nx: usize, ny: usize) -> Result<()> {
    if nx < 2 || ny < 2 {
        return Err(invalid_input("grid dimensions must be at least 2x2"));
    }
    if nx > 1 << 14 || ny > 1 << 14 {
        return Err(invalid_input("grid dimensions above 16384 are not supported"));
    }
    Ok(())
}

fn cell_center(bbox: &BBox, nx: usize, ny: usize, ix: usize, iy: usize) -> (f64, f64) {
    let hx = bbox.width() / nx as f64;
    let hy = bbox.height() / ny as f64;
    (bbox.x_lo + hx * (ix as f64 + 0.5), bbox.y_lo + hy * (iy as f64 + 0.5))
}

/// Index of the cell containing `v`, with the top edge folded into the last
/// cell so closed bounding boxes stay closed.
fn cell_index(v: f64, lo: f64, hi: f64, n: usize) -> usize {
    if hi <= lo {
        return 0;
    }
    let t = (v - lo) / (hi - lo) * n as f64;
    (t as usize).min(n - 1)
}

/// Cartesian product of two 1D sets as a region. The representation adapts
/// to the factors: pure atoms on both sides stay an exact point set, one
/// pure-atom factor yields exact slices, and interval-bearing factors are
/// rasterized on an `nx` by `ny` grid over the product of their extents.
pub fn cartesian_product(a: &ClosedSet1D, b: &ClosedSet1D, nx: usize, ny: usize) -> Result<Region2D> {
    if a.is_empty() || b.is_empty() {
        return Ok(Region2D::empty());
    }
    if a.is_pure_atoms() && b.is_pure_atoms() {
        let mut pts = Vec::with_capacity(a.atoms().len() * b.atoms().len());
        for &x in a.atoms() {
            for &y in b.atoms() {
                pts.push((x, y));
            }
        }
        return Region2D::from_atoms(&pts, Provenance::Product);
    }
    if a.is_pure_atoms() {
        let slices = a.atoms().iter().map(|&x| (x, b.clone())).collect();
        return Region2D::from_slices(Axis::X, slices, Provenance::Product);
    }
    if b.is_pure_atoms() {
        let slices = b.atoms().iter().map(|&y| (y, a.clone())).collect();
        return Region2D::from_slices(Axis::Y, slices, Provenance::Product);
    }
    let (ax_lo, ax_hi) = a.extent().expect("nonempty");
    let (by_lo, by_hi) = b.extent().expect("nonempty");
    let bbox = BBox::new(ax_lo, ax_hi, by_lo, by_hi)?;
    cartesian_product_gridded(a, b, &bbox, nx, ny)
}

/// Product rasterized on a caller-chosen frame, for comparisons that must
/// share a grid with an existing region.
pub fn cartesian_product_gridded(
    a: &ClosedSet1D,
    b: &ClosedSet1D,
    bbox: &BBox,
    nx: usize,
    ny: usize,
) -> Result<Region2D> {
    Region2D::from_indicator(*bbox, nx, ny, Provenance::Product, |x, y| {
        a.contains(x) && b.contains(y)
    })
}

/// Point of the plane lying in exactly one of the two compared regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionWitness {
    pub x: f64,
    pub y: f64,
    /// True when the point belongs to the first region of the comparison.
    pub in_first: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub equal_within_tol: bool,
    /// Area of the symmetric difference for grid comparisons, slice length
    /// for slice comparisons, point count for atom comparisons.
    pub sym_diff_measure: f64,
    /// True when `sym_diff_measure` is a count rather than a measure.
    pub measure_is_count: bool,
    pub hausdorff: f64,
    pub witnesses: Vec<RegionWitness>,
}

/// Compares two regions: symmetric-difference measure, Hausdorff distance on
/// the closed contents, and up to [`DEFAULT_MAX_WITNESSES`] witness points.
pub fn region_compare(
    p: &Region2D,
    q: &Region2D,
    tol_area: f64,
    tol_dist: f64,
) -> Result<ComparisonReport> {
    region_compare_with(p, q, tol_area, tol_dist, DEFAULT_MAX_WITNESSES)
}

pub fn region_compare_with(
    p: &Region2D,
    q: &Region2D,
    tol_area: f64,
    tol_dist: f64,
    max_witnesses: usize,
) -> Result<ComparisonReport> {
    if !(tol_area >= 0.0 && tol_dist >= 0.0) {
        return Err(invalid_input("comparison tolerances must be nonnegative"));
    }
    // Empty regions compare against anything.
    if p.is_empty() || q.is_empty() {
        return compare_with_empty(p, q, tol_area, tol_dist, max_witnesses);
    }
    match (&p.data, &q.data) {
        (RegionData::Grid { .. }, RegionData::Grid { .. }) => {
            compare_grids(p, q, tol_area, tol_dist, max_witnesses)
        }
        (RegionData::Atoms(pa), RegionData::Atoms(qa)) => {
            Ok(compare_atom_sets(pa, qa, tol_area, tol_dist, max_witnesses))
        }
        (RegionData::Slices { .. }, RegionData::Slices { .. }) => {
            compare_slices(p, q, tol_area, tol_dist, max_witnesses)
        }
        (RegionData::Grid { .. }, _) => {
            let (nx, ny) = p.grid_dims().expect("grid");
            let qr = q.rasterized(&p.bbox, nx, ny)?;
            compare_grids(p, &qr, tol_area, tol_dist, max_witnesses)
        }
        (_, RegionData::Grid { .. }) => {
            let (nx, ny) = q.grid_dims().expect("grid");
            let pr = p.rasterized(&q.bbox, nx, ny)?;
            compare_grids(&pr, q, tol_area, tol_dist, max_witnesses)
        }
        _ => Err(invalid_input(
            "cannot compare an atom region with a slice region; rasterize one side first",
        )),
    }
}

fn compare_with_empty(
    p: &Region2D,
    q: &Region2D,
    tol_area: f64,
    tol_dist: f64,
    max_witnesses: usize,
) -> Result<ComparisonReport> {
    let (both_empty, first_nonempty) = (p.is_empty() && q.is_empty(), !p.is_empty());
    if both_empty {
        return Ok(ComparisonReport {
            equal_within_tol: true,
            sym_diff_measure: 0.0,
            measure_is_count: false,
            hausdorff: 0.0,
            witnesses: Vec::new(),
        });
    }
    let full = if first_nonempty { p } else { q };
    let hausdorff = f64::INFINITY;
    let (measure, is_count, witnesses) = match &full.data {
        RegionData::Grid { mask, .. } => {
            let (hx, hy) = full.cell_size().expect("grid");
            let mut wit = Vec::new();
            'outer: for iy in 0..mask.ny() {
                for ix in 0..mask.nx() {
                    if mask.get(ix, iy) {
                        let (x, y) = cell_center(&full.bbox, mask.nx(), mask.ny(), ix, iy);
                        wit.push(RegionWitness { x, y, in_first: first_nonempty });
                        if wit.len() >= max_witnesses {
                            break 'outer;
                        }
                    }
                }
            }
            (hx * hy * mask.count() as f64, false, wit)
        }
        RegionData::Atoms(pts) => (
            pts.len() as f64,
            true,
            pts.iter()
                .take(max_witnesses)
                .map(|&(x, y)| RegionWitness { x, y, in_first: first_nonempty })
                .collect(),
        ),
        RegionData::Slices { axis, slices } => {
            let mut wit = Vec::new();
            let mut len = 0.0;
            for (level, set) in slices {
                len += set.length();
                if wit.len() < max_witnesses {
                    if let Some((lo, _)) = set.extent() {
                        let (x, y) = match axis {
                            Axis::X => (*level, lo),
                            Axis::Y => (lo, *level),
                        };
                        wit.push(RegionWitness { x, y, in_first: first_nonempty });
                    }
                }
            }
            (len, false, wit)
        }
    };
    Ok(ComparisonReport {
        equal_within_tol: measure <= tol_area && hausdorff <= tol_dist,
        sym_diff_measure: measure,
        measure_is_count: is_count,
        hausdorff,
        witnesses,
    })
}

fn compare_grids(
    p: &Region2D,
    q: &Region2D,
    tol_area: f64,
    tol_dist: f64,
    max_witnesses: usize,
) -> Result<ComparisonReport> {
    let (RegionData::Grid { mask: pm, padding: pp }, RegionData::Grid { mask: qm, padding: qp }) =
        (&p.data, &q.data)
    else {
        unreachable!("caller dispatches grids");
    };
    if !p.bbox.approx_eq(&q.bbox) || (pm.nx(), pm.ny()) != (qm.nx(), qm.ny()) {
        return Err(invalid_input(
            "resolution mismatch: compared regions must share bbox and grid dimensions",
        ));
    }
    let (nx, ny) = (pm.nx(), pm.ny());
    let (hx, hy) = p.cell_size().expect("grid");

    let mut xor_count = 0usize;
    let mut witnesses = Vec::new();
    // Two passes so witnesses can be sampled evenly across the difference.
    for iy in 0..ny {
        for ix in 0..nx {
            if pm.get(ix, iy) != qm.get(ix, iy) {
                xor_count += 1;
            }
        }
    }
    if xor_count > 0 && max_witnesses > 0 {
        let stride = (xor_count / max_witnesses).max(1);
        let mut seen = 0usize;
        'outer: for iy in 0..ny {
            for ix in 0..nx {
                let in_p = pm.get(ix, iy);
                if in_p != qm.get(ix, iy) {
                    if seen % stride == 0 {
                        let (x, y) = cell_center(&p.bbox, nx, ny, ix, iy);
                        witnesses.push(RegionWitness { x, y, in_first: in_p });
                        if witnesses.len() >= max_witnesses {
                            break 'outer;
                        }
                    }
                    seen += 1;
                }
            }
        }
    }

    // Hausdorff runs on the closed masks (core plus padding).
    let closed = |m: &GridMask, pad: &GridMask| {
        let mut c = vec![false; nx * ny];
        for iy in 0..ny {
            for ix in 0..nx {
                c[iy * nx + ix] = m.get(ix, iy) || pad.get(ix, iy);
            }
        }
        c
    };
    let pc = closed(pm, pp);
    let qc = closed(qm, qp);
    let hausdorff = grid_hausdorff(&pc, &qc, nx, ny, hx, hy);

    let sym = hx * hy * xor_count as f64;
    Ok(ComparisonReport {
        equal_within_tol: sym <= tol_area && hausdorff <= tol_dist,
        sym_diff_measure: sym,
        measure_is_count: false,
        hausdorff,
        witnesses,
    })
}

fn compare_atom_sets(
    pa: &[(f64, f64)],
    qa: &[(f64, f64)],
    tol_area: f64,
    tol_dist: f64,
    max_witnesses: usize,
) -> ComparisonReport {
    // Inputs are sorted and deduped by construction. Coordinate matching is
    // exact: both sides of every comparison in this crate derive their
    // coordinates from the same upstream values.
    let mut only_p: Vec<(f64, f64)> = Vec::new();
    let mut only_q: Vec<(f64, f64)> = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < pa.len() || j < qa.len() {
        match (pa.get(i), qa.get(j)) {
            (Some(&a), Some(&b)) => {
                let ord = a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1));
                match ord {
                    core::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    core::cmp::Ordering::Less => {
                        only_p.push(a);
                        i += 1;
                    }
                    core::cmp::Ordering::Greater => {
                        only_q.push(b);
                        j += 1;
                    }
                }
            }
            (Some(&a), None) => {
                only_p.push(a);
                i += 1;
            }
            (None, Some(&b)) => {
                only_q.push(b);
                j += 1;
            }
            (None, None) => break,
        }
    }

    let hausdorff = point_set_hausdorff(pa, qa);
    let count = (only_p.len() + only_q.len()) as f64;
    let mut witnesses: Vec<RegionWitness> = Vec::new();
    for &(x, y) in only_p.iter() {
        if witnesses.len() >= max_witnesses {
            break;
        }
        witnesses.push(RegionWitness { x, y, in_first: true });
    }
    for &(x, y) in only_q.iter() {
        if witnesses.len() >= max_witnesses {
            break;
        }
        witnesses.push(RegionWitness { x, y, in_first: false });
    }
    ComparisonReport {
        equal_within_tol: count <= tol_area && hausdorff <= tol_dist,
        sym_diff_measure: count,
        measure_is_count: true,
        hausdorff,
        witnesses,
    }
}

fn compare_slices(
    p: &Region2D,
    q: &Region2D,
    tol_area: f64,
    tol_dist: f64,
    max_witnesses: usize,
) -> Result<ComparisonReport> {
    let (
        RegionData::Slices { axis: pax, slices: ps },
        RegionData::Slices { axis: qax, slices: qs },
    ) = (&p.data, &q.data)
    else {
        unreachable!("caller dispatches slices");
    };
    if pax != qax {
        return Err(invalid_input("slice regions with different axes cannot be compared"));
    }
    let axis = *pax;
    let to_point = |level: f64, v: f64| match axis {
        Axis::X => (level, v),
        Axis::Y => (v, level),
    };

    let mut sym = 0.0f64;
    let mut hausdorff = 0.0f64;
    let mut witnesses: Vec<RegionWitness> = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < ps.len() || j < qs.len() {
        let take = match (ps.get(i), qs.get(j)) {
            (Some(a), Some(b)) => a.0.total_cmp(&b.0),
            (Some(_), None) => core::cmp::Ordering::Less,
            (None, Some(_)) => core::cmp::Ordering::Greater,
            (None, None) => break,
        };
        match take {
            core::cmp::Ordering::Equal => {
                let (level, pa) = &ps[i];
                let (_, qa) = &qs[j];
                sym += pa.sym_diff_length(qa);
                hausdorff = hausdorff.max(pa.hausdorff(qa));
                if witnesses.len() < max_witnesses {
                    for (v, in_first) in sym_diff_points_1d(pa, qa) {
                        if witnesses.len() >= max_witnesses {
                            break;
                        }
                        let (x, y) = to_point(*level, v);
                        witnesses.push(RegionWitness { x, y, in_first });
                    }
                }
                i += 1;
                j += 1;
            }
            core::cmp::Ordering::Less => {
                let (level, pa) = &ps[i];
                sym += pa.length();
                hausdorff = f64::INFINITY;
                if witnesses.len() < max_witnesses {
                    if let Some((lo, _)) = pa.extent() {
                        let (x, y) = to_point(*level, lo);
                        witnesses.push(RegionWitness { x, y, in_first: true });
                    }
                }
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                let (level, qa) = &qs[j];
                sym += qa.length();
                hausdorff = f64::INFINITY;
                if witnesses.len() < max_witnesses {
                    if let Some((lo, _)) = qa.extent() {
                        let (x, y) = to_point(*level, lo);
                        witnesses.push(RegionWitness { x, y, in_first: false });
                    }
                }
                j += 1;
            }
        }
    }

    Ok(ComparisonReport {
        equal_within_tol: sym <= tol_area && hausdorff <= tol_dist,
        sym_diff_measure: sym,
        measure_is_count: false,
        hausdorff,
        witnesses,
    })
}

/// Representative points of the 1D symmetric difference: midpoints of
/// interval pieces and unmatched atoms, tagged with which set owns them.
fn sym_diff_points_1d(a: &ClosedSet1D, b: &ClosedSet1D) -> Vec<(f64, bool)> {
    let mut cuts: Vec<f64> = Vec::new();
    for &(lo, hi) in a.intervals().iter().chain(b.intervals().iter()) {
        cuts.push(lo);
        cuts.push(hi);
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let in_a = a.contains(mid);
        let in_b = b.contains(mid);
        if in_a != in_b {
            out.push((mid, in_a));
        }
    }
    for &x in a.atoms() {
        if !b.contains(x) {
            out.push((x, true));
        }
    }
    for &x in b.atoms() {
        if !a.contains(x) {
            out.push((x, false));
        }
    }
    out
}

fn point_set_hausdorff(pa: &[(f64, f64)], qa: &[(f64, f64)]) -> f64 {
    match (pa.is_empty(), qa.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let directed = |from: &[(f64, f64)], to: &[(f64, f64)]| {
        let mut worst = 0.0f64;
        for &(x, y) in from {
            let mut best = f64::INFINITY;
            for &(u, v) in to {
                best = best.min(libm::hypot(x - u, y - v));
            }
            worst = worst.max(best);
        }
        worst
    };
    directed(pa, qa).max(directed(qa, pa))
}

/// Hausdorff distance between two cell-center point clouds given as boolean
/// grids, via an exact Euclidean distance transform per side.
fn grid_hausdorff(p: &[bool], q: &[bool], nx: usize, ny: usize, hx: f64, hy: f64) -> f64 {
    let p_any = p.iter().any(|&c| c);
    let q_any = q.iter().any(|&c| c);
    match (p_any, q_any) {
        (false, false) => return 0.0,
        (false, true) | (true, false) => return f64::INFINITY,
        _ => {}
    }
    let dq = distance_transform(q, nx, ny, hx, hy);
    let dp = distance_transform(p, nx, ny, hx, hy);
    let mut worst = 0.0f64;
    for idx in 0..nx * ny {
        if p[idx] {
            worst = worst.max(dq[idx]);
        }
        if q[idx] {
            worst = worst.max(dp[idx]);
        }
    }
    libm::sqrt(worst)
}

/// Squared Euclidean distance from every cell center to the nearest set cell
/// center, by the two-pass lower-envelope-of-parabolas transform. Unreached
/// cells (possible only when the mask is empty) hold a sentinel larger than
/// any true squared distance in the frame.
fn distance_transform(mask: &[bool], nx: usize, ny: usize, hx: f64, hy: f64) -> Vec<f64> {
    let w = nx as f64 * hx;
    let h = ny as f64 * hy;
    // finite sentinel keeps the parabola intersections finite
    let big = 4.0 * (w * w + h * h) + 1.0;
    let mut g = vec![big; nx * ny];
    for (i, &m) in mask.iter().enumerate() {
        if m {
            g[i] = 0.0;
        }
    }
    // pass 1: along x within each row
    let mut row_in = vec![0.0f64; nx];
    let mut row_out = vec![0.0f64; nx];
    for iy in 0..ny {
        row_in.copy_from_slice(&g[iy * nx..(iy + 1) * nx]);
        dt_1d(&row_in, hx * hx, &mut row_out);
        g[iy * nx..(iy + 1) * nx].copy_from_slice(&row_out);
    }
    // pass 2: along y within each column
    let mut col_in = vec![0.0f64; ny];
    let mut col_out = vec![0.0f64; ny];
    for ix in 0..nx {
        for iy in 0..ny {
            col_in[iy] = g[iy * nx + ix];
        }
        dt_1d(&col_in, hy * hy, &mut col_out);
        for iy in 0..ny {
            g[iy * nx + ix] = col_out[iy];
        }
    }
    g
}

/// One-dimensional squared distance transform of a sampled function `f`,
/// cells spaced `sqrt(step2)` apart: `out[q] = min_p ((q-p)^2 step2 + f[p])`.
fn dt_1d(f: &[f64], step2: f64, out: &mut [f64]) {
    let n = f.len();
    debug_assert_eq!(out.len(), n);
    if n == 0 {
        return;
    }
    let sq = |i: usize| (i * i) as f64 * step2;
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        // f values are finite, so intersections are finite and the envelope
        // never pops below parabola 0 (z[0] is -inf).
        let mut s;
        loop {
            let p = v[k];
            s = ((f[q] + sq(q)) - (f[p] + sq(p))) / (2.0 * step2 * (q - p) as f64);
            if s <= z[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let d = q as f64 - p as f64;
        out[q] = d * d * step2 + f[p];
    }
}
