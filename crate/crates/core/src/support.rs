//! Support sets of marginal, joint, and conditional distributions.
//!
//! Four routes produce a support, matched to what the input exposes:
//! closure of the charged atom set (discrete), closure of the cells where
//! the canonical density is positive (continuous), closure of the cells
//! carrying probability mass (any CDF, including singular ones), and the
//! points-of-increase characterization probed at a finite epsilon schedule.

use alloc::vec::Vec;

use crate::dist::continuous::MONOTONE_SLACK;
use crate::dist::{
    canonical_pdf_1d, ContinuousJoint, DiscreteJoint, MarginalPmf, MixedJoint, DEFAULT_KINK_TOL,
    DEFAULT_STEP_1D, DEFAULT_STEP_2D, EPS_POS,
};
use crate::error::{invalid_distribution, invalid_input, Result};
use crate::region::{Axis, BBox, GridMask, Provenance, Region2D};
use crate::sets::{closure1d, limit_point_candidates, ClosedSet1D};

/// Window width for the accumulation-point heuristic.
pub const LIMIT_POINT_TOL: f64 = 1e-6;
/// Atoms that must fall inside one window to flag a candidate.
pub const LIMIT_POINT_MIN_COUNT: usize = 5;

/// Which route produced a support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportMethod {
    ClosureOfAtoms,
    CanonicalPdfGrid,
    NeighborhoodProbe,
    PointsOfIncrease,
    EmpiricalGrid,
}

/// Whether a discrete distribution's charged set is already closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Amiability {
    Yes,
    No,
    Unknown,
}

/// Marginal and joint supports of one bivariate distribution.
#[derive(Debug, Clone)]
pub struct SupportReport {
    pub s_x: ClosedSet1D,
    pub s_y: ClosedSet1D,
    pub s_xy: Region2D,
    pub method: SupportMethod,
    pub amiable_x: Amiability,
    pub amiable_y: Amiability,
}

/// One-dimensional density source: either a canonical density evaluator or
/// a CDF to be differentiated with kink suppression.
pub enum DensitySource1D<'a> {
    Pdf(&'a dyn Fn(f64) -> f64),
    Cdf(&'a dyn Fn(f64) -> f64),
}

/// Support of a discrete marginal: the charged atoms together with their
/// declared limit points. The charged set alone need not be closed.
pub fn support_discrete(m: &MarginalPmf) -> Result<ClosedSet1D> {
    let mut pts: Vec<f64> = m.atoms().iter().map(|a| a.0).collect();
    pts.extend_from_slice(m.declared_limit_points());
    closure1d(&[], &pts)
}

/// Checks whether the charged set is closed: `No` when a declared limit
/// point carries no mass, `Unknown` when clustering suggests an undeclared
/// accumulation point, `Yes` otherwise.
pub fn amiability_check(m: &MarginalPmf) -> Amiability {
    if m.declared_limit_points().iter().any(|&lp| m.pmf(lp) == 0.0) {
        return Amiability::No;
    }
    let positions: Vec<f64> = m.atoms().iter().map(|a| a.0).collect();
    if !limit_point_candidates(&positions, LIMIT_POINT_TOL, LIMIT_POINT_MIN_COUNT).is_empty() {
        return Amiability::Unknown;
    }
    Amiability::Yes
}

/// Support of a one-dimensional density on `domain`: closure of the grid
/// cells where the (canonical) density exceeds the positivity floor.
///
/// `clipped` marks domain edges that truncate an unbounded distribution;
/// when the support reaches a clipped edge the returned set carries the
/// matching unbounded flag. A density that vanishes on every cell cannot
/// have unit mass on the domain and is reported as invalid.
pub fn support_continuous_1d(
    src: DensitySource1D,
    domain: (f64, f64),
    grid_n: usize,
    clipped: (bool, bool),
) -> Result<ClosedSet1D> {
    let (lo, hi) = checked_domain(domain, grid_n)?;
    let h = (hi - lo) / grid_n as f64;
    let step = DEFAULT_STEP_1D.min(h / 4.0);
    let mut positive = Vec::with_capacity(grid_n);
    for i in 0..grid_n {
        let c = lo + (i as f64 + 0.5) * h;
        let v = match &src {
            DensitySource1D::Pdf(f) => {
                let v = f(c);
                if !v.is_finite() || v < 0.0 {
                    return Err(invalid_distribution("density must be finite and nonnegative"));
                }
                v
            }
            DensitySource1D::Cdf(f) => canonical_pdf_1d(f, c, step, DEFAULT_KINK_TOL)?,
        };
        positive.push(v > EPS_POS);
    }
    cells_to_set(lo, h, grid_n, &positive, clipped, "density")
}

/// Support via neighborhood mass: closure of the grid cells `[a, b]` with
/// `F(b) - F(a)` above the positivity floor. Works for any CDF, including
/// singular ones with no density anywhere.
pub fn support_neighborhood_1d(
    cdf: impl Fn(f64) -> f64,
    domain: (f64, f64),
    grid_n: usize,
    clipped: (bool, bool),
) -> Result<ClosedSet1D> {
    let (lo, hi) = checked_domain(domain, grid_n)?;
    let h = (hi - lo) / grid_n as f64;
    let f: Vec<f64> = (0..=grid_n)
        .map(|i| cdf(lo + i as f64 * h))
        .collect();
    for w in f.windows(2) {
        if !w[1].is_finite() {
            return Err(invalid_distribution("CDF must be finite on the domain"));
        }
        if w[1] < w[0] - MONOTONE_SLACK {
            return Err(invalid_distribution("CDF must be non-decreasing"));
        }
    }
    let positive: Vec<bool> = (0..grid_n).map(|i| f[i + 1] - f[i] > EPS_POS).collect();
    cells_to_set(lo, h, grid_n, &positive, clipped, "mass")
}

/// Bivariate input for [`support_region_2d`].
pub enum JointDensity<'a> {
    Continuous(&'a ContinuousJoint),
    Mixed(&'a MixedJoint),
}

impl<'a> From<&'a ContinuousJoint> for JointDensity<'a> {
    fn from(j: &'a ContinuousJoint) -> Self {
        JointDensity::Continuous(j)
    }
}

impl<'a> From<&'a MixedJoint> for JointDensity<'a> {
    fn from(j: &'a MixedJoint) -> Self {
        JointDensity::Mixed(j)
    }
}

/// Joint support region.
///
/// A joint with a declared positivity indicator rasterizes it exactly; a
/// CDF-backed joint rasterizes the positivity of the canonical density.
/// Both masks are closed by one-cell padding. A mixed joint keeps the exact
/// structure instead: one 1D support per discrete level.
pub fn support_region_2d<'a>(
    j: impl Into<JointDensity<'a>>,
    grid: (usize, usize),
) -> Result<Region2D> {
    let (nx, ny) = grid;
    match j.into() {
        JointDensity::Continuous(c) => {
            let bbox = *c.bbox();
            let mut r = if c.is_cdf_backed() {
                let (hx, hy) = (bbox.width() / nx as f64, bbox.height() / ny as f64);
                let step = DEFAULT_STEP_2D.min(hx.min(hy) / 4.0);
                let mask_err: core::cell::RefCell<Option<crate::error::Error>> =
                    core::cell::RefCell::new(None);
                let region =
                    Region2D::from_indicator(bbox, nx, ny, Provenance::GridEstimated, |x, y| {
                        match c.density(x, y, step, DEFAULT_KINK_TOL) {
                            Ok(v) => v > EPS_POS,
                            Err(e) => {
                                mask_err.borrow_mut().get_or_insert(e);
                                false
                            }
                        }
                    })?;
                if let Some(e) = mask_err.into_inner() {
                    return Err(e);
                }
                region
            } else {
                Region2D::from_indicator(bbox, nx, ny, Provenance::Analytic, |x, y| {
                    c.positive_at(x, y).unwrap_or(false)
                })?
            };
            r.dilate_closure();
            Ok(r)
        }
        JointDensity::Mixed(m) => {
            let n = nx.max(ny);
            let mut slices = Vec::with_capacity(m.levels().len());
            for level in m.levels() {
                let set = support_continuous_1d(
                    DensitySource1D::Pdf(&|t| level.conditional_at(t)),
                    m.domain(),
                    n,
                    (false, false),
                )?;
                slices.push((level.value, set));
            }
            Region2D::from_slices(m.discrete_axis(), slices, Provenance::GridEstimated)
        }
    }
}

/// Input carrying a conditional structure for [`conditional_support`].
pub enum ConditionalSource<'a> {
    Discrete(&'a DiscreteJoint),
    Mixed(&'a MixedJoint),
}

impl<'a> From<&'a DiscreteJoint> for ConditionalSource<'a> {
    fn from(j: &'a DiscreteJoint) -> Self {
        ConditionalSource::Discrete(j)
    }
}

impl<'a> From<&'a MixedJoint> for ConditionalSource<'a> {
    fn from(j: &'a MixedJoint) -> Self {
        ConditionalSource::Mixed(j)
    }
}

/// Support of one variable conditioned on an exact value of the other.
///
/// `given` names the axis being conditioned on. For a discrete joint the
/// value must charge an atom; for a mixed joint it must be a discrete level
/// (conditioning on the continuous axis is not offered). `grid_n` resolves
/// the conditional density of mixed joints and is ignored for discrete ones.
pub fn conditional_support<'a>(
    j: impl Into<ConditionalSource<'a>>,
    given: Axis,
    value: f64,
    grid_n: usize,
) -> Result<ClosedSet1D> {
    match j.into() {
        ConditionalSource::Discrete(d) => {
            let pick = |&((x, y), _): &((f64, f64), f64)| match given {
                Axis::X => (x, y),
                Axis::Y => (y, x),
            };
            let others: Vec<f64> = d
                .atoms()
                .iter()
                .filter(|a| pick(a).0 == value)
                .map(|a| pick(a).1)
                .collect();
            if others.is_empty() {
                return Err(invalid_input(
                    "conditioning value carries no marginal mass",
                ));
            }
            let mut pts = others;
            for &(lx, ly) in d.declared_limit_points() {
                let (cond, other) = match given {
                    Axis::X => (lx, ly),
                    Axis::Y => (ly, lx),
                };
                if cond == value {
                    pts.push(other);
                }
            }
            closure1d(&[], &pts)
        }
        ConditionalSource::Mixed(m) => {
            if given != m.discrete_axis() {
                return Err(invalid_input(
                    "mixed joints support conditioning on the discrete axis only",
                ));
            }
            let level = m
                .level(value)
                .ok_or_else(|| invalid_input("conditioning value carries no level weight"))?;
            support_continuous_1d(
                DensitySource1D::Pdf(&|t| level.conditional_at(t)),
                m.domain(),
                grid_n,
                (false, false),
            )
        }
    }
}

/// Decreasing probe schedule for points of increase at grid width `h`.
pub fn default_eps_schedule(h: f64) -> [f64; 3] {
    [4.0 * h, 2.0 * h, h]
}

/// Points of increase of a univariate CDF, probed on a lattice.
///
/// A lattice point passes when `F(x + eps) > F(x - eps)` for every `eps` in
/// the schedule; the smallest epsilon binds. Runs of adjacent passing points
/// close into intervals, isolated ones become atoms. The finite schedule
/// cannot resolve features narrower than the lattice step, so answers are
/// exact only up to one step.
pub fn points_of_increase_1d(
    cdf: impl Fn(f64) -> f64,
    domain: (f64, f64),
    grid_n: usize,
    eps_list: &[f64],
) -> Result<ClosedSet1D> {
    let (lo, hi) = checked_domain(domain, grid_n)?;
    checked_eps(eps_list)?;
    let h = (hi - lo) / grid_n as f64;
    let lattice: Vec<f64> = (0..=grid_n).map(|i| lo + i as f64 * h).collect();
    let mut last = f64::NEG_INFINITY;
    for &x in &lattice {
        let v = cdf(x);
        if !v.is_finite() {
            return Err(invalid_distribution("CDF must be finite on the domain"));
        }
        if v < last - MONOTONE_SLACK {
            return Err(invalid_distribution("CDF must be non-decreasing"));
        }
        last = last.max(v);
    }
    let passing: Vec<bool> = lattice
        .iter()
        .map(|&x| eps_list.iter().all(|&e| cdf(x + e) > cdf(x - e)))
        .collect();

    let mut intervals = Vec::new();
    let mut atoms = Vec::new();
    let mut i = 0;
    while i <= grid_n {
        if !passing[i] {
            i += 1;
            continue;
        }
        let start = i;
        // adjacent lattice points are exactly one step apart; the 1.5 h
        // gap rule therefore merges consecutive indices and nothing else
        while i + 1 <= grid_n && passing[i + 1] {
            i += 1;
        }
        if i == start {
            atoms.push(lattice[start]);
        } else {
            intervals.push((lattice[start], lattice[i]));
        }
        i += 1;
    }
    closure1d(&intervals, &atoms)
}

/// Bivariate points of increase: cell centers whose probe rectangle
/// carries mass at every epsilon in the schedule.
///
/// Experimental. The rectangle test is only conjectured to recover the
/// support, so callers compare its mask against the density route and
/// record differences instead of asserting agreement.
pub fn points_of_increase_2d(
    cdf2: impl Fn(f64, f64) -> f64,
    bbox: BBox,
    grid: (usize, usize),
    eps_list: &[f64],
) -> Result<Region2D> {
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(invalid_input("grid must be at least 2 cells per axis"));
    }
    checked_eps(eps_list)?;
    let (hx, hy) = (bbox.width() / nx as f64, bbox.height() / ny as f64);
    let mut mask = GridMask::new(nx, ny);
    for iy in 0..ny {
        for ix in 0..nx {
            let x = bbox.x_lo + (ix as f64 + 0.5) * hx;
            let y = bbox.y_lo + (iy as f64 + 0.5) * hy;
            let mut all = true;
            for &e in eps_list {
                let m = cdf2(x + e, y + e) - cdf2(x - e, y + e) - cdf2(x + e, y - e)
                    + cdf2(x - e, y - e);
                if !m.is_finite() {
                    return Err(invalid_distribution("CDF must be finite on the domain"));
                }
                if m < -MONOTONE_SLACK {
                    return Err(invalid_distribution(
                        "CDF assigns negative mass to a rectangle",
                    ));
                }
                if m <= EPS_POS {
                    all = false;
                    break;
                }
            }
            if all {
                mask.set(ix, iy, true);
            }
        }
    }
    Region2D::from_mask(bbox, mask, Provenance::GridEstimated)
}

/// Support estimated from samples: cells holding at least `min_count`
/// points. Samples outside the frame are ignored; no closure padding is
/// added, the mask is reported as observed.
pub fn empirical_support(
    samples: &[(f64, f64)],
    bbox: BBox,
    grid: (usize, usize),
    min_count: usize,
) -> Result<Region2D> {
    if samples.is_empty() {
        return Err(invalid_input("need at least one sample"));
    }
    if min_count == 0 {
        return Err(invalid_input("min_count must be at least one"));
    }
    let (nx, ny) = grid;
    if nx < 2 || ny < 2 {
        return Err(invalid_input("grid must be at least 2 cells per axis"));
    }
    let (hx, hy) = (bbox.width() / nx as f64, bbox.height() / ny as f64);
    let mut counts = alloc::vec![0usize; nx * ny];
    for &(x, y) in samples {
        if !bbox.contains(x, y) {
            continue;
        }
        let ix = (((x - bbox.x_lo) / hx) as usize).min(nx - 1);
        let iy = (((y - bbox.y_lo) / hy) as usize).min(ny - 1);
        counts[iy * nx + ix] += 1;
    }
    let mut mask = GridMask::new(nx, ny);
    for iy in 0..ny {
        for ix in 0..nx {
            if counts[iy * nx + ix] >= min_count {
                mask.set(ix, iy, true);
            }
        }
    }
    Region2D::from_mask(bbox, mask, Provenance::GridEstimated)
}

/// Mass the CDF assigns to a rectangle by inclusion-exclusion.
pub fn rectangle_mass(
    cdf2: impl Fn(f64, f64) -> f64,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
) -> f64 {
    cdf2(x_hi, y_hi) - cdf2(x_lo, y_hi) - cdf2(x_hi, y_lo) + cdf2(x_lo, y_lo)
}

fn checked_domain(domain: (f64, f64), grid_n: usize) -> Result<(f64, f64)> {
    let (lo, hi) = domain;
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(invalid_input("domain must be a finite interval with lo < hi"));
    }
    if grid_n < 2 {
        return Err(invalid_input("grid must have at least 2 cells"));
    }
    Ok((lo, hi))
}

fn checked_eps(eps_list: &[f64]) -> Result<()> {
    if eps_list.is_empty() {
        return Err(invalid_input("epsilon schedule must be nonempty"));
    }
    if eps_list.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
        return Err(invalid_input("epsilons must be positive and finite"));
    }
    Ok(())
}

/// Closes runs of positive cells into intervals and flags clipped edges.
fn cells_to_set(
    lo: f64,
    h: f64,
    grid_n: usize,
    positive: &[bool],
    clipped: (bool, bool),
    what: &str,
) -> Result<ClosedSet1D> {
    let mut intervals = Vec::new();
    let mut i = 0;
    while i < grid_n {
        if !positive[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < grid_n && positive[i + 1] {
            i += 1;
        }
        intervals.push((lo + start as f64 * h, lo + (i + 1) as f64 * h));
        i += 1;
    }
    if intervals.is_empty() {
        return Err(invalid_distribution(alloc::format!(
            "no {what} found anywhere on the domain"
        )));
    }
    let set = closure1d(&intervals, &[])?;
    set.flag_unbounded(
        clipped.0 && positive[0],
        clipped.1 && positive[grid_n - 1],
    )
}
