//! Support-factorization screening and factorization oracles.
//!
//! Independence forces the joint support to be the Cartesian product of the
//! marginal supports. The converse fails, so the screening vocabulary never
//! says "independent": a factored support is merely inconclusive. The
//! oracles compare the distributions themselves; for discrete joints the
//! comparison is exhaustive and exact, for continuous ones it is limited to
//! finitely many probe points and can only ever refute.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dist::{marginals, ContinuousJoint, DiscreteJoint, MixedJoint, DEFAULT_KINK_TOL,
    DEFAULT_STEP_2D};
use crate::error::{invalid_distribution, invalid_input, Result};
use crate::numerics::{simpson, SplitMix64, SIMPSON_PANELS};
use crate::region::{
    cartesian_product, cartesian_product_gridded, region_compare, Axis, Provenance, Region2D,
    RegionData,
};
use crate::sets::ClosedSet1D;
use crate::support::{conditional_support, support_continuous_1d, support_discrete,
    DensitySource1D};

/// Exhaustive-oracle tolerance: exact arithmetic up to float dust.
pub const DISCRETE_ORACLE_TOL: f64 = 1e-12;
/// Probe tolerance for density and CDF factorization checks.
pub const PROBE_TOL: f64 = 1e-3;

/// Outcome of the support-factorization screen. Deliberately two-valued:
/// the condition is necessary, so a pass proves nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Screening {
    DependentBySupport,
    Inconclusive,
}

/// Outcome of a factorization oracle. `Independent` is only ever produced
/// by exhaustive comparison; probe-based checks top out at
/// `ConsistentWithIndependence`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Independent,
    Dependent,
    ConsistentWithIndependence,
}

/// A point where two compared quantities disagree (or, for region
/// comparisons, membership indicators on the two sides).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Combined screening and oracle outcome for one distribution.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub screening: Screening,
    pub oracle: Option<OracleVerdict>,
    /// Symmetric-difference measure between the joint support and the
    /// product of marginal supports.
    pub gap: f64,
    /// True when `gap` counts atoms rather than measuring area or length.
    pub gap_is_count: bool,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Verdict {
    /// The theorem's contrapositive: an exhaustively verified independent
    /// joint can never fail the support screen.
    pub fn contrapositive_consistent(&self) -> bool {
        !(self.oracle == Some(OracleVerdict::Independent)
            && self.screening == Screening::DependentBySupport)
    }
}

/// Screens the necessary condition: is the joint support the product of
/// the marginal supports?
///
/// `tol_measure` bounds the symmetric-difference measure and `tol_dist` the
/// Hausdorff distance for the two supports to count as equal. Exceeding
/// either yields `DependentBySupport`; the sym-diff measure is reported as
/// the gap either way.
pub fn necessary_condition(
    s_xy: &Region2D,
    s_x: &ClosedSet1D,
    s_y: &ClosedSet1D,
    tol_measure: f64,
    tol_dist: f64,
) -> Result<Verdict> {
    let product = match s_xy.data() {
        RegionData::Grid { .. } => {
            let (nx, ny) = s_xy.grid_dims().expect("grid");
            cartesian_product_gridded(s_x, s_y, s_xy.bbox(), nx, ny)?
        }
        _ => cartesian_product(s_x, s_y, 64, 64)?,
    };
    let report = region_compare(s_xy, &product, tol_measure, tol_dist)?;
    let screening = if report.equal_within_tol {
        Screening::Inconclusive
    } else {
        Screening::DependentBySupport
    };
    let witnesses = report
        .witnesses
        .iter()
        .map(|w| Witness {
            x: w.x,
            y: w.y,
            lhs: if w.in_first { 1.0 } else { 0.0 },
            rhs: if w.in_first { 0.0 } else { 1.0 },
        })
        .collect();
    let mut notes = Vec::new();
    if s_xy.provenance() == Provenance::GridEstimated {
        notes.push(String::from("joint support was grid-estimated"));
    }
    Ok(Verdict {
        screening,
        oracle: None,
        gap: report.sym_diff_measure,
        gap_is_count: report.measure_is_count,
        witnesses,
        notes,
    })
}

/// Exhaustive factorization check over the product of marginal atom sets.
/// Returns the verdict, the worst point, and the largest deviation.
pub fn discrete_factorization_oracle(
    j: &DiscreteJoint,
    tol: f64,
) -> Result<(OracleVerdict, Option<Witness>, f64)> {
    if !(tol >= 0.0) {
        return Err(invalid_input("tolerance must be nonnegative"));
    }
    let (mx, my) = marginals(j);
    let mut worst: Option<Witness> = None;
    let mut max_diff = 0.0f64;
    for &(x, px) in mx.atoms() {
        for &(y, py) in my.atoms() {
            let joint = j.pmf(x, y);
            let prod = px * py;
            let diff = (joint - prod).abs();
            if worst.is_none() || diff > max_diff {
                max_diff = diff;
                worst = Some(Witness {
                    x,
                    y,
                    lhs: joint,
                    rhs: prod,
                });
            }
        }
    }
    let verdict = if max_diff <= tol {
        OracleVerdict::Independent
    } else {
        OracleVerdict::Dependent
    };
    Ok((verdict, worst, max_diff))
}

/// Deterministic probe set: a 7 by 7 Chebyshev-spaced grid strictly inside
/// the box, plus 20 seeded uniform points.
pub fn default_probe_points(
    x_range: (f64, f64),
    y_range: (f64, f64),
    seed: u64,
) -> Vec<(f64, f64)> {
    let node = |range: (f64, f64), k: usize| {
        let c = 0.5 * (range.0 + range.1);
        let r = 0.5 * (range.1 - range.0);
        c + r * libm::cos((2.0 * k as f64 + 1.0) * core::f64::consts::PI / 14.0)
    };
    let mut pts = Vec::with_capacity(49 + 20);
    for kx in 0..7 {
        for ky in 0..7 {
            pts.push((node(x_range, kx), node(y_range, ky)));
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..20 {
        let x = rng.uniform(x_range.0, x_range.1);
        let y = rng.uniform(y_range.0, y_range.1);
        pts.push((x, y));
    }
    pts
}

/// Probes the density factorization `f_XY = f_X * f_Y` at the given points.
///
/// Marginal densities are supplied by the caller or computed by composite
/// Simpson marginalization of the canonical density over the box. A single
/// deviation beyond `tol` refutes independence; agreement at every probe
/// proves nothing and is reported as such.
pub fn continuous_factorization_probe(
    j: &ContinuousJoint,
    probes: &[(f64, f64)],
    user_marginals: Option<(&dyn Fn(f64) -> f64, &dyn Fn(f64) -> f64)>,
    tol: f64,
) -> Result<(OracleVerdict, Option<Witness>, f64)> {
    if probes.is_empty() {
        return Err(invalid_input("need at least one probe point"));
    }
    if !(tol > 0.0) {
        return Err(invalid_input("tolerance must be positive"));
    }
    let bbox = *j.bbox();
    let marginal_x = |x: f64| -> Result<f64> {
        match user_marginals {
            Some((fx, _)) => Ok(fx(x)),
            None => marginalize(j, Axis::X, x),
        }
    };
    let marginal_y = |y: f64| -> Result<f64> {
        match user_marginals {
            Some((_, fy)) => Ok(fy(y)),
            None => marginalize(j, Axis::Y, y),
        }
    };
    let mut worst: Option<Witness> = None;
    let mut max_diff = 0.0f64;
    for &(x, y) in probes {
        if !bbox.contains(x, y) {
            return Err(invalid_input("probe point outside the joint box"));
        }
        let joint = j.density(x, y, DEFAULT_STEP_2D, DEFAULT_KINK_TOL)?;
        let prod = marginal_x(x)? * marginal_y(y)?;
        let diff = (joint - prod).abs();
        if worst.is_none() || diff > max_diff {
            max_diff = diff;
            worst = Some(Witness {
                x,
                y,
                lhs: joint,
                rhs: prod,
            });
        }
    }
    let verdict = if max_diff > tol {
        OracleVerdict::Dependent
    } else {
        OracleVerdict::ConsistentWithIndependence
    };
    Ok((verdict, worst, max_diff))
}

/// Probes the CDF factorization `F_XY = F_X * F_Y` at the given points.
pub fn cdf_factorization_probe(
    f_xy: impl Fn(f64, f64) -> f64,
    f_x: impl Fn(f64) -> f64,
    f_y: impl Fn(f64) -> f64,
    probes: &[(f64, f64)],
    tol: f64,
) -> Result<(OracleVerdict, Option<Witness>, f64)> {
    if probes.is_empty() {
        return Err(invalid_input("need at least one probe point"));
    }
    if !(tol > 0.0) {
        return Err(invalid_input("tolerance must be positive"));
    }
    let mut worst: Option<Witness> = None;
    let mut max_diff = 0.0f64;
    for &(x, y) in probes {
        let joint = f_xy(x, y);
        let prod = f_x(x) * f_y(y);
        if !joint.is_finite() || !prod.is_finite() {
            return Err(invalid_distribution("CDF must be finite at probe points"));
        }
        let diff = (joint - prod).abs();
        if worst.is_none() || diff > max_diff {
            max_diff = diff;
            worst = Some(Witness {
                x,
                y,
                lhs: joint,
                rhs: prod,
            });
        }
    }
    let verdict = if max_diff > tol {
        OracleVerdict::Dependent
    } else {
        OracleVerdict::ConsistentWithIndependence
    };
    Ok((verdict, worst, max_diff))
}

/// Input for [`conditional_support_check`].
pub enum ConditionalCheckInput<'a> {
    Discrete(&'a DiscreteJoint),
    Mixed(&'a MixedJoint),
}

impl<'a> From<&'a DiscreteJoint> for ConditionalCheckInput<'a> {
    fn from(j: &'a DiscreteJoint) -> Self {
        ConditionalCheckInput::Discrete(j)
    }
}

impl<'a> From<&'a MixedJoint> for ConditionalCheckInput<'a> {
    fn from(j: &'a MixedJoint) -> Self {
        ConditionalCheckInput::Mixed(j)
    }
}

/// Values whose conditional support differs from the marginal support.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalCheck {
    pub screening: Screening,
    /// Conditioning values along X whose Y-section support differs from S_Y.
    pub offenders_x: Vec<f64>,
    /// Conditioning values along Y whose X-section support differs from S_X.
    pub offenders_y: Vec<f64>,
}

/// Screens independence through sections: every conditional support must
/// equal the matching marginal support, in both directions where sections
/// exist. Equivalent to the product-support screen, checked section-wise.
pub fn conditional_support_check<'a>(
    j: impl Into<ConditionalCheckInput<'a>>,
    grid_n: usize,
) -> Result<ConditionalCheck> {
    match j.into() {
        ConditionalCheckInput::Discrete(d) => {
            let (mx, my) = marginals(d);
            let s_x = support_discrete(&mx)?;
            let s_y = support_discrete(&my)?;
            let mut offenders_x = Vec::new();
            for &(x, _) in mx.atoms() {
                let section = conditional_support(d, Axis::X, x, grid_n)?;
                if section != s_y {
                    offenders_x.push(x);
                }
            }
            let mut offenders_y = Vec::new();
            for &(y, _) in my.atoms() {
                let section = conditional_support(d, Axis::Y, y, grid_n)?;
                if section != s_x {
                    offenders_y.push(y);
                }
            }
            let screening = if offenders_x.is_empty() && offenders_y.is_empty() {
                Screening::Inconclusive
            } else {
                Screening::DependentBySupport
            };
            Ok(ConditionalCheck {
                screening,
                offenders_x,
                offenders_y,
            })
        }
        ConditionalCheckInput::Mixed(m) => {
            // marginal support of the continuous coordinate: positivity of
            // the weighted level mixture
            let mixture = |t: f64| m.levels().iter().map(|l| l.joint_at(t)).sum::<f64>();
            let marginal = support_continuous_1d(
                DensitySource1D::Pdf(&mixture),
                m.domain(),
                grid_n,
                (false, false),
            )?;
            let mut offenders = Vec::new();
            for level in m.levels() {
                let section =
                    conditional_support(m, m.discrete_axis(), level.value, grid_n)?;
                if section != marginal {
                    offenders.push(level.value);
                }
            }
            let screening = if offenders.is_empty() {
                Screening::Inconclusive
            } else {
                Screening::DependentBySupport
            };
            // offenders are conditioning values on the discrete axis
            let (offenders_x, offenders_y) = match m.discrete_axis() {
                Axis::X => (offenders, Vec::new()),
                Axis::Y => (Vec::new(), offenders),
            };
            Ok(ConditionalCheck {
                screening,
                offenders_x,
                offenders_y,
            })
        }
    }
}

/// Support-factorization screen for an n-ary finite table: the set of
/// charged tuples must be the n-fold product of the per-axis charged sets.
/// Returns the screening and, when dependent, one missing tuple.
pub fn nary_discrete_check(
    table: &[(Vec<f64>, f64)],
) -> Result<(Screening, Option<Vec<f64>>)> {
    if table.is_empty() {
        return Err(invalid_input("table must be nonempty"));
    }
    let n = table[0].0.len();
    if n < 2 {
        return Err(invalid_input("need at least two coordinates"));
    }
    let mut total = 0.0;
    for (tuple, p) in table {
        if tuple.len() != n {
            return Err(invalid_input("all tuples must have the same arity"));
        }
        if tuple.iter().any(|v| !v.is_finite()) {
            return Err(invalid_input("tuple coordinates must be finite"));
        }
        if !(*p > 0.0) || !p.is_finite() {
            return Err(invalid_distribution("atom masses must be positive"));
        }
        total += p;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid_distribution("table mass must sum to one"));
    }

    let mut axis_values: Vec<Vec<f64>> = alloc::vec![Vec::new(); n];
    for (tuple, _) in table {
        for (k, &v) in tuple.iter().enumerate() {
            axis_values[k].push(v);
        }
    }
    for vals in &mut axis_values {
        vals.sort_by(f64::total_cmp);
        vals.dedup();
    }
    let mut charged: Vec<&[f64]> = table.iter().map(|(t, _)| t.as_slice()).collect();
    charged.sort_by(|a, b| cmp_tuples(a, b));

    // odometer over the product of per-axis value sets
    let mut index = alloc::vec![0usize; n];
    let mut current = alloc::vec![0.0f64; n];
    loop {
        for k in 0..n {
            current[k] = axis_values[k][index[k]];
        }
        if charged
            .binary_search_by(|probe| cmp_tuples(probe, &current))
            .is_err()
        {
            return Ok((Screening::DependentBySupport, Some(current)));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok((Screening::Inconclusive, None));
            }
            k -= 1;
            index[k] += 1;
            if index[k] < axis_values[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

fn cmp_tuples(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.total_cmp(y);
        if c != core::cmp::Ordering::Equal {
            return c;
        }
    }
    core::cmp::Ordering::Equal
}

/// Canonical marginal density of a continuous joint along one axis by
/// numeric integration over the other.
fn marginalize(j: &ContinuousJoint, axis: Axis, at: f64) -> Result<f64> {
    let bbox = j.bbox();
    let (lo, hi) = match axis {
        Axis::X => (bbox.y_lo, bbox.y_hi),
        Axis::Y => (bbox.x_lo, bbox.x_hi),
    };
    let err: core::cell::RefCell<Option<crate::error::Error>> = core::cell::RefCell::new(None);
    let value = simpson(
        |t| {
            let (x, y) = match axis {
                Axis::X => (at, t),
                Axis::Y => (t, at),
            };
            match j.density(x, y, DEFAULT_STEP_2D, DEFAULT_KINK_TOL) {
                Ok(v) => v,
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        lo,
        hi,
        SIMPSON_PANELS,
    )?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{
        additive_uniform_joint, darts_joint, normal_pdf, ratio_product_joint,
        with_replacement_table, without_replacement_table,
    };
    use crate::dist::{beta_bernoulli_joint, MarginalPmf};
    use crate::region::BBox;
    use crate::support::support_region_2d;

    fn outer_product(mx: &MarginalPmf, my: &MarginalPmf) -> DiscreteJoint {
        let mut atoms = Vec::new();
        for &(x, px) in mx.atoms() {
            for &(y, py) in my.atoms() {
                atoms.push(((x, y), px * py));
            }
        }
        DiscreteJoint::new(&atoms, &[]).unwrap()
    }

    fn random_pmf(rng: &mut SplitMix64, max_atoms: usize) -> MarginalPmf {
        let k = 1 + rng.below(max_atoms);
        let mut atoms = Vec::with_capacity(k);
        let mut total = 0.0;
        for i in 0..k {
            let w = rng.uniform(0.1, 1.0);
            atoms.push((i as f64 + rng.uniform(-0.3, 0.3), w));
            total += w;
        }
        for a in &mut atoms {
            a.1 /= total;
        }
        MarginalPmf::new(&atoms, &[]).unwrap()
    }

    #[test]
    fn disk_support_fails_the_product_screen_by_the_corner_area() {
        let j = darts_joint().unwrap();
        let n = 256;
        let s_xy = support_region_2d(&j, (n, n)).unwrap();
        let s = ClosedSet1D::interval(-1.0, 1.0).unwrap();
        let v = necessary_condition(&s_xy, &s, &s, 1e-6, 0.0).unwrap();
        assert_eq!(v.screening, Screening::DependentBySupport);
        let want = 4.0 - core::f64::consts::PI;
        assert!((v.gap - want).abs() <= 10.0 * (2.0 / n as f64), "{}", v.gap);
        assert!(!v.witnesses.is_empty());
        // every witness lies in the product but not the disk
        for w in &v.witnesses {
            assert_eq!(w.lhs, 0.0);
            assert_eq!(w.rhs, 1.0);
        }
    }

    #[test]
    fn additive_density_passes_the_screen_but_fails_the_density_probe() {
        let j = additive_uniform_joint().unwrap();
        let s_xy = support_region_2d(&j, (128, 128)).unwrap();
        let s = ClosedSet1D::interval(0.0, 1.0).unwrap();
        let v = necessary_condition(&s_xy, &s, &s, 1e-6, 0.0).unwrap();
        assert_eq!(v.screening, Screening::Inconclusive);
        assert_eq!(v.gap, 0.0);

        let (verdict, worst, _) =
            continuous_factorization_probe(&j, &[(0.1, 0.1)], None, PROBE_TOL).unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
        let w = worst.unwrap();
        assert!((w.lhs - 0.2).abs() <= 1e-9, "{}", w.lhs);
        assert!((w.rhs - 0.36).abs() <= 1e-6, "{}", w.rhs);

        // at the center the two sides happen to coincide
        let (_, center, diff) =
            continuous_factorization_probe(&j, &[(0.5, 0.5)], None, PROBE_TOL).unwrap();
        assert!(diff <= 1e-6, "{diff}");
        let c = center.unwrap();
        assert!((c.lhs - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn sampling_tables_split_exactly_as_expected() {
        let (verdict, _, diff) =
            discrete_factorization_oracle(&with_replacement_table().unwrap(), DISCRETE_ORACLE_TOL)
                .unwrap();
        assert_eq!(verdict, OracleVerdict::Independent);
        assert!(diff <= 1e-15);

        let (verdict, worst, _) =
            discrete_factorization_oracle(&without_replacement_table().unwrap(), DISCRETE_ORACLE_TOL)
                .unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
        let w = worst.unwrap();
        // the diagonal is impossible under the joint yet charged by the product
        assert_eq!(w.x, w.y);
        assert_eq!(w.lhs, 0.0);
        assert!((w.rhs - 1.0 / 9.0).abs() <= 1e-15);
    }

    #[test]
    fn outer_products_are_independent() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..20 {
            let mx = random_pmf(&mut rng, 8);
            let my = random_pmf(&mut rng, 8);
            let j = outer_product(&mx, &my);
            let (verdict, _, _) =
                discrete_factorization_oracle(&j, DISCRETE_ORACLE_TOL).unwrap();
            assert_eq!(verdict, OracleVerdict::Independent);
        }
    }

    #[test]
    fn darts_density_refutes_independence_against_analytic_marginals() {
        let j = darts_joint().unwrap();
        let semicircle = |t: f64| {
            if t.abs() <= 1.0 {
                2.0 * libm::sqrt(1.0 - t * t) / core::f64::consts::PI
            } else {
                0.0
            }
        };
        let (verdict, worst, _) = continuous_factorization_probe(
            &j,
            &[(0.0, 0.0)],
            Some((&semicircle, &semicircle)),
            PROBE_TOL,
        )
        .unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
        let w = worst.unwrap();
        assert!((w.lhs - core::f64::consts::FRAC_1_PI).abs() <= 1e-12);
        let sq = 4.0 / (core::f64::consts::PI * core::f64::consts::PI);
        assert!((w.rhs - sq).abs() <= 1e-12);
        // numeric marginalization reaches the same verdict
        let (verdict, _, _) =
            continuous_factorization_probe(&j, &[(0.0, 0.0)], None, PROBE_TOL).unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
    }

    #[test]
    fn product_normal_probes_clean() {
        let bbox = BBox::square(-4.0, 4.0).unwrap();
        let j = ContinuousJoint::pdf_backed(
            bbox,
            alloc::boxed::Box::new(|x, y| normal_pdf(x) * normal_pdf(y)),
            alloc::boxed::Box::new(|_, _| true),
            Vec::new(),
        )
        .unwrap();
        let probes = default_probe_points((-4.0, 4.0), (-4.0, 4.0), 7);
        assert_eq!(probes.len(), 69);
        let (verdict, _, diff) =
            continuous_factorization_probe(&j, &probes, None, PROBE_TOL).unwrap();
        assert_eq!(verdict, OracleVerdict::ConsistentWithIndependence);
        // truncation at four sigma costs well under the probe tolerance
        assert!(diff <= 1e-4, "{diff}");
    }

    #[test]
    fn cdf_probe_catches_the_table_and_the_mixed_joint() {
        let srs = without_replacement_table().unwrap();
        let (mx, my) = marginals(&srs);
        let (verdict, worst, _) = cdf_factorization_probe(
            |x, y| srs.cdf(x, y),
            |x| mx.cdf(x),
            |y| my.cdf(y),
            &[(4.5, 4.5)],
            PROBE_TOL,
        )
        .unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
        let w = worst.unwrap();
        assert_eq!(w.lhs, 0.0);
        assert!((w.rhs - 1.0 / 9.0).abs() <= 1e-15);

        let bb = beta_bernoulli_joint(1.0, 1.0).unwrap();
        let (verdict, worst, _) = cdf_factorization_probe(
            |x, y| bb.cdf_xy(x, y).unwrap(),
            |x| bb.cdf_xy(x, 1.0).unwrap(),
            |y| bb.cdf_xy(1.0, y).unwrap(),
            &[(0.5, 0.5)],
            PROBE_TOL,
        )
        .unwrap();
        assert_eq!(verdict, OracleVerdict::Dependent);
        let w = worst.unwrap();
        assert!((w.lhs - 0.375).abs() <= 1e-9, "{}", w.lhs);
        assert!((w.rhs - 0.25).abs() <= 1e-9, "{}", w.rhs);

        let product = |x: f64, y: f64| x.clamp(0.0, 1.0) * y.clamp(0.0, 1.0);
        let (verdict, _, _) = cdf_factorization_probe(
            product,
            |x| x.clamp(0.0, 1.0),
            |y| y.clamp(0.0, 1.0),
            &default_probe_points((0.0, 1.0), (0.0, 1.0), 3),
            PROBE_TOL,
        )
        .unwrap();
        assert_eq!(verdict, OracleVerdict::ConsistentWithIndependence);
    }

    #[test]
    fn conditional_sections_flag_the_missing_diagonal() {
        let check = conditional_support_check(&without_replacement_table().unwrap(), 0).unwrap();
        assert_eq!(check.screening, Screening::DependentBySupport);
        assert_eq!(check.offenders_x, alloc::vec![4.0, 5.0, 7.0]);
        assert_eq!(check.offenders_y, alloc::vec![4.0, 5.0, 7.0]);

        let check = conditional_support_check(&with_replacement_table().unwrap(), 0).unwrap();
        assert_eq!(check.screening, Screening::Inconclusive);
        assert!(check.offenders_x.is_empty() && check.offenders_y.is_empty());
    }

    #[test]
    fn beta_bernoulli_sections_pass_while_the_oracle_refutes() {
        let j = beta_bernoulli_joint(1.0, 1.0).unwrap();
        let check = conditional_support_check(&j, 512).unwrap();
        assert_eq!(check.screening, Screening::Inconclusive);
        // the screen is satisfied even though the CDF probe above refutes
        // independence: necessity without sufficiency
    }

    #[test]
    fn triple_tables_screen_correctly() {
        let fair: Vec<(Vec<f64>, f64)> = (0..8)
            .map(|k| {
                let t = alloc::vec![(k & 1) as f64, ((k >> 1) & 1) as f64, ((k >> 2) & 1) as f64];
                (t, 1.0 / 8.0)
            })
            .collect();
        let (screening, missing) = nary_discrete_check(&fair).unwrap();
        assert_eq!(screening, Screening::Inconclusive);
        assert!(missing.is_none());

        let parity: Vec<(Vec<f64>, f64)> = (0..8)
            .filter(|k| (k & 1) ^ ((k >> 1) & 1) ^ ((k >> 2) & 1) == 0)
            .map(|k| {
                let t = alloc::vec![(k & 1) as f64, ((k >> 1) & 1) as f64, ((k >> 2) & 1) as f64];
                (t, 1.0 / 4.0)
            })
            .collect();
        assert_eq!(parity.len(), 4);
        let (screening, missing) = nary_discrete_check(&parity).unwrap();
        assert_eq!(screening, Screening::DependentBySupport);
        let m = missing.unwrap();
        let x = (m[0] as u32) ^ (m[1] as u32) ^ (m[2] as u32);
        assert_eq!(x, 1, "missing tuple must have odd parity: {m:?}");
    }

    #[test]
    fn pairwise_nary_matches_the_region_screen() {
        for j in [with_replacement_table().unwrap(), without_replacement_table().unwrap()] {
            let table: Vec<(Vec<f64>, f64)> = j
                .atoms()
                .iter()
                .map(|&((x, y), p)| (alloc::vec![x, y], p))
                .collect();
            let (nary, _) = nary_discrete_check(&table).unwrap();

            let (mx, my) = marginals(&j);
            let s_x = support_discrete(&mx).unwrap();
            let s_y = support_discrete(&my).unwrap();
            let pts: Vec<(f64, f64)> = j.atoms().iter().map(|a| a.0).collect();
            let s_xy = Region2D::from_atoms(&pts, Provenance::Analytic).unwrap();
            let v = necessary_condition(&s_xy, &s_x, &s_y, 0.0, 0.0).unwrap();
            assert_eq!(nary, v.screening);
        }
    }

    #[test]
    fn soundness_sweep_never_flags_outer_products() {
        let mut rng = SplitMix64::new(2026);
        for _ in 0..200 {
            let mx = random_pmf(&mut rng, 8);
            let my = random_pmf(&mut rng, 8);
            let j = outer_product(&mx, &my);
            let (oracle, _, _) = discrete_factorization_oracle(&j, DISCRETE_ORACLE_TOL).unwrap();
            assert_eq!(oracle, OracleVerdict::Independent);

            let pts: Vec<(f64, f64)> = j.atoms().iter().map(|a| a.0).collect();
            let s_xy = Region2D::from_atoms(&pts, Provenance::Analytic).unwrap();
            let s_x = support_discrete(&marginals(&j).0).unwrap();
            let s_y = support_discrete(&marginals(&j).1).unwrap();
            let v = necessary_condition(&s_xy, &s_x, &s_y, 0.0, 0.0).unwrap();
            assert_eq!(v.screening, Screening::Inconclusive, "false positive");
        }
    }

    #[test]
    fn contrapositive_holds_across_random_tables() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            // random sparse table on a 5x5 lattice, not necessarily a product
            let mut atoms = Vec::new();
            let mut total = 0.0;
            for x in 0..5 {
                for y in 0..5 {
                    if rng.next_f64() < 0.55 {
                        let w = rng.uniform(0.05, 1.0);
                        atoms.push(((x as f64, y as f64), w));
                        total += w;
                    }
                }
            }
            if atoms.is_empty() {
                continue;
            }
            for a in &mut atoms {
                a.1 /= total;
            }
            let j = DiscreteJoint::new(&atoms, &[]).unwrap();
            let (oracle, _, _) = discrete_factorization_oracle(&j, DISCRETE_ORACLE_TOL).unwrap();

            let pts: Vec<(f64, f64)> = j.atoms().iter().map(|a| a.0).collect();
            let s_xy = Region2D::from_atoms(&pts, Provenance::Analytic).unwrap();
            let s_x = support_discrete(&marginals(&j).0).unwrap();
            let s_y = support_discrete(&marginals(&j).1).unwrap();
            let mut v = necessary_condition(&s_xy, &s_x, &s_y, 0.0, 0.0).unwrap();
            v.oracle = Some(oracle);
            assert!(v.contrapositive_consistent());

            // the section screen always matches the region screen
            let check = conditional_support_check(&j, 0).unwrap();
            assert_eq!(check.screening, v.screening);
        }
    }

    #[test]
    fn pushforward_region_fails_the_screen() {
        let j = ratio_product_joint(8.0).unwrap();
        let s_xy = support_region_2d(&j, (256, 256)).unwrap();
        let s_y1 = ClosedSet1D::interval(0.0, 8.0)
            .unwrap()
            .flag_unbounded(false, true)
            .unwrap();
        let s_y2 = ClosedSet1D::interval(0.0, 1.0).unwrap();
        let v = necessary_condition(&s_xy, &s_y1, &s_y2, 1e-6, 0.0).unwrap();
        assert_eq!(v.screening, Screening::DependentBySupport);
        // the product box has area 8, the wedge under min(y1, 1/y1) keeps
        // area 1/2 + ln 8 inside the clip window
        let wedge = 0.5 + libm::log(8.0);
        assert!((v.gap - (8.0 - wedge)).abs() <= 0.2, "{}", v.gap);
    }
}
