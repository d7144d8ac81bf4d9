//! Named reference distributions used by tests and the command-line
//! registry: standard univariate CDFs, the two dartboard densities, an
//! additive density whose support factors while the density does not, the
//! ratio-product pushforward with its heavy right tail, and the sampling
//! tables on {4, 5, 7}.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::dist::{ContinuousJoint, DiscreteJoint, KinkHint, MarginalPmf};
use crate::error::Result;
use crate::region::BBox;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / core::f64::consts::SQRT_2))
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * core::f64::consts::PI)
}

/// Uniform CDF on [0, 1].
pub fn uniform_cdf(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Exponential CDF with rate `eta`, kinked at the origin.
pub fn exponential_cdf(eta: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 - libm::exp(-eta * x)
    }
}

/// Exponential density with rate `eta` (zero at and left of the origin,
/// matching the canonical version of the kinked CDF).
pub fn exponential_pdf(eta: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        eta * libm::exp(-eta * x)
    }
}

/// Uniform density on the closed unit disk: the inept darts player. Support
/// is the disk; the margins are [-1, 1], so the support does not factor.
pub fn darts_joint() -> Result<ContinuousJoint> {
    let bbox = BBox::square(-1.0, 1.0)?;
    let pdf = Box::new(|x: f64, y: f64| {
        if x * x + y * y <= 1.0 {
            core::f64::consts::FRAC_1_PI
        } else {
            0.0
        }
    });
    let ind = Box::new(|x: f64, y: f64| x * x + y * y <= 1.0);
    ContinuousJoint::pdf_backed(bbox, pdf, ind, Vec::new())
}

/// Rim-rewarding density `(2/pi)(x^2 + y^2)` on the closed unit disk: the
/// skilled darts player. Same support as the uniform disk.
pub fn colosseum_joint() -> Result<ContinuousJoint> {
    let bbox = BBox::square(-1.0, 1.0)?;
    let pdf = Box::new(|x: f64, y: f64| {
        let r2 = x * x + y * y;
        if r2 <= 1.0 {
            2.0 * core::f64::consts::FRAC_1_PI * r2
        } else {
            0.0
        }
    });
    let ind = Box::new(|x: f64, y: f64| x * x + y * y <= 1.0);
    ContinuousJoint::pdf_backed(bbox, pdf, ind, Vec::new())
}

/// Density `x + y` on the unit square. The support factors as
/// [0,1] x [0,1] even though the density is not a product, so support
/// screening alone cannot detect the dependence.
pub fn additive_uniform_joint() -> Result<ContinuousJoint> {
    let bbox = BBox::square(0.0, 1.0)?;
    let pdf = Box::new(|x: f64, y: f64| {
        if (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) {
            x + y
        } else {
            0.0
        }
    });
    let ind = Box::new(|x: f64, y: f64| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    ContinuousJoint::pdf_backed(bbox, pdf, ind, Vec::new())
}

/// Marginal density of either coordinate of [`additive_uniform_joint`].
pub fn additive_uniform_marginal_pdf(t: f64) -> f64 {
    if (0.0..=1.0).contains(&t) {
        t + 0.5
    } else {
        0.0
    }
}

/// Indicator of the ratio-product image region, written with the raw
/// inverse-transform inequalities: both back-transformed coordinates
/// `sqrt(y1*y2)` and `sqrt(y2/y1)` must land strictly inside (0, 1).
pub fn ratio_product_region(y1: f64, y2: f64) -> bool {
    if !(y1 > 0.0) || !(y2 > 0.0) {
        return false;
    }
    let x1 = libm::sqrt(y1 * y2);
    let x2 = libm::sqrt(y2 / y1);
    x1 > 0.0 && x1 < 1.0 && x2 > 0.0 && x2 < 1.0
}

/// Joint density of `(Y1, Y2) = (X1/X2, X1*X2)` where `(X1, X2)` has the
/// product density `4*x1*x2` on the unit square: `2*y2/y1` on the image
/// region, zero elsewhere.
pub fn ratio_product_pdf(y1: f64, y2: f64) -> f64 {
    if ratio_product_region(y1, y2) {
        2.0 * y2 / y1
    } else {
        0.0
    }
}

/// Marginal density of the ratio coordinate `Y1`: `y` on (0, 1], cubic decay
/// `1/y^3` beyond one. The right tail makes the variance infinite.
pub fn ratio_product_marginal_pdf_1(y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if y <= 1.0 {
        y
    } else {
        1.0 / (y * y * y)
    }
}

/// Marginal density of the product coordinate `Y2`: `-4*y*ln(y)` on (0, 1].
pub fn ratio_product_marginal_pdf_2(y: f64) -> f64 {
    if y <= 0.0 || y > 1.0 {
        0.0
    } else {
        -4.0 * y * libm::log(y)
    }
}

/// The ratio-product joint restricted to `y1 in [0, clip_hi]`. The first
/// coordinate is unbounded above; the clip must be declared by the caller
/// and reported downstream. Mass beyond the clip is `1 / (2*clip_hi^2)`.
pub fn ratio_product_joint(clip_hi: f64) -> Result<ContinuousJoint> {
    let bbox = BBox::new(0.0, clip_hi, 0.0, 1.0)?;
    let pdf = Box::new(|y1: f64, y2: f64| ratio_product_pdf(y1, y2));
    let ind = Box::new(|y1: f64, y2: f64| ratio_product_region(y1, y2));
    ContinuousJoint::pdf_backed(bbox, pdf, ind, Vec::new())
}

/// Mass of the ratio-product joint lying beyond `y1 > clip_hi`.
pub fn ratio_product_tail_mass(clip_hi: f64) -> f64 {
    if clip_hi <= 1.0 {
        1.0 - 0.5 * clip_hi * clip_hi
    } else {
        0.5 / (clip_hi * clip_hi)
    }
}

/// Two draws with replacement, uniform on {4, 5, 7}: all nine pairs carry
/// mass 1/9 and the coordinates are independent.
pub fn with_replacement_table() -> Result<DiscreteJoint> {
    let vals = [4.0, 5.0, 7.0];
    let mut atoms = Vec::with_capacity(9);
    for &x in &vals {
        for &y in &vals {
            atoms.push(((x, y), 1.0 / 9.0));
        }
    }
    DiscreteJoint::new(&atoms, &[])
}

/// Two draws without replacement, uniform on {4, 5, 7}: the six off-diagonal
/// pairs carry mass 1/6, the diagonal is impossible, and the margins are
/// the same uniform thirds as with replacement.
pub fn without_replacement_table() -> Result<DiscreteJoint> {
    let vals = [4.0, 5.0, 7.0];
    let mut atoms = Vec::with_capacity(6);
    for &x in &vals {
        for &y in &vals {
            if x != y {
                atoms.push(((x, y), 1.0 / 6.0));
            }
        }
    }
    DiscreteJoint::new(&atoms, &[])
}

/// PMF with mass equal to position on the dyadic points 1/2, 1/4, 1/8, ...
/// The charged set accumulates at zero but zero itself carries no mass, so
/// the charged set is not closed; the support adds the declared limit point.
pub fn dyadic_accumulating_pmf() -> Result<MarginalPmf> {
    let gen = (1..=60u32).map(|n| {
        let v = libm::exp2(-(n as f64));
        (v, v)
    });
    MarginalPmf::from_generator(gen, &[0.0])
}

/// Poisson PMF with rate `eta`, truncated once the tail is below mass
/// tolerance. No limit points: the charged set is closed.
pub fn truncated_poisson(eta: f64) -> Result<MarginalPmf> {
    let gen = (0..u32::MAX).scan(libm::exp(-eta), move |p, n| {
        let out = (n as f64, *p);
        *p *= eta / (n as f64 + 1.0);
        Some(out)
    });
    MarginalPmf::from_generator(gen, &[])
}

/// Binomial PMF on 0..=n.
pub fn binomial_pmf(n: u32, p: f64) -> Result<MarginalPmf> {
    let mut atoms = Vec::with_capacity(n as usize + 1);
    let q = 1.0 - p;
    for k in 0..=n {
        let ln_choose = libm::lgamma(n as f64 + 1.0)
            - libm::lgamma(k as f64 + 1.0)
            - libm::lgamma((n - k) as f64 + 1.0);
        let mass = libm::exp(ln_choose + k as f64 * libm::log(p) + (n - k) as f64 * libm::log(q));
        if mass > 0.0 {
            atoms.push((k as f64, mass));
        }
    }
    // renormalize the float dust so the masses balance exactly
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    for a in &mut atoms {
        a.1 /= total;
    }
    MarginalPmf::new(&atoms, &[])
}

/// Product of two uniform CDFs on the unit square, kinked along all four
/// edges.
pub fn uniform_product_cdf2(x: f64, y: f64) -> f64 {
    uniform_cdf(x) * uniform_cdf(y)
}

/// Kink hints for the unit-square uniform product.
pub fn uniform_product_kinks() -> Vec<KinkHint> {
    alloc::vec![
        KinkHint::VerticalLine(0.0),
        KinkHint::VerticalLine(1.0),
        KinkHint::HorizontalLine(0.0),
        KinkHint::HorizontalLine(1.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{marginals, DEFAULT_KINK_TOL, DEFAULT_STEP_2D};
    use crate::numerics::{simpson, tanh_sinh, SIMPSON_PANELS};

    #[test]
    fn densities_integrate_to_one() {
        // disk densities via polar reduction
        let darts = simpson(
            |r| 2.0 * core::f64::consts::PI * r * core::f64::consts::FRAC_1_PI,
            0.0,
            1.0,
            SIMPSON_PANELS,
        )
        .unwrap();
        assert!((darts - 1.0).abs() <= 1e-12);
        let colosseum = simpson(
            |r| 2.0 * core::f64::consts::PI * r * 2.0 * core::f64::consts::FRAC_1_PI * r * r,
            0.0,
            1.0,
            SIMPSON_PANELS,
        )
        .unwrap();
        assert!((colosseum - 1.0).abs() <= 1e-12);
        // additive joint: iterated integral of x + y over the unit square
        let additive = simpson(
            |x| simpson(|y| x + y, 0.0, 1.0, 64).unwrap(),
            0.0,
            1.0,
            64,
        )
        .unwrap();
        assert!((additive - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ratio_product_marginals_are_consistent() {
        // marginal of the ratio coordinate integrates to one with a cubic
        // tail, and the slice integral of the joint reproduces it
        let head = tanh_sinh(ratio_product_marginal_pdf_1, 0.0, 1.0).unwrap();
        let tail = tanh_sinh(ratio_product_marginal_pdf_1, 1.0, 1000.0).unwrap();
        assert!((head - 0.5).abs() <= 1e-9, "{head}");
        // cubic tail truncated at 1000 leaves exactly 0.5 / 1000^2 behind
        assert!((tail - (0.5 - 5e-7)).abs() <= 1e-9, "{tail}");
        for y1 in [0.25, 0.5, 0.9, 1.5, 3.0] {
            let lim = if y1 <= 1.0 { y1 } else { 1.0 / y1 };
            // endpoint-free rule: the region indicator is strict at y2 = lim
            let slice = tanh_sinh(|y2| ratio_product_pdf(y1, y2), 0.0, lim).unwrap();
            let want = ratio_product_marginal_pdf_1(y1);
            assert!((slice - want).abs() <= 1e-9, "y1={y1}: {slice} vs {want}");
        }
        let m2 = tanh_sinh(ratio_product_marginal_pdf_2, 0.0, 1.0).unwrap();
        assert!((m2 - 1.0).abs() <= 1e-9, "{m2}");
    }

    #[test]
    fn ratio_product_region_matches_solved_form() {
        let mut checked = 0usize;
        for i in 0..200 {
            for j in 0..100 {
                let y1 = 0.04 + i as f64 * 0.04;
                let y2 = 0.005 + j as f64 * 0.01;
                let solved = y2 > 0.0 && y2 < (if y1 <= 1.0 { y1 } else { 1.0 / y1 });
                assert_eq!(ratio_product_region(y1, y2), solved, "({y1},{y2})");
                checked += 1;
            }
        }
        assert_eq!(checked, 20_000);
    }

    #[test]
    fn tail_mass_formula() {
        let m = ratio_product_tail_mass(8.0);
        assert!((m - 1.0 / 128.0).abs() <= 1e-15);
        let numeric = tanh_sinh(ratio_product_marginal_pdf_1, 8.0, 4000.0).unwrap();
        assert!((numeric - m).abs() <= 1e-6, "{numeric} vs {m}");
    }

    #[test]
    fn sampling_tables_share_margins() {
        let with = with_replacement_table().unwrap();
        let without = without_replacement_table().unwrap();
        assert_eq!(with.atoms().len(), 9);
        assert_eq!(without.atoms().len(), 6);
        assert_eq!(without.pmf(5.0, 5.0), 0.0);
        let (wx, wy) = marginals(&with);
        let (ox, oy) = marginals(&without);
        for (a, b) in [(&wx, &ox), (&wy, &oy)] {
            assert_eq!(a.atoms().len(), 3);
            for (&(xa, pa), &(xb, pb)) in a.atoms().iter().zip(b.atoms()) {
                assert_eq!(xa, xb);
                assert!((pa - pb).abs() <= 1e-15);
                assert!((pa - 1.0 / 3.0).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn dyadic_pmf_accumulates_at_zero() {
        let m = dyadic_accumulating_pmf().unwrap();
        assert_eq!(m.declared_limit_points(), &[0.0]);
        assert_eq!(m.pmf(0.0), 0.0);
        assert!((m.pmf(0.5) - 0.5).abs() <= 1e-15);
        assert!((m.pmf(0.25) - 0.25).abs() <= 1e-15);
        assert!((m.total_mass() + m.truncation_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn truncated_poisson_masses() {
        let m = truncated_poisson(2.0).unwrap();
        assert!((m.pmf(0.0) - libm::exp(-2.0)).abs() <= 1e-15);
        assert!((m.pmf(3.0) - libm::exp(-2.0) * 8.0 / 6.0).abs() <= 1e-15);
        assert!(m.truncation_mass() <= 1e-12);
        assert!(m.declared_limit_points().is_empty());
    }

    #[test]
    fn binomial_is_exactly_supported_on_its_range() {
        let m = binomial_pmf(10, 0.3).unwrap();
        assert_eq!(m.atoms().len(), 11);
        assert!((m.pmf(0.0) - libm::pow(0.7, 10.0)).abs() <= 1e-12);
        assert!((m.total_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn additive_marginal_matches_slice_integral() {
        for x in [0.0, 0.1, 0.5, 1.0] {
            let slice = simpson(|y| x + y, 0.0, 1.0, 64).unwrap();
            assert!((slice - additive_uniform_marginal_pdf(x)).abs() <= 1e-12);
        }
        // the known witness: joint 0.2 vs product of marginals 0.36
        let j = additive_uniform_joint().unwrap();
        let joint = j
            .density(0.1, 0.1, DEFAULT_STEP_2D, DEFAULT_KINK_TOL)
            .unwrap();
        let prod = additive_uniform_marginal_pdf(0.1) * additive_uniform_marginal_pdf(0.1);
        assert!((joint - 0.2).abs() <= 1e-12);
        assert!((prod - 0.36).abs() <= 1e-12);
    }

    #[test]
    fn exponential_cdf_and_pdf_are_consistent() {
        for eta in [0.5, 1.0, 2.0] {
            for x in [0.1, 0.5, 1.0, 3.0] {
                let d = (exponential_cdf(eta, x + 1e-6) - exponential_cdf(eta, x - 1e-6)) / 2e-6;
                assert!((d - exponential_pdf(eta, x)).abs() <= 1e-5);
            }
        }
        assert_eq!(exponential_pdf(1.0, -1.0), 0.0);
        assert_eq!(exponential_cdf(1.0, 0.0), 0.0);
    }
}
