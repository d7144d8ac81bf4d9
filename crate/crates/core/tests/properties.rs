//! Randomized invariants over the set, support, and screening layers.

use proptest::prelude::*;

use supfact_core::dist::{canonical_pdf_1d, marginals, DiscreteJoint};
use supfact_core::independence::{
    discrete_factorization_oracle, necessary_condition, OracleVerdict, Screening,
    DISCRETE_ORACLE_TOL,
};
use supfact_core::region::{Provenance, Region2D};
use supfact_core::sets::closure1d;
use supfact_core::support::support_discrete;

/// 2..=5 strictly increasing coordinates spaced at least 0.5 apart, paired
/// with positive masses that sum to one.
fn pmf_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    (
        proptest::collection::btree_set(0i32..40, 2..6),
        proptest::collection::vec(0.05f64..1.0, 6),
    )
        .prop_map(|(coords, weights)| {
            let xs: Vec<f64> = coords.iter().map(|&c| c as f64 * 0.5).collect();
            let total: f64 = weights[..xs.len()].iter().sum();
            xs.iter()
                .zip(&weights)
                .map(|(&x, &w)| (x, w / total))
                .collect()
        })
}

fn outer_product(px: &[(f64, f64)], py: &[(f64, f64)]) -> Vec<((f64, f64), f64)> {
    let mut atoms = Vec::new();
    for &(x, p) in px {
        for &(y, q) in py {
            atoms.push(((x, y), p * q));
        }
    }
    atoms
}

proptest! {
    #[test]
    fn closure_swallows_every_input_point(
        ivs in proptest::collection::vec((-50.0f64..50.0, 0.0f64..5.0), 0..4),
        atoms in proptest::collection::vec(-60.0f64..60.0, 0..6),
    ) {
        let intervals: Vec<(f64, f64)> = ivs.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let s = closure1d(&intervals, &atoms).unwrap();
        for &(lo, hi) in &intervals {
            prop_assert!(s.contains(lo) && s.contains(hi));
            prop_assert!(s.contains(0.5 * (lo + hi)));
        }
        for &a in &atoms {
            prop_assert!(s.contains(a));
        }
    }

    #[test]
    fn closure_is_idempotent(
        ivs in proptest::collection::vec((-50.0f64..50.0, 0.0f64..5.0), 0..4),
        atoms in proptest::collection::vec(-60.0f64..60.0, 0..6),
    ) {
        let intervals: Vec<(f64, f64)> = ivs.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let s = closure1d(&intervals, &atoms).unwrap();
        let again = closure1d(s.intervals(), s.atoms()).unwrap();
        prop_assert_eq!(s.intervals(), again.intervals());
        prop_assert_eq!(s.atoms(), again.atoms());
        prop_assert!(s.hausdorff(&again) == 0.0 || (s.is_empty() && again.is_empty()));
    }

    #[test]
    fn distance_is_zero_exactly_on_the_set(
        ivs in proptest::collection::vec((-50.0f64..50.0, 0.1f64..5.0), 1..4),
        probe in -70.0f64..70.0,
    ) {
        let intervals: Vec<(f64, f64)> = ivs.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let s = closure1d(&intervals, &[]).unwrap();
        prop_assert_eq!(s.contains(probe), s.distance(probe) == 0.0);
    }

    #[test]
    fn hausdorff_is_symmetric_and_detects_equality(
        a in proptest::collection::vec((-50.0f64..50.0, 0.1f64..5.0), 1..4),
        b in proptest::collection::vec((-50.0f64..50.0, 0.1f64..5.0), 1..4),
    ) {
        let ia: Vec<(f64, f64)> = a.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let ib: Vec<(f64, f64)> = b.iter().map(|&(lo, w)| (lo, lo + w)).collect();
        let sa = closure1d(&ia, &[]).unwrap();
        let sb = closure1d(&ib, &[]).unwrap();
        let d_ab = sa.hausdorff(&sb);
        let d_ba = sb.hausdorff(&sa);
        prop_assert!((d_ab - d_ba).abs() <= 1e-12);
        prop_assert!(sa.hausdorff(&sa) == 0.0);
    }

    #[test]
    fn discrete_support_carries_all_the_mass(px in pmf_strategy()) {
        let m = supfact_core::dist::MarginalPmf::new(&px, &[]).unwrap();
        let s = support_discrete(&m).unwrap();
        let covered: f64 = px.iter().filter(|&&(x, _)| s.contains(x)).map(|&(_, p)| p).sum();
        prop_assert!((covered - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn outer_products_never_trip_the_screen_or_the_oracle(
        px in pmf_strategy(),
        py in pmf_strategy(),
    ) {
        let j = DiscreteJoint::new(&outer_product(&px, &py), &[]).unwrap();
        let (mx, my) = marginals(&j);
        let s_x = support_discrete(&mx).unwrap();
        let s_y = support_discrete(&my).unwrap();
        let pts: Vec<(f64, f64)> = j.atoms().iter().map(|a| a.0).collect();
        let s_xy = Region2D::from_atoms(&pts, Provenance::Analytic).unwrap();

        let v = necessary_condition(&s_xy, &s_x, &s_y, 0.0, 0.0).unwrap();
        prop_assert_eq!(v.screening, Screening::Inconclusive);
        prop_assert!(v.gap == 0.0);

        let (oracle, _, resid) = discrete_factorization_oracle(&j, DISCRETE_ORACLE_TOL).unwrap();
        prop_assert_eq!(oracle, OracleVerdict::Independent);
        prop_assert!(resid <= DISCRETE_ORACLE_TOL);
    }

    #[test]
    fn screen_refutations_always_come_with_a_missing_cell(
        px in pmf_strategy(),
        py in pmf_strategy(),
        drop in 0usize..100,
    ) {
        let mut atoms = outer_product(&px, &py);
        let k = drop % atoms.len();
        atoms.remove(k);
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        for a in &mut atoms {
            a.1 /= total;
        }
        let j = DiscreteJoint::new(&atoms, &[]).unwrap();
        let (mx, my) = marginals(&j);
        // Dropping one cell cannot empty a row or column here: every margin
        // has at least two atoms, so each marginal keeps its full atom list.
        let s_x = support_discrete(&mx).unwrap();
        let s_y = support_discrete(&my).unwrap();
        let pts: Vec<(f64, f64)> = j.atoms().iter().map(|a| a.0).collect();
        let s_xy = Region2D::from_atoms(&pts, Provenance::Analytic).unwrap();

        let v = necessary_condition(&s_xy, &s_x, &s_y, 0.0, 0.0).unwrap();
        prop_assert_eq!(v.screening, Screening::DependentBySupport);
        prop_assert!(!v.witnesses.is_empty());

        let (oracle, _, _) = discrete_factorization_oracle(&j, DISCRETE_ORACLE_TOL).unwrap();
        prop_assert_eq!(oracle, OracleVerdict::Dependent);
        prop_assert!(v.contrapositive_consistent());
    }

    #[test]
    fn canonical_pdf_of_a_smooth_ramp_is_nonnegative_and_accurate(
        eta in 0.2f64..5.0,
        x in 0.2f64..4.0,
    ) {
        let f = |t: f64| exponential_like_cdf_stub(eta, t);
        let v = canonical_pdf_1d(&f, x, 1e-5, 1e-3).unwrap();
        let want = eta * (-eta * x).exp();
        prop_assert!(v >= 0.0);
        prop_assert!((v - want).abs() <= 1e-4 * want.max(1.0));
    }
}

fn exponential_like_cdf_stub(eta: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 - (-eta * x).exp()
    }
}
