//! Closed subsets of the real line in a normal form: disjoint sorted closed
//! intervals plus isolated atoms, with optional unbounded-side flags.

use alloc::vec::Vec;

use crate::error::{invalid_input, Result};

/// A closed subset of the line. Invariants maintained by every constructor:
/// intervals are sorted, pairwise disjoint, non-touching, and have `lo < hi`;
/// atoms are sorted, distinct, and lie strictly outside every interval.
/// Degenerate intervals are stored as atoms. An unbounded flag means the set
/// conceptually continues past the corresponding content edge; the stored
/// content is the clipped window used for numeric work.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedSet1D {
    intervals: Vec<(f64, f64)>,
    atoms: Vec<f64>,
    unbounded_left: bool,
    unbounded_right: bool,
}

/// One connected component of a [`ClosedSet1D`], in ascending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component {
    Interval(f64, f64),
    Atom(f64),
}

impl ClosedSet1D {
    pub fn empty() -> Self {
        ClosedSet1D {
            intervals: Vec::new(),
            atoms: Vec::new(),
            unbounded_left: false,
            unbounded_right: false,
        }
    }

    /// Single closed interval `[lo, hi]`; collapses to an atom when `lo == hi`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        closure1d(&[(lo, hi)], &[])
    }

    pub fn atom(x: f64) -> Result<Self> {
        closure1d(&[], &[x])
    }

    pub fn from_atoms(atoms: &[f64]) -> Result<Self> {
        closure1d(&[], atoms)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn unbounded_left(&self) -> bool {
        self.unbounded_left
    }

    pub fn unbounded_right(&self) -> bool {
        self.unbounded_right
    }

    /// Marks the set as clipped: the true set continues past the stored
    /// content on the flagged sides. Flags on an empty set are rejected.
    pub fn flag_unbounded(mut self, left: bool, right: bool) -> Result<Self> {
        if (left || right) && self.is_empty() {
            return Err(invalid_input("an empty set cannot be unbounded"));
        }
        self.unbounded_left = left;
        self.unbounded_right = right;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.atoms.is_empty()
    }

    /// True when the set consists of finitely many isolated points.
    pub fn is_pure_atoms(&self) -> bool {
        self.intervals.is_empty() && !self.unbounded_left && !self.unbounded_right
    }

    /// Smallest and largest point of the stored content, `None` when empty.
    pub fn extent(&self) -> Option<(f64, f64)> {
        let lo = match (self.intervals.first(), self.atoms.first()) {
            (Some(&(ilo, _)), Some(&a)) => ilo.min(a),
            (Some(&(ilo, _)), None) => ilo,
            (None, Some(&a)) => a,
            (None, None) => return None,
        };
        let hi = match (self.intervals.last(), self.atoms.last()) {
            (Some(&(_, ihi)), Some(&a)) => ihi.max(a),
            (Some(&(_, ihi)), None) => ihi,
            (None, Some(&a)) => a,
            (None, None) => return None,
        };
        Some((lo, hi))
    }

    /// Total Lebesgue measure of the content (atoms contribute zero).
    pub fn length(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn component_count(&self) -> usize {
        self.intervals.len() + self.atoms.len()
    }

    /// Components in ascending order, intervals and atoms interleaved.
    pub fn components(&self) -> Vec<Component> {
        let mut out = Vec::with_capacity(self.component_count());
        let mut ii = 0;
        let mut ai = 0;
        while ii < self.intervals.len() || ai < self.atoms.len() {
            let take_interval = match (self.intervals.get(ii), self.atoms.get(ai)) {
                (Some(&(lo, _)), Some(&a)) => lo < a,
                (Some(_), None) => true,
                _ => false,
            };
            if take_interval {
                let (lo, hi) = self.intervals[ii];
                out.push(Component::Interval(lo, hi));
                ii += 1;
            } else {
                out.push(Component::Atom(self.atoms[ai]));
                ai += 1;
            }
        }
        out
    }

    /// Exact membership in the stored content.
    pub fn contains(&self, x: f64) -> bool {
        if self
            .intervals
            .binary_search_by(|&(lo, hi)| {
                if x < lo {
                    core::cmp::Ordering::Greater
                } else if x > hi {
                    core::cmp::Ordering::Less
                } else {
                    core::cmp::Ordering::Equal
                }
            })
            .is_ok()
        {
            return true;
        }
        self.atoms.binary_search_by(|a| a.total_cmp(&x)).is_ok()
    }

    /// Distance from a point to the content, zero inside.
    pub fn distance(&self, x: f64) -> f64 {
        if self.is_empty() {
            return f64::INFINITY;
        }
        let mut best = f64::INFINITY;
        for &(lo, hi) in &self.intervals {
            let d = if x < lo {
                lo - x
            } else if x > hi {
                x - hi
            } else {
                0.0
            };
            best = best.min(d);
        }
        for &a in &self.atoms {
            best = best.min((x - a).abs());
        }
        best
    }

    /// Exact Hausdorff distance between the contents of two sets; infinite
    /// when exactly one is empty, zero when both are. Unbounded flags are
    /// ignored here: this is a numeric comparison over the stored windows.
    pub fn hausdorff(&self, other: &ClosedSet1D) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => return 0.0,
            (true, false) | (false, true) => return f64::INFINITY,
            _ => {}
        }
        directed_hausdorff(self, other).max(directed_hausdorff(other, self))
    }

    /// Lebesgue measure of the symmetric difference of interval parts.
    /// Atom mismatches carry zero length; use [`ClosedSet1D::hausdorff`] to
    /// catch them.
    pub fn sym_diff_length(&self, other: &ClosedSet1D) -> f64 {
        let mut cuts: Vec<f64> = Vec::new();
        for &(lo, hi) in self.intervals.iter().chain(other.intervals.iter()) {
            cuts.push(lo);
            cuts.push(hi);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let in_a = self.interval_contains(mid);
            let in_b = other.interval_contains(mid);
            if in_a != in_b {
                total += w[1] - w[0];
            }
        }
        total
    }

    fn interval_contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// True when the content meets the closed interval `[lo, hi]`.
    pub fn intersects_interval(&self, lo: f64, hi: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= hi && lo <= b)
            || self.atoms.iter().any(|&a| lo <= a && a <= hi)
    }
}

/// Supremum over `a` of the distance to `b`. The supremum of this piecewise
/// linear function sits at an endpoint or atom of `a`, or at a midpoint of a
/// gap of `b` that lies inside an interval of `a`.
fn directed_hausdorff(a: &ClosedSet1D, b: &ClosedSet1D) -> f64 {
    let mut best: f64 = 0.0;
    for &(lo, hi) in a.intervals() {
        best = best.max(b.distance(lo)).max(b.distance(hi));
    }
    for &x in a.atoms() {
        best = best.max(b.distance(x));
    }
    let comps = b.components();
    for w in comps.windows(2) {
        let gap_lo = match w[0] {
            Component::Interval(_, hi) => hi,
            Component::Atom(x) => x,
        };
        let gap_hi = match w[1] {
            Component::Interval(lo, _) => lo,
            Component::Atom(x) => x,
        };
        let mid = 0.5 * (gap_lo + gap_hi);
        if a.interval_contains(mid) {
            best = best.max(b.distance(mid));
        }
    }
    best
}

/// Closure of a finite union of intervals and atoms, in normal form.
///
/// Endpoint openness is irrelevant to a closure, so interval inputs are plain
/// `(lo, hi)` pairs: `(0,1)`, `[0,1)`, and `[0,1]` all close to `[0,1]`.
/// A degenerate pair `lo == hi` denotes the singleton `{lo}`. Overlapping or
/// touching intervals merge; atoms inside or on the edge of an interval are
/// absorbed; duplicate atoms collapse.
pub fn closure1d(intervals: &[(f64, f64)], atoms: &[f64]) -> Result<ClosedSet1D> {
    let mut ivs: Vec<(f64, f64)> = Vec::new();
    let mut pts: Vec<f64> = Vec::new();
    for &(lo, hi) in intervals {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(invalid_input(
                "interval endpoints must be finite; express unbounded sides via flags",
            ));
        }
        if lo > hi {
            return Err(invalid_input("interval has lo > hi"));
        }
        if lo == hi {
            pts.push(lo);
        } else {
            ivs.push((lo, hi));
        }
    }
    for &a in atoms {
        if !a.is_finite() {
            return Err(invalid_input("atoms must be finite"));
        }
        pts.push(a);
    }

    ivs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(ivs.len());
    for (lo, hi) in ivs {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }

    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut free_atoms: Vec<f64> = Vec::new();
    for a in pts {
        let absorbed = merged
            .binary_search_by(|&(lo, hi)| {
                if a < lo {
                    core::cmp::Ordering::Greater
                } else if a > hi {
                    core::cmp::Ordering::Less
                } else {
                    core::cmp::Ordering::Equal
                }
            })
            .is_ok();
        if !absorbed {
            free_atoms.push(a);
        }
    }

    Ok(ClosedSet1D {
        intervals: merged,
        atoms: free_atoms,
        unbounded_left: false,
        unbounded_right: false,
    })
}

/// Heuristic accumulation-point candidates of a finite point set.
///
/// A finite set has no limit points, so the exact answer is always empty;
/// what this returns are centers of clusters where at least `min_count`
/// points fall within a window of width `tol`. A truncated countable set
/// such as `{2^-n}` yields a candidate near its accumulation point; a
/// well-separated finite set yields nothing.
pub fn limit_point_candidates(atoms: &[f64], tol: f64, min_count: usize) -> Vec<f64> {
    if atoms.is_empty() || min_count == 0 {
        return Vec::new();
    }
    let mut pts: Vec<f64> = atoms.iter().copied().filter(|x| x.is_finite()).collect();
    pts.sort_by(f64::total_cmp);

    // Mark maximal index ranges [i, j] with pts[j] - pts[i] <= tol and
    // enough points, then merge overlapping ranges into clusters.
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut j = 0;
    for i in 0..pts.len() {
        if j < i {
            j = i;
        }
        while j + 1 < pts.len() && pts[j + 1] - pts[i] <= tol {
            j += 1;
        }
        if j - i + 1 >= min_count {
            match clusters.last_mut() {
                Some(last) if i <= last.1 + 1 => last.1 = last.1.max(j),
                _ => clusters.push((i, j)),
            }
        }
    }

    clusters
        .into_iter()
        .map(|(i, j)| {
            let slice = &pts[i..=j];
            slice.iter().sum::<f64>() / slice.len() as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(intervals: &[(f64, f64)], atoms: &[f64]) -> ClosedSet1D {
        closure1d(intervals, atoms).unwrap()
    }

    #[test]
    fn closure_closes_open_intervals() {
        let s = set(&[(0.0, 1.0)], &[]);
        assert_eq!(s.intervals(), &[(0.0, 1.0)]);
        assert!(s.contains(0.0) && s.contains(1.0));
    }

    #[test]
    fn closure_merges_touching_and_overlapping() {
        let s = set(&[(0.0, 1.0), (1.0, 2.0), (1.5, 1.8)], &[]);
        assert_eq!(s.intervals(), &[(0.0, 2.0)]);
        assert_eq!(s.component_count(), 1);
    }

    #[test]
    fn closure_absorbs_atoms_on_interval_edges() {
        let s = set(&[(0.0, 1.0)], &[1.0, 0.5, 2.0]);
        assert_eq!(s.intervals(), &[(0.0, 1.0)]);
        assert_eq!(s.atoms(), &[2.0]);
    }

    #[test]
    fn degenerate_interval_becomes_atom() {
        let s = set(&[(3.0, 3.0)], &[]);
        assert!(s.intervals().is_empty());
        assert_eq!(s.atoms(), &[3.0]);
    }

    #[test]
    fn inverted_interval_is_rejected() {
        assert!(closure1d(&[(1.0, 0.0)], &[]).is_err());
    }

    #[test]
    fn non_finite_inputs_are_rejected() {
        assert!(closure1d(&[(0.0, f64::INFINITY)], &[]).is_err());
        assert!(closure1d(&[], &[f64::NAN]).is_err());
    }

    #[test]
    fn duplicate_atoms_collapse() {
        let s = set(&[], &[1.0, 1.0, 2.0]);
        assert_eq!(s.atoms(), &[1.0, 2.0]);
    }

    #[test]
    fn closure_is_idempotent_on_its_own_output() {
        let s = set(&[(0.0, 1.0), (0.5, 2.0), (4.0, 4.0)], &[2.0, 7.0]);
        let again = closure1d(s.intervals(), s.atoms()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn extent_and_length() {
        let s = set(&[(0.0, 1.0), (3.0, 5.0)], &[-2.0, 9.0]);
        assert_eq!(s.extent(), Some((-2.0, 9.0)));
        assert!((s.length() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn unbounded_flags_round_trip_and_reject_empty() {
        let s = set(&[(0.0, 50.0)], &[])
            .flag_unbounded(false, true)
            .unwrap();
        assert!(s.unbounded_right() && !s.unbounded_left());
        assert!(ClosedSet1D::empty().flag_unbounded(true, false).is_err());
    }

    #[test]
    fn membership_and_distance() {
        let s = set(&[(0.0, 1.0)], &[3.0]);
        assert!(s.contains(0.5) && s.contains(3.0));
        assert!(!s.contains(2.0));
        assert!((s.distance(2.0) - 1.0).abs() < 1e-15);
        assert!((s.distance(3.5) - 0.5).abs() < 1e-15);
        assert_eq!(s.distance(0.7), 0.0);
    }

    #[test]
    fn hausdorff_exact_values() {
        let a = set(&[(0.0, 1.0)], &[]);
        let b = set(&[(0.0, 2.0)], &[]);
        assert!((a.hausdorff(&b) - 1.0).abs() < 1e-15);

        // Gap midpoint of `c` dominates: point 1.5 of `a` is 0.5 from `c`.
        let c = set(&[(0.0, 1.0), (2.0, 3.0)], &[]);
        let d = set(&[(0.0, 3.0)], &[]);
        assert!((c.hausdorff(&d) - 0.5).abs() < 1e-15);

        let e = set(&[], &[4.0, 5.0, 7.0]);
        assert!((e.hausdorff(&e) - 0.0).abs() < 1e-15);
        assert_eq!(e.hausdorff(&ClosedSet1D::empty()), f64::INFINITY);
        assert_eq!(
            ClosedSet1D::empty().hausdorff(&ClosedSet1D::empty()),
            0.0
        );
    }

    #[test]
    fn sym_diff_length_values() {
        let a = set(&[(0.0, 1.0)], &[]);
        let b = set(&[(0.5, 1.5)], &[]);
        assert!((a.sym_diff_length(&b) - 1.0).abs() < 1e-12);
        assert!((a.sym_diff_length(&a) - 0.0).abs() < 1e-15);
        // atoms carry no length
        let c = set(&[(0.0, 1.0)], &[9.0]);
        assert!((a.sym_diff_length(&c) - 0.0).abs() < 1e-15);
        assert!(a.hausdorff(&c) > 1.0);
    }

    #[test]
    fn components_interleave_sorted() {
        let s = set(&[(0.0, 1.0), (4.0, 5.0)], &[2.0, 7.0]);
        assert_eq!(
            s.components(),
            alloc::vec![
                Component::Interval(0.0, 1.0),
                Component::Atom(2.0),
                Component::Interval(4.0, 5.0),
                Component::Atom(7.0),
            ]
        );
    }

    #[test]
    fn truncated_dyadic_sequence_yields_candidate_near_zero() {
        // first 40 terms of {2^-n}: finite, but clusters hard at 0
        let atoms: Vec<f64> = (1..=40).map(|n| libm::exp2(-(n as f64))).collect();
        let cands = limit_point_candidates(&atoms, 1e-6, 5);
        assert_eq!(cands.len(), 1, "want a single cluster, got {cands:?}");
        assert!(cands[0].abs() <= 1e-6, "candidate {} not near 0", cands[0]);
    }

    #[test]
    fn well_separated_atoms_yield_no_candidates() {
        let atoms: Vec<f64> = (0..100).map(|k| 0.1 * k as f64).collect();
        assert!(limit_point_candidates(&atoms, 1e-6, 5).is_empty());
    }

    #[test]
    fn empty_atom_list_yields_no_candidates() {
        assert!(limit_point_candidates(&[], 1e-6, 5).is_empty());
    }
}
