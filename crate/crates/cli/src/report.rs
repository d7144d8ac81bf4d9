//! Serializable report shapes. Field order is part of the published schema,
//! and nothing here depends on wall-clock time or map iteration order, so a
//! fixed seed yields byte-identical files.

use serde::Serialize;
use supfact_core::independence::{OracleVerdict, Screening, Verdict, Witness};
use supfact_core::region::{Provenance, Region2D, RegionData};
use supfact_core::sets::ClosedSet1D;
use supfact_core::support::{Amiability, SupportMethod, SupportReport};

#[derive(Serialize, Debug, Clone)]
pub struct UnboundedJson {
    pub left: bool,
    pub right: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct ClipJson {
    pub lo: f64,
    pub hi: f64,
}

/// A closed 1D set: finitely many intervals plus isolated atoms, with flags
/// for components that continue past a clipped scan window.
#[derive(Serialize, Debug, Clone)]
pub struct SetJson {
    pub intervals: Vec<[f64; 2]>,
    pub atoms: Vec<f64>,
    pub unbounded: UnboundedJson,
    pub clip: Option<ClipJson>,
}

impl SetJson {
    pub fn new(s: &ClosedSet1D, clip: Option<(f64, f64)>) -> Self {
        SetJson {
            intervals: s.intervals().iter().map(|&(lo, hi)| [lo, hi]).collect(),
            atoms: s.atoms().to_vec(),
            unbounded: UnboundedJson {
                left: s.unbounded_left(),
                right: s.unbounded_right(),
            },
            clip: clip.map(|(lo, hi)| ClipJson { lo, hi }),
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SliceJson {
    pub at: f64,
    pub set: SetJson,
}

/// The joint support region, in whichever representation the pipeline built.
#[derive(Serialize, Debug, Clone)]
pub struct RegionJson {
    pub bbox: [f64; 4],
    pub provenance: String,
    pub grid_dims: Option<[usize; 2]>,
    /// Lebesgue measure of the region (cell area times count for grids),
    /// or atom count for purely atomic regions.
    pub measure: f64,
    pub measure_is_count: bool,
    /// Measure of the one-cell closure padding, for grid regions.
    pub padding_measure: Option<f64>,
    pub atoms: Option<Vec<[f64; 2]>>,
    pub slices: Option<Vec<SliceJson>>,
    pub slice_axis: Option<String>,
    pub mask_pgm: Option<String>,
    pub cells_csv: Option<String>,
}

impl RegionJson {
    pub fn new(r: &Region2D, mask_pgm: Option<String>, cells_csv: Option<String>) -> Self {
        let b = r.bbox();
        let (atoms, slices, slice_axis, measure, measure_is_count) = match r.data() {
            RegionData::Grid { .. } => (None, None, None, r.area(), false),
            RegionData::Atoms(pts) => (
                Some(pts.iter().map(|&(x, y)| [x, y]).collect()),
                None,
                None,
                r.atom_count() as f64,
                true,
            ),
            RegionData::Slices { axis, slices } => (
                None,
                Some(
                    slices
                        .iter()
                        .map(|(at, set)| SliceJson { at: *at, set: SetJson::new(set, None) })
                        .collect(),
                ),
                Some(format!("{axis:?}").to_ascii_lowercase()),
                r.area(),
                false,
            ),
        };
        RegionJson {
            bbox: [b.x_lo, b.x_hi, b.y_lo, b.y_hi],
            provenance: provenance_name(r.provenance()).to_string(),
            grid_dims: r.grid_dims().map(|(nx, ny)| [nx, ny]),
            measure,
            measure_is_count,
            padding_measure: match r.data() {
                RegionData::Grid { .. } => Some(r.padded_area() - r.area()),
                _ => None,
            },
            atoms,
            slices,
            slice_axis,
            mask_pgm,
            cells_csv,
        }
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Analytic => "analytic",
        Provenance::Product => "product",
        Provenance::GridEstimated => "grid-estimated",
    }
}

pub fn method_name(m: SupportMethod) -> &'static str {
    match m {
        SupportMethod::ClosureOfAtoms => "closure-of-atoms",
        SupportMethod::CanonicalPdfGrid => "canonical-pdf-grid",
        SupportMethod::NeighborhoodProbe => "neighborhood-probe",
        SupportMethod::PointsOfIncrease => "points-of-increase",
        SupportMethod::EmpiricalGrid => "empirical-grid",
    }
}

pub fn amiability_name(a: Amiability) -> &'static str {
    match a {
        Amiability::Yes => "yes",
        Amiability::No => "no",
        Amiability::Unknown => "unknown",
    }
}

/// Full support report for one input.
#[derive(Serialize, Debug, Clone)]
pub struct SupportReportJson {
    pub kind: String,
    pub input: String,
    pub grid: [usize; 2],
    pub method: String,
    pub x: SetJson,
    pub y: SetJson,
    pub joint: RegionJson,
    pub amiable_x: String,
    pub amiable_y: String,
    pub notes: Vec<String>,
}

impl SupportReportJson {
    pub fn new(
        input: &str,
        grid: (usize, usize),
        rep: &SupportReport,
        clips: (Option<(f64, f64)>, Option<(f64, f64)>),
        joint: RegionJson,
        notes: Vec<String>,
    ) -> Self {
        SupportReportJson {
            kind: "support".to_string(),
            input: input.to_string(),
            grid: [grid.0, grid.1],
            method: method_name(rep.method).to_string(),
            x: SetJson::new(&rep.s_x, clips.0),
            y: SetJson::new(&rep.s_y, clips.1),
            joint,
            amiable_x: amiability_name(rep.amiable_x).to_string(),
            amiable_y: amiability_name(rep.amiable_y).to_string(),
            notes,
        }
    }
}

/// Support report for a univariate input.
#[derive(Serialize, Debug, Clone)]
pub struct Support1DReportJson {
    pub kind: String,
    pub input: String,
    pub grid: usize,
    pub method: String,
    pub set: SetJson,
    pub notes: Vec<String>,
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct WitnessJson {
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson { x: w.x, y: w.y, lhs: w.lhs, rhs: w.rhs }
    }
}

pub fn screening_name(s: Screening) -> &'static str {
    match s {
        Screening::DependentBySupport => "DependentBySupport",
        Screening::Inconclusive => "Inconclusive",
    }
}

pub fn oracle_name(o: OracleVerdict) -> &'static str {
    match o {
        OracleVerdict::Independent => "Independent",
        OracleVerdict::Dependent => "Dependent",
        OracleVerdict::ConsistentWithIndependence => "ConsistentWithIndependence",
    }
}

/// Screening plus oracle outcome for one input.
#[derive(Serialize, Debug, Clone)]
pub struct VerdictJson {
    pub kind: String,
    pub input: String,
    pub screening: String,
    pub oracle: Option<String>,
    /// Which oracle produced the verdict: exact, density-probe, or cdf-probe.
    pub oracle_kind: Option<String>,
    pub gap: f64,
    pub gap_is_count: bool,
    pub witnesses: Vec<WitnessJson>,
    pub notes: Vec<String>,
}

impl VerdictJson {
    pub fn new(input: &str, v: &Verdict, oracle_kind: Option<&str>) -> Self {
        VerdictJson {
            kind: "verdict".to_string(),
            input: input.to_string(),
            screening: screening_name(v.screening).to_string(),
            oracle: v.oracle.map(|o| oracle_name(o).to_string()),
            oracle_kind: oracle_kind.map(str::to_string),
            gap: v.gap,
            gap_is_count: v.gap_is_count,
            witnesses: v.witnesses.iter().map(WitnessJson::from).collect(),
            notes: v.notes.clone(),
        }
    }
}

/// One computed quantity lined up against its expected value.
#[derive(Serialize, Debug, Clone)]
pub struct MeasuredJson {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_tol: f64,
    pub within: bool,
}

impl MeasuredJson {
    pub fn new(name: &str, computed: f64, reference: f64, abs_tol: f64) -> Self {
        MeasuredJson {
            name: name.to_string(),
            computed,
            reference,
            abs_tol,
            within: (computed - reference).abs() <= abs_tol,
        }
    }
}

/// Everything one `example` run produced.
#[derive(Serialize, Debug, Clone)]
pub struct ExampleReportJson {
    pub kind: String,
    pub name: String,
    pub seed: u64,
    pub grid: [usize; 2],
    pub support: Option<SupportReportJson>,
    pub support_1d: Option<Support1DReportJson>,
    pub verdict: Option<VerdictJson>,
    pub measured: Vec<MeasuredJson>,
    pub artifacts: Vec<String>,
    pub notes: Vec<String>,
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report structs always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_json_keeps_interval_order_and_flags() {
        let s = ClosedSet1D::interval(0.0, 2.0)
            .unwrap()
            .flag_unbounded(false, true)
            .unwrap();
        let j = SetJson::new(&s, Some((0.0, 2.0)));
        let text = to_json_string(&j);
        assert!(text.contains("\"intervals\""));
        assert!(text.contains("\"right\": true"));
        assert!(text.contains("\"clip\""));
    }

    #[test]
    fn verdict_json_carries_the_pinned_fields() {
        let v = Verdict {
            screening: Screening::DependentBySupport,
            oracle: Some(OracleVerdict::Dependent),
            gap: 0.25,
            gap_is_count: false,
            witnesses: vec![Witness { x: 1.0, y: 2.0, lhs: 0.0, rhs: 1.0 }],
            notes: vec!["n".to_string()],
        };
        let j = VerdictJson::new("test", &v, Some("exact"));
        let text = to_json_string(&j);
        for field in ["screening", "oracle", "gap", "witnesses", "notes", "lhs", "rhs"] {
            assert!(text.contains(&format!("\"{field}\"")), "{field} missing:\n{text}");
        }
    }
}
