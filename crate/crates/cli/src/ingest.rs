//! File ingestion: discrete joint tables (CSV or JSON) and raw sample lists.

use std::path::Path;

use serde::Deserialize;
use supfact_core::dist::DiscreteJoint;

use crate::error::{input_err, io_err, CliError, Result};

/// Ingested tables must carry total mass within this of one; beyond it the
/// table is rejected unless renormalization was requested.
pub const INGEST_MASS_TOL: f64 = 1e-9;

/// Outcome of a table ingest: the joint plus any notes worth surfacing in
/// the report (currently only the renormalization record).
#[derive(Debug)]
pub struct IngestedJoint {
    pub joint: DiscreteJoint,
    pub notes: Vec<String>,
}

#[derive(Deserialize)]
struct JointTableJson {
    atoms: Vec<AtomJson>,
    #[serde(default)]
    limit_points: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct AtomJson {
    x: f64,
    y: f64,
    p: f64,
}

/// Reads a joint PMF from `path`. `.json` files must hold an object with an
/// `atoms` array of `{x, y, p}` and an optional `limit_points` array of
/// `[x, y]` pairs; anything else is parsed as CSV with columns x,y,p and an
/// optional header row.
pub fn ingest_joint_table(path: &Path, renormalize: bool) -> Result<IngestedJoint> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let (atoms, limit_points) = if is_json {
        parse_json_table(&text)?
    } else {
        (parse_csv_table(&text)?, Vec::new())
    };
    build_joint(atoms, limit_points, renormalize)
}

fn parse_json_table(text: &str) -> Result<(Vec<((f64, f64), f64)>, Vec<(f64, f64)>)> {
    let table: JointTableJson = serde_json::from_str(text).map_err(|e| {
        input_err(format!("JSON parse error at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let atoms = table.atoms.iter().map(|a| ((a.x, a.y), a.p)).collect();
    let lps = table.limit_points.iter().map(|&[x, y]| (x, y)).collect();
    Ok((atoms, lps))
}

fn parse_csv_table(text: &str) -> Result<Vec<((f64, f64), f64)>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(input_err(format!(
                "line {line_no}: expected 3 columns x,y,p, got {}",
                fields.len()
            )));
        }
        // A single non-numeric first row is accepted as a header.
        if idx == 0 && fields[0].parse::<f64>().is_err() {
            continue;
        }
        let mut vals = [0.0f64; 3];
        for (col, (slot, field)) in vals.iter_mut().zip(&fields).enumerate() {
            *slot = field.parse::<f64>().map_err(|_| {
                input_err(format!(
                    "line {line_no}, column {}: expected a number, got {field:?}",
                    col + 1
                ))
            })?;
        }
        rows.push(((vals[0], vals[1]), vals[2]));
    }
    Ok(rows)
}

fn build_joint(
    mut atoms: Vec<((f64, f64), f64)>,
    limit_points: Vec<(f64, f64)>,
    renormalize: bool,
) -> Result<IngestedJoint> {
    if atoms.is_empty() {
        return Err(input_err("table holds no atoms"));
    }
    // Duplicate coordinates are an input error, not a distribution error:
    // the file itself is malformed.
    let mut seen: Vec<(f64, f64)> = atoms.iter().map(|a| a.0).collect();
    seen.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(input_err(format!("duplicate atom ({}, {})", w[0].0, w[0].1)));
    }

    let total: f64 = atoms.iter().map(|a| a.1).sum();
    let mut notes = Vec::new();
    if !total.is_finite() {
        return Err(CliError::Distribution("total mass is not finite".into()));
    }
    if (total - 1.0).abs() > INGEST_MASS_TOL {
        if !renormalize {
            return Err(CliError::Distribution(format!(
                "total mass {total} is not within {INGEST_MASS_TOL:e} of one \
                 (pass --renormalize to rescale)"
            )));
        }
        if !(total > 0.0) {
            return Err(CliError::Distribution(format!(
                "total mass {total} cannot be renormalized"
            )));
        }
        for a in &mut atoms {
            a.1 /= total;
        }
        notes.push(format!("input mass {total} renormalized to one"));
    } else if total != 1.0 {
        // Within declared tolerance: rescale exactly so downstream mass
        // checks see one, without surfacing a note for float dust.
        for a in &mut atoms {
            a.1 /= total;
        }
    }

    let joint = DiscreteJoint::new(&atoms, &limit_points).map_err(CliError::from)?;
    Ok(IngestedJoint { joint, notes })
}

/// Reads raw (x, y) samples from a CSV file with an optional header row.
pub fn ingest_samples(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(input_err(format!(
                "line {line_no}: expected 2 columns x,y, got {}",
                fields.len()
            )));
        }
        if idx == 0 && fields[0].parse::<f64>().is_err() {
            continue;
        }
        let x = fields[0].parse::<f64>().map_err(|_| {
            input_err(format!("line {line_no}, column 1: expected a number, got {:?}", fields[0]))
        })?;
        let y = fields[1].parse::<f64>().map_err(|_| {
            input_err(format!("line {line_no}, column 2: expected a number, got {:?}", fields[1]))
        })?;
        out.push((x, y));
    }
    if out.is_empty() {
        return Err(input_err("sample file holds no rows"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("supfact-ingest-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn csv_with_header_and_nine_uniform_rows_ingests_cleanly() {
        let mut body = String::from("x,y,p\n");
        for x in [4, 5, 7] {
            for y in [4, 5, 7] {
                body.push_str(&format!("{x},{y},{}\n", 1.0 / 9.0));
            }
        }
        let path = write_temp("iid.csv", &body);
        let got = ingest_joint_table(&path, false).unwrap();
        assert_eq!(got.joint.atoms().len(), 9);
        assert!(got.notes.is_empty());
        assert!((got.joint.total_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn duplicate_atom_is_an_input_error() {
        let path = write_temp("dup.csv", "4,5,0.5\n4,5,0.5\n");
        let err = ingest_joint_table(&path, false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("duplicate atom"));
    }

    #[test]
    fn off_mass_is_refused_then_accepted_with_renormalize() {
        let path = write_temp("off.csv", "0,0,0.5\n1,1,0.499\n");
        let err = ingest_joint_table(&path, false).unwrap_err();
        assert_eq!(err.exit_code(), 3);

        let got = ingest_joint_table(&path, true).unwrap();
        assert_eq!(got.notes.len(), 1);
        assert!(got.notes[0].contains("renormalized"));
        assert!((got.joint.total_mass() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        let path = write_temp("bad.csv", "0,0,0.5\n1,zebra,0.5\n");
        let err = ingest_joint_table(&path, false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("column 2"), "{msg}");
    }

    #[test]
    fn json_table_with_limit_points_round_trips() {
        let body = r#"{
            "atoms": [
                {"x": 0.5, "y": 0.5, "p": 0.5},
                {"x": 0.25, "y": 0.25, "p": 0.25},
                {"x": 0.125, "y": 0.125, "p": 0.25}
            ],
            "limit_points": [[0, 0]]
        }"#;
        let path = write_temp("dyadic.json", body);
        let got = ingest_joint_table(&path, false).unwrap();
        assert_eq!(got.joint.atoms().len(), 3);
        assert_eq!(got.joint.declared_limit_points(), &[(0.0, 0.0)]);
    }

    #[test]
    fn json_parse_error_reports_position() {
        let path = write_temp("broken.json", "{\"atoms\": [\n  {\"x\": }\n]}");
        let err = ingest_joint_table(&path, false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn samples_reader_skips_header_and_demands_two_columns() {
        let path = write_temp("xy.csv", "x,y\n0.1,0.2\n0.3,0.4\n");
        let got = ingest_samples(&path).unwrap();
        assert_eq!(got, vec![(0.1, 0.2), (0.3, 0.4)]);

        let bad = write_temp("xyz.csv", "0.1,0.2,0.3\n");
        assert_eq!(ingest_samples(&bad).unwrap_err().exit_code(), 2);
    }
}
