//! File formats shared by the library and the CLI.
//!
//! * curve CSV: header `x,y`, one point per row
//! * TreadmillSled CSV: header `t,xi1,xi2`
//! * trajectory CSV: header `t,phi1,phi2`
//! * verification report: JSON with keys `max_residual`,
//!   `admissible_everywhere`, `min_normal_force`, `orientation_flipped`,
//!   `series`
//! * phase bundle: one trajectory CSV per seed plus an `index.json`
//!
//! All files are UTF-8 with `.` as the decimal point. Floats are written in
//! Rust's shortest round-trip form, so identical inputs produce
//! byte-identical outputs.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::dynamics::PhaseTrajectory;
use crate::geometry::Vec2;
use crate::ramp::RampReport;
use crate::treadmill::TmsCurve;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{path}: expected header `{expected}`, found `{found}`")]
    BadHeader {
        path: PathBuf,
        expected: &'static str,
        found: String,
    },

    #[error("{path}: record {record}: {msg}")]
    BadRecord {
        path: PathBuf,
        record: usize,
        msg: String,
    },

    #[error("{path}: no data rows")]
    Empty { path: PathBuf },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("invalid data: {0}")]
    Data(#[from] crate::error::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

/// What a CSV file contains, judged by its header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsvKind {
    Curve,
    Tms,
    Trajectory,
}

pub fn detect_csv_kind(header: &str) -> Option<CsvKind> {
    match header.trim() {
        "x,y" => Some(CsvKind::Curve),
        "t,xi1,xi2" => Some(CsvKind::Tms),
        "t,phi1,phi2" => Some(CsvKind::Trajectory),
        _ => None,
    }
}

fn read_numeric_rows(path: &Path, expected: &'static str) -> IoResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let found = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if found != expected {
        return Err(IoError::BadHeader {
            path: path.to_path_buf(),
            expected,
            found,
        });
    }
    let width = expected.split(',').count();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() != width {
            return Err(IoError::BadRecord {
                path: path.to_path_buf(),
                record: i,
                msg: format!("expected {width} fields, got {}", record.len()),
            });
        }
        let mut row = Vec::with_capacity(width);
        for field in record.iter() {
            let value: f64 = field.parse().map_err(|_| IoError::BadRecord {
                path: path.to_path_buf(),
                record: i,
                msg: format!("not a number: `{field}`"),
            })?;
            if !value.is_finite() {
                return Err(IoError::BadRecord {
                    path: path.to_path_buf(),
                    record: i,
                    msg: format!("non-finite value: `{field}`"),
                });
            }
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(IoError::Empty {
            path: path.to_path_buf(),
        });
    }
    Ok(rows)
}

pub fn read_curve_csv(path: &Path) -> IoResult<Vec<Vec2>> {
    Ok(read_numeric_rows(path, "x,y")?
        .into_iter()
        .map(|r| Vec2::new(r[0], r[1]))
        .collect())
}

pub fn write_curve_csv(path: &Path, points: &[Vec2]) -> IoResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", p.x, p.y)?;
    }
    Ok(())
}

pub fn read_tms_csv(path: &Path) -> IoResult<TmsCurve> {
    let rows = read_numeric_rows(path, "t,xi1,xi2")?;
    let params = rows.iter().map(|r| r[0]).collect();
    let points = rows.iter().map(|r| Vec2::new(r[1], r[2])).collect();
    Ok(TmsCurve::new(params, points)?)
}

pub fn write_tms_csv(path: &Path, gamma: &TmsCurve) -> IoResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "t,xi1,xi2")?;
    for (t, p) in gamma.params().iter().zip(gamma.points()) {
        writeln!(w, "{},{},{}", t, p.x, p.y)?;
    }
    Ok(())
}

/// Read a trajectory CSV as raw (t, phi1, phi2) rows.
pub fn read_trajectory_csv(path: &Path) -> IoResult<Vec<(f64, f64, f64)>> {
    Ok(read_numeric_rows(path, "t,phi1,phi2")?
        .into_iter()
        .map(|r| (r[0], r[1], r[2]))
        .collect())
}

pub fn write_trajectory_csv(path: &Path, traj: &PhaseTrajectory) -> IoResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "t,phi1,phi2")?;
    for (t, s) in &traj.states {
        writeln!(w, "{},{},{}", t, s.phi1, s.phi2)?;
    }
    Ok(())
}

pub fn write_report_json(path: &Path, report: &RampReport) -> IoResult<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", report.to_json())?;
    Ok(())
}

/// Write one CSV per trajectory plus `index.json` into `dir`.
///
/// Returns the paths of the trajectory files in index order.
pub fn write_phase_bundle(dir: &Path, trajectories: &[PhaseTrajectory]) -> IoResult<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::with_capacity(trajectories.len());
    let mut entries = Vec::with_capacity(trajectories.len());
    for (i, traj) in trajectories.iter().enumerate() {
        let name = format!("traj_{i:03}.csv");
        let path = dir.join(&name);
        write_trajectory_csv(&path, traj)?;
        // the seed sits where t = 0
        let seed = traj
            .states
            .iter()
            .min_by(|a, b| a.0.abs().total_cmp(&b.0.abs()))
            .map(|(_, s)| *s)
            .unwrap_or_default();
        entries.push(serde_json::json!({
            "file": name,
            "seed": [seed.phi1, seed.phi2],
            "points": traj.states.len(),
        }));
        files.push(path);
    }
    let first = trajectories.first();
    let index = serde_json::json!({
        "system": first.map(|t| t.system.name()),
        "mu": first.map(|t| t.cfg.mu()),
        "v": first.map(|t| t.cfg.v()),
        "h": first.map(|t| t.h),
        "trajectories": entries,
    });
    let mut w = BufWriter::new(File::create(dir.join("index.json"))?);
    writeln!(w, "{}", serde_json::to_string_pretty(&index)?)?;
    Ok(files)
}

/// Trajectory CSV paths listed by a phase bundle index.
pub fn read_phase_index(path: &Path) -> IoResult<Vec<PathBuf>> {
    let data = fs::read_to_string(path)?;
    let index: serde_json::Value = serde_json::from_str(&data)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(index["trajectories"]
        .as_array()
        .map(|entries| {
            entries
                .iter()
                .filter_map(|e| e["file"].as_str())
                .map(|name| dir.join(name))
                .collect()
        })
        .unwrap_or_default())
}
