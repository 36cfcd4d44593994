//! CSV and JSON renderings of curves, slope profiles and table reports.
//!
//! CSV files open with `# key: value` metadata lines followed by a header
//! row. Numbers are written with 17 significant digits so they round-trip.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::asymptotics::{SlopeProfile, TableReport};
use crate::curve::{Geometry, Grid, PotentialCurve};
use crate::quad::QuadratureSpec;
use crate::units::UnitSystem;

pub const ENGINE: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub engine: String,
    pub version: String,
    pub units: UnitSystem,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    pub atoms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<String>,
}

impl Metadata {
    pub fn new(units: UnitSystem, tolerances: &QuadratureSpec) -> Self {
        Metadata {
            engine: ENGINE.to_string(),
            version: VERSION.to_string(),
            units,
            rel_tol: tolerances.rel_tol,
            abs_tol: tolerances.abs_tol,
            max_subdivisions: tolerances.max_subdivisions,
            grid: None,
            geometry: None,
            method: None,
            atoms: Vec::new(),
            channel: None,
        }
    }

    pub fn for_curve(curve: &PotentialCurve, grid: Option<&Grid>) -> Self {
        Metadata {
            grid: grid.map(Grid::to_string),
            geometry: Some(curve.geometry.to_string()),
            method: Some(curve.method.to_string()),
            atoms: curve.atoms.clone(),
            ..Metadata::new(curve.units, &curve.tolerances)
        }
    }

    fn lines(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("engine", format!("{} {}", self.engine, self.version)),
            ("units", self.units.to_string()),
            ("rel_tol", format!("{:e}", self.rel_tol)),
            ("abs_tol", format!("{:e}", self.abs_tol)),
            ("max_subdivisions", self.max_subdivisions.to_string()),
        ];
        let optional = [
            ("grid", &self.grid),
            ("geometry", &self.geometry),
            ("method", &self.method),
            ("channel", &self.channel),
        ];
        out.extend(
            optional
                .into_iter()
                .filter_map(|(k, v)| v.clone().map(|v| (k, v))),
        );
        for (i, label) in self.atoms.iter().enumerate() {
            let key = if self.atoms.len() == 1 {
                "atom"
            } else if i == 0 {
                "atom_a"
            } else {
                "atom_b"
            };
            out.push((key, label.clone()));
        }
        out
    }

    fn write_csv_header(&self, out: &mut String) {
        for (k, v) in self.lines() {
            // labels are free text: keep each entry on one line
            let v = v.replace(['\n', '\r'], " ");
            let _ = writeln!(out, "# {k}: {v}");
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn curve_csv(curve: &PotentialCurve, grid: Option<&Grid>) -> String {
    let mut out = String::new();
    Metadata::for_curve(curve, grid).write_csv_header(&mut out);
    out.push_str("distance");
    for ch in curve.channels() {
        let _ = write!(out, ",channel:{ch}");
    }
    out.push_str(",total\n");
    for (i, d) in curve.distances.iter().enumerate() {
        out.push_str(&num(*d));
        for ch in curve.channels() {
            out.push(',');
            out.push_str(&num(curve.values[&ch][i]));
        }
        out.push(',');
        out.push_str(&num(curve.total[i]));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct CurveDocument<'a> {
    metadata: Metadata,
    distances: &'a [f64],
    channels: BTreeMap<String, &'a [f64]>,
    total: &'a [f64],
}

pub fn curve_json(curve: &PotentialCurve, grid: Option<&Grid>) -> String {
    let doc = CurveDocument {
        metadata: Metadata::for_curve(curve, grid),
        distances: &curve.distances,
        channels: curve
            .values
            .iter()
            .map(|(ch, v)| (ch.name(), v.as_slice()))
            .collect(),
        total: &curve.total,
    };
    to_json(&doc)
}

pub fn slopes_csv(profile: &SlopeProfile, metadata: &Metadata) -> String {
    let mut out = String::new();
    metadata.write_csv_header(&mut out);
    let _ = writeln!(out, "# masked_points: {}", profile.masked.len());
    out.push_str("distance,slope,sign\n");
    for ((d, n), s) in profile
        .distances
        .iter()
        .zip(&profile.exponent)
        .zip(&profile.sign)
    {
        let _ = writeln!(out, "{},{},{s}", num(*d), num(*n));
    }
    out
}

#[derive(Serialize)]
struct SlopeDocument<'a> {
    metadata: &'a Metadata,
    #[serde(flatten)]
    profile: &'a SlopeProfile,
}

pub fn slopes_json(profile: &SlopeProfile, metadata: &Metadata) -> String {
    to_json(&SlopeDocument { metadata, profile })
}

fn geometry_label(g: Geometry) -> String {
    match g {
        Geometry::Mirror(plate) => format!("mirror/{plate}"),
        Geometry::FreePair => "pair".to_string(),
    }
}

/// Fixed-width pass/fail matrix, one row per measured cell.
pub fn table_report_text(report: &TableReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<18} {:<8} {:<12} {:>9} {:>9} {:>10} {:>9} {:>11}  result",
        "geometry", "channel", "regime", "exp sign", "exp power", "power", "sign", "distance"
    );
    for cell in &report.cells {
        let e = &cell.entry;
        let sign = cell
            .measured_sign
            .map_or("0".to_string(), |s| s.to_string());
        let _ = writeln!(
            out,
            "{:<18} {:<8} {:<12} {:>9} {:>9} {:>10.4} {:>9} {:>11.3e}  {}",
            geometry_label(e.geometry),
            e.channel.name(),
            e.regime.to_string(),
            e.expected_sign.to_string(),
            e.expected_power,
            cell.measured_power,
            sign,
            cell.distance,
            if cell.pass { "PASS" } else { "FAIL" }
        );
    }
    let failed = report.failures().count();
    let _ = writeln!(
        out,
        "{} of {} cells pass (slope tolerance {})",
        report.cells.len() - failed,
        report.cells.len(),
        report.slope_tolerance
    );
    out
}

#[derive(Serialize)]
struct TableDocument<'a> {
    metadata: &'a Metadata,
    all_passed: bool,
    #[serde(flatten)]
    report: &'a TableReport,
}

pub fn table_report_json(report: &TableReport, metadata: &Metadata) -> String {
    to_json(&TableDocument {
        metadata,
        all_passed: report.all_passed(),
        report,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output documents serialize");
    s.push('\n');
    s
}
