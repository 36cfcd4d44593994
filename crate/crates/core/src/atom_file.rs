//! TOML atom definitions.
//!
//! ```toml
//! label = "model hydrogen"
//!
//! [[electric_transitions]]
//! omega = 1.55e16    # rad/s
//! mu_sq = 2.0e-58    # C^2 m^2
//!
//! [[magnetic_transitions]]
//! omega = 1.0e11
//! m_sq = 8.6e-47     # J^2/T^2
//!
//! beta_d = -3.95e-29 # J/T^2; or give [[particles]] instead
//! ```
//!
//! A `[[particles]]` entry has keys `q` (C), `m` (kg) and `r_sq` (m^2).
//! Giving both `beta_d` and `particles` is an error.

use std::fs;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::response::{AtomModel, DiamagneticSpec, Particle, Transition};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    label: Option<String>,
    #[serde(default)]
    electric_transitions: Vec<Spanned<RawElectric>>,
    #[serde(default)]
    magnetic_transitions: Vec<Spanned<RawMagnetic>>,
    beta_d: Option<Spanned<f64>>,
    particles: Option<Spanned<Vec<Spanned<RawParticle>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElectric {
    omega: f64,
    mu_sq: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMagnetic {
    omega: f64,
    m_sq: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParticle {
    q: f64,
    m: f64,
    r_sq: f64,
}

/// 1-based line and column of a byte offset.
fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let col = before
        .rfind('\n')
        .map_or(before.len(), |nl| before.len() - nl - 1)
        + 1;
    (line, col)
}

fn at(source: &str, span: Range<usize>, message: impl std::fmt::Display) -> String {
    let (line, col) = line_col(source, span.start);
    format!("line {line}, column {col}: {message}")
}

fn located<T>(source: &str, span: Range<usize>, r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| {
        let msg = match e {
            Error::Domain(m) | Error::Config(m) => m,
            other => other.to_string(),
        };
        at(source, span, msg)
    })
}

/// Parses an atom definition; `default_label` is used when the file has none.
pub fn parse_atom(source: &str, default_label: &str) -> std::result::Result<AtomModel, String> {
    let raw: RawAtom = toml::from_str(source).map_err(|e| match e.span() {
        Some(span) => at(source, span, e.message().trim_end()),
        None => e.message().trim_end().to_string(),
    })?;

    let electric = raw
        .electric_transitions
        .iter()
        .map(|t| {
            let v = t.get_ref();
            located(source, t.span(), Transition::electric(v.omega, v.mu_sq))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let magnetic = raw
        .magnetic_transitions
        .iter()
        .map(|t| {
            let v = t.get_ref();
            located(source, t.span(), Transition::magnetic(v.omega, v.m_sq))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let diamagnetic = match (&raw.beta_d, &raw.particles) {
        (Some(_), Some(p)) => {
            return Err(at(
                source,
                p.span(),
                "give either beta_d or particles, not both",
            ))
        }
        (Some(b), None) => {
            let spec = DiamagneticSpec::Direct(*b.get_ref());
            located(source, b.span(), crate::response::diamagnetisability(&spec))?;
            spec
        }
        (None, Some(ps)) => {
            let particles: Vec<Particle> = ps
                .get_ref()
                .iter()
                .map(|p| {
                    let v = p.get_ref();
                    let particle = Particle {
                        charge: v.q,
                        mass: v.m,
                        mean_sq_radius: v.r_sq,
                    };
                    let spec = DiamagneticSpec::Particles(vec![particle]);
                    located(source, p.span(), crate::response::diamagnetisability(&spec))
                        .map(|_| particle)
                })
                .collect::<std::result::Result<_, _>>()?;
            DiamagneticSpec::Particles(particles)
        }
        (None, None) => DiamagneticSpec::default(),
    };

    let label = raw.label.unwrap_or_else(|| default_label.to_string());
    AtomModel::new(label, electric, magnetic, diamagnetic).map_err(|e| match e {
        Error::Domain(m) | Error::Config(m) => m,
        other => other.to_string(),
    })
}

/// Reads and parses an atom file. The file stem is the default label.
pub fn load_atom(path: &Path) -> Result<AtomModel> {
    let source = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "atom".to_string());
    parse_atom(&source, &stem).map_err(|message| Error::AtomFile {
        path: path.to_path_buf(),
        message,
    })
}
