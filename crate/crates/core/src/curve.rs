//! Distance grids and potential curves.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::PlateKind;
use crate::potentials::Channel;
use crate::quad::QuadratureSpec;
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Mirror(PlateKind),
    FreePair,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::Mirror(plate) => write!(f, "mirror({plate})"),
            Geometry::FreePair => f.write_str("free_pair"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Quadrature => f.write_str("quadrature"),
            Method::ClosedForm => f.write_str("closed_form"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Geometric,
}

/// `min:max:points[:lin|geo]`; geometric spacing unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(min: f64, max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if !(min > 0.0 && min.is_finite()) {
            return Err(Error::Config(format!(
                "grid minimum must be > 0, got {min}"
            )));
        }
        if !(max > min && max.is_finite()) {
            return Err(Error::Config(format!(
                "grid maximum {max} must exceed the minimum {min}"
            )));
        }
        if points < 2 {
            return Err(Error::Config(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        Ok(Grid {
            min,
            max,
            points,
            spacing,
        })
    }

    pub fn geometric(min: f64, max: f64, points: usize) -> Result<Self> {
        Self::new(min, max, points, Spacing::Geometric)
    }

    pub fn distances(&self) -> Vec<f64> {
        let n = self.points - 1;
        let mut d: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.min + t * (self.max - self.min),
                    Spacing::Geometric => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect();
        d[0] = self.min;
        d[n] = self.max;
        d
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Geometric => "geo",
        };
        write!(f, "{:e}:{:e}:{}:{}", self.min, self.max, self.points, s)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Config(format!(
                "grid '{s}' must look like min:max:points[:lin|geo]"
            )));
        }
        let num = |p: &str, what: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("grid {what} '{p}' is not a number")))
        };
        let min = num(parts[0], "minimum")?;
        let max = num(parts[1], "maximum")?;
        let points = parts[2].trim().parse::<usize>().map_err(|_| {
            Error::Config(format!("grid point count '{}' is not an integer", parts[2]))
        })?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None | Some("geo") => Spacing::Geometric,
            Some("lin") => Spacing::Linear,
            Some(other) => {
                return Err(Error::Config(format!(
                    "grid spacing '{other}' (expected lin|geo)"
                )))
            }
        };
        Grid::new(min, max, points, spacing)
    }
}

/// Potential values per channel over a distance grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialCurve {
    pub geometry: Geometry,
    pub distances: Vec<f64>,
    pub values: BTreeMap<Channel, Vec<f64>>,
    pub total: Vec<f64>,
    pub method: Method,
    pub units: UnitSystem,
    pub tolerances: QuadratureSpec,
    pub atoms: Vec<String>,
}

impl PotentialCurve {
    pub fn new(
        geometry: Geometry,
        distances: Vec<f64>,
        method: Method,
        units: UnitSystem,
        tolerances: QuadratureSpec,
        atoms: Vec<String>,
    ) -> Result<Self> {
        if distances.is_empty() {
            return Err(Error::domain("a curve needs at least one distance"));
        }
        if distances.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err(Error::domain("curve distances must be positive and finite"));
        }
        if distances.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("curve distances must be strictly increasing"));
        }
        Ok(PotentialCurve {
            geometry,
            total: vec![0.0; distances.len()],
            distances,
            values: BTreeMap::new(),
            method,
            units,
            tolerances,
            atoms,
        })
    }

    pub fn insert(&mut self, channel: Channel, values: Vec<f64>) -> Result<()> {
        if values.len() != self.distances.len() {
            return Err(Error::domain(format!(
                "channel {channel} has {} values for {} distances",
                values.len(),
                self.distances.len()
            )));
        }
        self.values.insert(channel, values);
        Ok(())
    }

    pub fn set_total(&mut self, total: Vec<f64>) -> Result<()> {
        if total.len() != self.distances.len() {
            return Err(Error::domain("total has the wrong length"));
        }
        self.total = total;
        Ok(())
    }

    pub fn channel(&self, channel: Channel) -> Option<&[f64]> {
        self.values.get(&channel).map(Vec::as_slice)
    }

    pub fn channels(&self) -> impl Iterator<Item = Channel> + '_ {
        self.values.keys().copied()
    }

    /// Largest relative mismatch between `total` and the channel sum.
    pub fn additivity_defect(&self) -> f64 {
        (0..self.distances.len())
            .map(|i| {
                let sum: f64 = self.values.values().map(|v| v[i]).sum();
                let scale = self.values.values().map(|v| v[i].abs()).sum::<f64>();
                if scale == 0.0 {
                    self.total[i].abs()
                } else {
                    (self.total[i] - sum).abs() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}
