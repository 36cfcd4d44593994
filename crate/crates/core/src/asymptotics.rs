//! Local power-law exponents of potential curves and the sign/power tables
//! for electric, paramagnetic and diamagnetic atoms.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{Geometry, PotentialCurve};
use crate::error::{Error, Result};
use crate::green::PlateKind;
use crate::potentials::{Channel, Engine, ResponseKind, NONRETARDED_DEPTH, RETARDED_DEPTH};
use crate::response::AtomModel;

/// Allowed deviation of a measured exponent from the tabulated integer.
pub const SLOPE_TOLERANCE: f64 = 0.05;
/// Relative tolerance on the ratio test for a geometric grid.
const GEOMETRIC_TOLERANCE: f64 = 1e-9;
/// Ratio of the five-point stencil used to measure a table cell.
pub const STENCIL_RATIO: f64 = 1.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn of(v: f64) -> Option<Sign> {
        if v > 0.0 {
            Some(Sign::Positive)
        } else if v < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// `n(l) = d ln|U| / d ln l` at the interior grid points where it is defined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeProfile {
    pub distances: Vec<f64>,
    pub exponent: Vec<f64>,
    pub sign: Vec<Sign>,
    /// Interior points dropped because the stencil holds a zero or changes sign.
    pub masked: Vec<f64>,
}

/// Central log-log differences over a geometric grid.
pub fn log_slopes(distances: &[f64], values: &[f64]) -> Result<SlopeProfile> {
    let n = distances.len();
    if n < 5 {
        return Err(Error::domain(format!(
            "slope estimation needs >= 5 points, got {n}"
        )));
    }
    if values.len() != n {
        return Err(Error::domain("values and distances differ in length"));
    }
    if distances.iter().any(|d| !(*d > 0.0)) {
        return Err(Error::domain("distances must be positive"));
    }
    let ratio = distances[1] / distances[0];
    if !(ratio > 1.0)
        || distances
            .windows(2)
            .any(|w| ((w[1] / w[0]) / ratio - 1.0).abs() > GEOMETRIC_TOLERANCE)
    {
        return Err(Error::domain(
            "slope estimation needs a geometric distance grid",
        ));
    }

    let mut profile = SlopeProfile {
        distances: Vec::new(),
        exponent: Vec::new(),
        sign: Vec::new(),
        masked: Vec::new(),
    };
    for i in 1..n - 1 {
        let signs: Vec<Option<Sign>> = values[i - 1..=i + 1].iter().map(|&v| Sign::of(v)).collect();
        let consistent = signs.iter().all(|s| s.is_some() && *s == signs[0]);
        if !consistent {
            profile.masked.push(distances[i]);
            continue;
        }
        let slope = (values[i + 1].abs().ln() - values[i - 1].abs().ln())
            / (distances[i + 1].ln() - distances[i - 1].ln());
        if !slope.is_finite() {
            profile.masked.push(distances[i]);
            continue;
        }
        profile.distances.push(distances[i]);
        profile.exponent.push(slope);
        profile.sign.push(signs[1].expect("checked above"));
    }
    Ok(profile)
}

/// Local exponent of one channel, or of the total when `channel` is `None`.
pub fn local_log_slope(curve: &PotentialCurve, channel: Option<Channel>) -> Result<SlopeProfile> {
    let values = match channel {
        None => &curve.total[..],
        Some(ch) => curve
            .channel(ch)
            .ok_or_else(|| Error::domain(format!("curve has no channel {ch}")))?,
    };
    log_slopes(&curve.distances, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRegime {
    Nonretarded,
    Retarded,
    /// Frequency-independent response: one power law at every distance.
    AllRanges,
}

impl fmt::Display for TableRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableRegime::Nonretarded => "nonretarded",
            TableRegime::Retarded => "retarded",
            TableRegime::AllRanges => "all ranges",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableEntry {
    pub channel: Channel,
    pub geometry: Geometry,
    pub regime: TableRegime,
    pub expected_sign: Sign,
    /// Exponent `n` in `U ~ r^n`.
    pub expected_power: i32,
}

fn sign_from(positive: bool) -> Sign {
    if positive {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Sign and power-law claims for a single atom at a perfect mirror.
pub fn mirror_table() -> Vec<TableEntry> {
    use ResponseKind::*;
    let mut entries = Vec::new();
    for plate in [
        PlateKind::PerfectlyConducting,
        PlateKind::InfinitelyPermeable,
    ] {
        let conducting = plate == PlateKind::PerfectlyConducting;
        for kind in [Electric, Paramagnetic] {
            // equals attract, opposites repel
            let attractive = conducting == (kind == Electric);
            for (regime, power) in [(TableRegime::Retarded, -4), (TableRegime::Nonretarded, -3)] {
                entries.push(TableEntry {
                    channel: Channel::Mirror(kind),
                    geometry: Geometry::Mirror(plate),
                    regime,
                    expected_sign: sign_from(!attractive),
                    expected_power: power,
                });
            }
        }
        // the diamagnetic atom carries the electric sign
        entries.push(TableEntry {
            channel: Channel::Mirror(Diamagnetic),
            geometry: Geometry::Mirror(plate),
            regime: TableRegime::AllRanges,
            expected_sign: sign_from(!conducting),
            expected_power: -4,
        });
    }
    entries
}

/// Sign and power-law claims for two atoms in free space.
pub fn pair_table() -> Vec<TableEntry> {
    use ResponseKind::*;
    let mut entries = Vec::new();
    for a in ResponseKind::ALL {
        for b in ResponseKind::ALL {
            let channel = Channel::Pair(a, b);
            if (a, b) == (Diamagnetic, Diamagnetic) {
                entries.push(TableEntry {
                    channel,
                    geometry: Geometry::FreePair,
                    regime: TableRegime::AllRanges,
                    expected_sign: Sign::Negative,
                    expected_power: -7,
                });
                continue;
            }
            // like responses (e-e, or both of one magnetic type) attract;
            // paramagnetic against electric or diamagnetic repels
            let repulsive = matches!(
                (a, b),
                (Electric, Paramagnetic)
                    | (Paramagnetic, Electric)
                    | (Paramagnetic, Diamagnetic)
                    | (Diamagnetic, Paramagnetic)
            );
            let nonretarded_power = match (a, b) {
                (Electric, Electric) | (Paramagnetic, Paramagnetic) => -6,
                (Electric, Paramagnetic) | (Paramagnetic, Electric) => -4,
                (Electric, Diamagnetic) | (Diamagnetic, Electric) => -5,
                _ => -6,
            };
            for (regime, power) in [
                (TableRegime::Retarded, -7),
                (TableRegime::Nonretarded, nonretarded_power),
            ] {
                entries.push(TableEntry {
                    channel,
                    geometry: Geometry::FreePair,
                    regime,
                    expected_sign: sign_from(repulsive),
                    expected_power: power,
                });
            }
        }
    }
    entries
}

/// Single-transition atoms used to probe the tables.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub electric: AtomModel,
    pub paramagnetic: AtomModel,
    pub diamagnetic: AtomModel,
    /// Transition frequency of the electric and paramagnetic fixtures.
    pub omega0: f64,
}

impl Fixtures {
    /// Transition at `omega0 = 1` with `alpha(0) = beta_p(0) = 1` in units
    /// where `hbar = 1`, and `beta_d = -1`.
    pub fn standard(hbar: f64) -> Result<Self> {
        Self::with_beta_d(hbar, -1.0)
    }

    pub fn with_beta_d(hbar: f64, beta_d: f64) -> Result<Self> {
        let omega0 = 1.0;
        // alpha(0) = 2 |mu|^2 / (3 hbar omega0) = 1
        let weight = 1.5 * hbar * omega0;
        Ok(Fixtures {
            electric: AtomModel::electric("electric fixture", omega0, weight)?,
            paramagnetic: AtomModel::paramagnetic("paramagnetic fixture", omega0, weight)?,
            diamagnetic: AtomModel::diamagnetic("diamagnetic fixture", beta_d)?,
            omega0,
        })
    }

    pub fn atom(&self, kind: ResponseKind) -> &AtomModel {
        match kind {
            ResponseKind::Electric => &self.electric,
            ResponseKind::Paramagnetic => &self.paramagnetic,
            ResponseKind::Diamagnetic => &self.diamagnetic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub entry: TableEntry,
    pub distance: f64,
    pub measured_power: f64,
    pub measured_sign: Option<Sign>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub slope_tolerance: f64,
    pub cells: Vec<CellResult>,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

/// Probe distances for a table regime, in units of `c / omega0`, chosen so
/// the whole stencil lies past the regime threshold.
fn probe_depths(regime: TableRegime) -> Vec<f64> {
    let margin = STENCIL_RATIO * STENCIL_RATIO * 2.0;
    match regime {
        TableRegime::Nonretarded => vec![NONRETARDED_DEPTH / margin],
        TableRegime::Retarded => vec![RETARDED_DEPTH * margin],
        TableRegime::AllRanges => vec![NONRETARDED_DEPTH / margin, 1.0, RETARDED_DEPTH * margin],
    }
}

fn stencil(center: f64) -> Vec<f64> {
    (-2..=2).map(|k| center * STENCIL_RATIO.powi(k)).collect()
}

fn measure(
    engine: &Engine,
    fixtures: &Fixtures,
    entry: &TableEntry,
    distance: f64,
) -> Result<CellResult> {
    let grid = stencil(distance);
    let curve = match (entry.geometry, entry.channel) {
        (Geometry::Mirror(plate), Channel::Mirror(kind)) => {
            engine.mirror_curve(fixtures.atom(kind), plate, &grid)?
        }
        (Geometry::FreePair, Channel::Pair(a, b)) => {
            engine.pair_curve(fixtures.atom(a), fixtures.atom(b), &grid)?
        }
        _ => {
            return Err(Error::domain(format!(
                "table entry mixes geometry {} with channel {}",
                entry.geometry, entry.channel
            )))
        }
    };
    let values = curve
        .channel(entry.channel)
        .expect("curve holds every channel");
    let signs: Vec<Option<Sign>> = values.iter().map(|&v| Sign::of(v)).collect();
    let measured_sign = if signs.iter().all(|s| *s == signs[0]) {
        signs[0]
    } else {
        None
    };
    let profile = local_log_slope(&curve, Some(entry.channel))?;
    let measured_power = profile
        .distances
        .iter()
        .position(|&d| d == grid[2])
        .map(|i| profile.exponent[i])
        .unwrap_or(f64::NAN);
    let pass = measured_sign == Some(entry.expected_sign)
        && (measured_power - f64::from(entry.expected_power)).abs() <= SLOPE_TOLERANCE;
    Ok(CellResult {
        entry: *entry,
        distance,
        measured_power,
        measured_sign,
        pass,
    })
}

/// Measures every cell of both tables on the fixture atoms.
///
/// Cells over "all ranges" are probed deep in both regimes and at the
/// crossover; each probe is reported as its own row.
pub fn verify_tables(engine: &Engine, fixtures: &Fixtures) -> Result<TableReport> {
    let length = engine.constants().c / fixtures.omega0;
    let jobs: Vec<(TableEntry, f64)> = mirror_table()
        .into_iter()
        .chain(pair_table())
        .flat_map(|entry| {
            probe_depths(entry.regime)
                .into_iter()
                .map(move |depth| (entry, depth * length))
        })
        .collect();
    let cells = jobs
        .par_iter()
        .map(|(entry, distance)| measure(engine, fixtures, entry, *distance))
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport {
        slope_tolerance: SLOPE_TOLERANCE,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::UnitSystem;

    #[test]
    fn exact_power_law() {
        let d: Vec<f64> = (0..30).map(|i| 0.5 * 1.01f64.powi(i)).collect();
        for n in [-10.0, -7.0, -4.5, 0.0] {
            let v: Vec<f64> = d.iter().map(|x| -3.0 * x.powf(n)).collect();
            let p = log_slopes(&d, &v).unwrap();
            assert_eq!(p.exponent.len(), 28);
            assert!(p.exponent.iter().all(|s| (s - n).abs() < 1e-6), "{n}");
            assert!(p.sign.iter().all(|s| *s == Sign::Negative));
        }
    }

    #[test]
    fn masks_sign_changes_and_zeros() {
        let d: Vec<f64> = (0..6).map(|i| 2f64.powi(i)).collect();
        let v = [1.0, 0.5, -0.2, -0.1, 0.0, -0.01];
        let p = log_slopes(&d, &v).unwrap();
        assert!(p.exponent.is_empty());
        assert_eq!(p.masked.len(), 4);
    }

    #[test]
    fn rejects_bad_grids() {
        let v = [1.0; 5];
        assert!(log_slopes(&[1.0, 2.0, 3.0, 4.0, 5.0], &v).is_err());
        assert!(log_slopes(&[1.0, 2.0, 4.0, 8.0], &v[..4]).is_err());
        assert!(log_slopes(&[1.0, 2.0, 4.0, 8.0, 16.0], &v).is_ok());
    }

    #[test]
    fn table_shapes() {
        assert_eq!(mirror_table().len(), 10);
        assert_eq!(pair_table().len(), 17);
        // six (atom, plate) claims in the mirror table
        let mut groups: Vec<(Channel, Geometry)> = mirror_table()
            .iter()
            .map(|e| (e.channel, e.geometry))
            .collect();
        groups.dedup();
        assert_eq!(groups.len(), 6);
    }

    #[test]
    fn positive_beta_fixture_rejected() {
        assert!(Fixtures::with_beta_d(1.0, 0.3).is_err());
    }

    #[test]
    fn selected_cells() {
        let engine = Engine::new(UnitSystem::Natural);
        let fx = Fixtures::standard(1.0).unwrap();
        let cases = [
            (
                TableEntry {
                    channel: Channel::Mirror(ResponseKind::Electric),
                    geometry: Geometry::Mirror(PlateKind::PerfectlyConducting),
                    regime: TableRegime::Retarded,
                    expected_sign: Sign::Negative,
                    expected_power: -4,
                },
                2e3,
            ),
            (
                TableEntry {
                    channel: Channel::Pair(ResponseKind::Paramagnetic, ResponseKind::Electric),
                    geometry: Geometry::FreePair,
                    regime: TableRegime::Nonretarded,
                    expected_sign: Sign::Positive,
                    expected_power: -4,
                },
                5e-4,
            ),
            (
                TableEntry {
                    channel: Channel::Pair(ResponseKind::Diamagnetic, ResponseKind::Electric),
                    geometry: Geometry::FreePair,
                    regime: TableRegime::Nonretarded,
                    expected_sign: Sign::Negative,
                    expected_power: -5,
                },
                5e-4,
            ),
        ];
        for (entry, l) in cases {
            let cell = measure(&engine, &fx, &entry, l).unwrap();
            assert!(cell.pass, "{cell:?}");
        }
    }
}
