//! Physical constants and the two supported unit systems.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// Planck constant, J s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Vacuum permittivity, F/m (CODATA 2018).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Bohr radius, m (CODATA 2018).
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    #[default]
    #[serde(rename = "si")]
    SI,
    /// hbar = c = eps0 = mu0 = 1.
    Natural,
}

impl UnitSystem {
    pub fn constants(self) -> Constants {
        constants_for(self)
    }
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitSystem::SI => f.write_str("si"),
            UnitSystem::Natural => f.write_str("natural"),
        }
    }
}

impl FromStr for UnitSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "si" => Ok(UnitSystem::SI),
            "natural" => Ok(UnitSystem::Natural),
            other => Err(format!(
                "unknown unit system '{other}' (expected si|natural)"
            )),
        }
    }
}

/// The four constants the potentials depend on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub hbar: f64,
    pub c: f64,
    pub eps0: f64,
    pub mu0: f64,
}

impl Constants {
    /// `mu0 * eps0 * c^2`, which is 1 in any consistent system.
    pub fn maxwell_identity(&self) -> f64 {
        self.mu0 * self.eps0 * self.c * self.c
    }
}

/// Returns the constants of `system`.
///
/// In SI, `mu0` is derived as `1 / (eps0 c^2)` so that the Maxwell identity
/// holds to rounding.
pub fn constants_for(system: UnitSystem) -> Constants {
    match system {
        UnitSystem::SI => Constants {
            hbar: HBAR,
            c: SPEED_OF_LIGHT,
            eps0: VACUUM_PERMITTIVITY,
            mu0: 1.0 / (VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * SPEED_OF_LIGHT),
        },
        UnitSystem::Natural => Constants {
            hbar: 1.0,
            c: 1.0,
            eps0: 1.0,
            mu0: 1.0,
        },
    }
}
