//! Casimir-Polder potentials at a perfect mirror and van der Waals
//! potentials between two atoms in free space.
//!
//! Every potential is split by response type. A mirror potential has three
//! channels (`e`, `p`, `d`); a pair potential has nine, `(a, b)` meaning
//! atom A responds through `a` and atom B through `b`. The paramagnetic and
//! diamagnetic parts enter the formulas only through the total
//! magnetisability, so the split is obtained by substituting `beta_p(i xi)`
//! or `beta_d` for it.
//!
//! Integrals are taken in dimensionless frequency: `u = 2 z xi / c` at the
//! mirror and `x = l xi / c` for pairs. Each pair channel reduces to
//!
//! ```text
//! U_ab(l) = hbar mu0^2 c P_A P_B / (16 pi^3 l^7) * I_ab
//! I_ab = -int s_A s_B h1(x) dx         (both electric or both magnetic)
//! I_ab = +int x^2 s_A s_B h2(x) dx     (one electric, one magnetic)
//! ```
//!
//! with `P = c^2 alpha(0)` or `beta(0)` and `s` the response normalised to
//! one at zero frequency.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::curve::{Geometry, Method, PotentialCurve};
use crate::error::{Error, Result};
use crate::green::{h1, h2, mirror_kernel, PlateKind};
use crate::quad::{integrate_semiinf, QuadratureError, QuadratureSpec};
use crate::response::{
    alpha_iso, beta_total, mean_square_dipole, weighted_oscillator_sum, AtomModel, ResponseProfile,
};
use crate::units::{Constants, UnitSystem};

/// Regime boundaries in units of the relevant `l omega / c`.
pub const NONRETARDED_DEPTH: f64 = 1e-3;
pub const RETARDED_DEPTH: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResponseKind {
    Electric,
    Paramagnetic,
    Diamagnetic,
}

impl ResponseKind {
    pub const ALL: [ResponseKind; 3] = [
        ResponseKind::Electric,
        ResponseKind::Paramagnetic,
        ResponseKind::Diamagnetic,
    ];

    pub fn symbol(self) -> char {
        match self {
            ResponseKind::Electric => 'e',
            ResponseKind::Paramagnetic => 'p',
            ResponseKind::Diamagnetic => 'd',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'e' => Some(ResponseKind::Electric),
            'p' => Some(ResponseKind::Paramagnetic),
            'd' => Some(ResponseKind::Diamagnetic),
            _ => None,
        }
    }

    pub fn is_magnetic(self) -> bool {
        self != ResponseKind::Electric
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    Mirror(ResponseKind),
    Pair(ResponseKind, ResponseKind),
}

impl Channel {
    pub fn mirror_channels() -> [Channel; 3] {
        ResponseKind::ALL.map(Channel::Mirror)
    }

    pub fn pair_channels() -> Vec<Channel> {
        ResponseKind::ALL
            .iter()
            .flat_map(|&a| ResponseKind::ALL.iter().map(move |&b| Channel::Pair(a, b)))
            .collect()
    }

    /// The channel seen after exchanging the two atoms.
    pub fn swapped(self) -> Channel {
        match self {
            Channel::Pair(a, b) => Channel::Pair(b, a),
            m => m,
        }
    }

    pub fn name(self) -> String {
        match self {
            Channel::Mirror(k) => k.symbol().to_string(),
            Channel::Pair(a, b) => format!("{}{}", a.symbol(), b.symbol()),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let kinds: Option<Vec<ResponseKind>> = s.chars().map(ResponseKind::from_symbol).collect();
        match kinds.as_deref() {
            Some([k]) => Ok(Channel::Mirror(*k)),
            Some([a, b]) => Ok(Channel::Pair(*a, *b)),
            _ => Err(format!(
                "unknown channel '{s}' (expected one of e,p,d or a pair such as ed)"
            )),
        }
    }
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Nonretarded,
    Retarded,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Nonretarded => f.write_str("nonretarded"),
            Regime::Retarded => f.write_str("retarded"),
        }
    }
}

/// Single-atom potential at a mirror, split by response.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MirrorPotential {
    pub electric: f64,
    pub paramagnetic: f64,
    pub diamagnetic: f64,
}

impl MirrorPotential {
    pub fn get(&self, kind: ResponseKind) -> f64 {
        match kind {
            ResponseKind::Electric => self.electric,
            ResponseKind::Paramagnetic => self.paramagnetic,
            ResponseKind::Diamagnetic => self.diamagnetic,
        }
    }

    /// `U_m = U_p + U_d`.
    pub fn magnetic(&self) -> f64 {
        self.paramagnetic + self.diamagnetic
    }

    pub fn total(&self) -> f64 {
        self.electric + self.magnetic()
    }
}

/// Two-atom potential, `values[a][b]` indexed by [`ResponseKind`] order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairPotential {
    pub values: [[f64; 3]; 3],
    pub total: f64,
}

impl PairPotential {
    pub fn get(&self, a: ResponseKind, b: ResponseKind) -> f64 {
        self.values[a as usize][b as usize]
    }
}

/// Sum of a 3x3 channel table that is bitwise invariant under transposition.
#[allow(clippy::needless_range_loop)]
fn symmetric_sum(values: &[[f64; 3]; 3]) -> f64 {
    let mut total = values[0][0] + values[1][1] + values[2][2];
    for a in 0..3 {
        for b in (a + 1)..3 {
            total += values[a][b] + values[b][a];
        }
    }
    total
}

/// Finite-difference force `F = -dU/dr` on a (possibly non-uniform) grid,
/// second order everywhere: three-point central differences inside, three-
/// point one-sided differences at the two ends.
pub fn force_on_grid(distances: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = distances.len();
    if n < 3 || values.len() != n {
        return Err(Error::domain(format!(
            "force needs at least 3 grid points with matching values, got {n} distances and {} values",
            values.len()
        )));
    }
    let deriv = |i0: usize, at: usize| {
        let (x0, x1, x2) = (distances[i0], distances[i0 + 1], distances[i0 + 2]);
        let (f0, f1, f2) = (values[i0], values[i0 + 1], values[i0 + 2]);
        let (h1, h2) = (x1 - x0, x2 - x1);
        match at {
            0 => {
                -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f0 + (h1 + h2) / (h1 * h2) * f1
                    - h1 / (h2 * (h1 + h2)) * f2
            }
            1 => {
                -h2 / (h1 * (h1 + h2)) * f0
                    + (h2 - h1) / (h1 * h2) * f1
                    + h1 / (h2 * (h1 + h2)) * f2
            }
            _ => {
                h2 / (h1 * (h1 + h2)) * f0 - (h1 + h2) / (h1 * h2) * f1
                    + (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * f2
            }
        }
    };
    let mut force = Vec::with_capacity(n);
    force.push(-deriv(0, 0));
    for i in 1..n - 1 {
        force.push(-deriv(i - 1, 1));
    }
    force.push(-deriv(n - 3, 2));
    Ok(force)
}

/// `F = -dU/dr` of the total potential of a curve.
pub fn force_from_curve(curve: &PotentialCurve) -> Result<Vec<f64>> {
    force_on_grid(&curve.distances, &curve.total)
}

fn check_distance(what: &str, d: f64) -> Result<()> {
    if d > 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be positive and finite, got {d} (zero separation is outside the dipole approximation)"
        )))
    }
}

/// Evaluation context: unit system, constants and quadrature settings.
#[derive(Debug, Clone)]
pub struct Engine {
    units: UnitSystem,
    consts: Constants,
    quad: QuadratureSpec,
}

impl Engine {
    pub fn new(units: UnitSystem) -> Self {
        Engine {
            units,
            consts: units.constants(),
            quad: QuadratureSpec::default(),
        }
    }

    pub fn with_quadrature(mut self, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        self.quad = spec;
        Ok(self)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        let spec = self.quad.clone().with_rel_tol(rel_tol);
        self.with_quadrature(spec)
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn constants(&self) -> &Constants {
        &self.consts
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// The response of `atom` through `kind`, factored for integration.
    pub fn profile(&self, atom: &AtomModel, kind: ResponseKind) -> ResponseProfile {
        match kind {
            ResponseKind::Electric => {
                ResponseProfile::lorentzian(atom.electric_transitions(), self.consts.hbar)
            }
            ResponseKind::Paramagnetic => {
                ResponseProfile::lorentzian(atom.magnetic_transitions(), self.consts.hbar)
            }
            ResponseKind::Diamagnetic => ResponseProfile::constant(atom.beta_d()),
        }
    }

    fn integrate<F: Fn(f64) -> f64>(
        &self,
        f: F,
        decay_scale: f64,
        breakpoints: Vec<f64>,
        channel: Channel,
        distance: f64,
    ) -> Result<f64> {
        let spec = QuadratureSpec {
            decay_scale,
            breakpoints,
            ..self.quad.clone()
        };
        integrate_semiinf(f, &spec)
            .map(|r| r.value)
            .map_err(|source| match source {
                QuadratureError::InvalidSpec(_) => Error::Quadrature(source),
                source => Error::Channel {
                    channel: channel.name(),
                    distance,
                    source,
                },
            })
    }

    /// One channel of the mirror potential, by quadrature.
    pub fn cp_mirror_channel(
        &self,
        atom: &AtomModel,
        kind: ResponseKind,
        z: f64,
        plate: PlateKind,
    ) -> Result<f64> {
        check_distance("atom-mirror distance", z)?;
        let profile = self.profile(atom, kind);
        if profile.is_zero() {
            return Ok(0.0);
        }
        let Constants { hbar, c, eps0, mu0 } = self.consts;
        let to_xi = c / (2.0 * z);
        let breaks = profile.pole_frequencies().map(|w| w / to_xi).collect();
        let integral = self.integrate(
            |u| profile.shape(u * to_xi) * mirror_kernel(u),
            1.0,
            breaks,
            Channel::Mirror(kind),
            z,
        )?;
        let sign = plate.sign();
        let denom = 32.0 * PI * PI * z.powi(4);
        // Tr G_ee = -Tr G_mm for the perfect mirror
        let pref = match kind {
            ResponseKind::Electric => -sign * hbar * c / (eps0 * denom),
            _ => sign * hbar * mu0 * c / denom,
        };
        Ok(pref * profile.static_value * integral)
    }

    /// Electric, paramagnetic and diamagnetic mirror potentials at distance `z`.
    pub fn cp_mirror(&self, atom: &AtomModel, z: f64, plate: PlateKind) -> Result<MirrorPotential> {
        Ok(MirrorPotential {
            electric: self.cp_mirror_channel(atom, ResponseKind::Electric, z, plate)?,
            paramagnetic: self.cp_mirror_channel(atom, ResponseKind::Paramagnetic, z, plate)?,
            diamagnetic: self.cp_mirror_channel(atom, ResponseKind::Diamagnetic, z, plate)?,
        })
    }

    /// `+-3 hbar mu0 c beta_d / (32 pi^2 z^4)`, upper sign conducting.
    pub fn cp_mirror_diamagnetic_closed(
        &self,
        beta_d: f64,
        z: f64,
        plate: PlateKind,
    ) -> Result<f64> {
        check_distance("atom-mirror distance", z)?;
        if !(beta_d <= 0.0) {
            return Err(Error::domain(format!("beta_d = {beta_d} must be <= 0")));
        }
        let Constants { hbar, c, mu0, .. } = self.consts;
        Ok(plate.sign() * 3.0 * hbar * mu0 * c * beta_d / (32.0 * PI * PI * z.powi(4)))
    }

    /// `P = c^2 alpha(0)` for the electric response, `beta(0)` otherwise.
    fn pair_weight(&self, kind: ResponseKind, profile: &ResponseProfile) -> f64 {
        if kind.is_magnetic() {
            profile.static_value
        } else {
            self.consts.c * self.consts.c * profile.static_value
        }
    }

    /// One channel of the free-space pair potential, by quadrature.
    pub fn vdw_channel(
        &self,
        atom_a: &AtomModel,
        atom_b: &AtomModel,
        kind_a: ResponseKind,
        kind_b: ResponseKind,
        l: f64,
    ) -> Result<f64> {
        check_distance("atom-atom separation", l)?;
        let pa = self.profile(atom_a, kind_a);
        let pb = self.profile(atom_b, kind_b);
        if pa.is_zero() || pb.is_zero() {
            return Ok(0.0);
        }
        let Constants { hbar, c, mu0, .. } = self.consts;
        let to_xi = c / l;
        let mut breaks: Vec<f64> = pa
            .pole_frequencies()
            .chain(pb.pole_frequencies())
            .map(|w| w / to_xi)
            .collect();
        breaks.sort_by(f64::total_cmp);
        let channel = Channel::Pair(kind_a, kind_b);
        let integral = if kind_a.is_magnetic() == kind_b.is_magnetic() {
            -self.integrate(
                |x| {
                    let xi = x * to_xi;
                    pa.shape(xi) * pb.shape(xi) * h1(x)
                },
                0.5,
                breaks,
                channel,
                l,
            )?
        } else {
            self.integrate(
                |x| {
                    let xi = x * to_xi;
                    x * x * (pa.shape(xi) * pb.shape(xi)) * h2(x)
                },
                0.5,
                breaks,
                channel,
                l,
            )?
        };
        let weights = self.pair_weight(kind_a, &pa) * self.pair_weight(kind_b, &pb);
        Ok(hbar * mu0 * mu0 * c * weights / (16.0 * PI.powi(3) * l.powi(7)) * integral)
    }

    /// All nine channels of the free-space pair potential and their sum.
    pub fn vdw_pair(
        &self,
        atom_a: &AtomModel,
        atom_b: &AtomModel,
        l: f64,
    ) -> Result<PairPotential> {
        let mut values = [[0.0; 3]; 3];
        for a in ResponseKind::ALL {
            for b in ResponseKind::ALL {
                values[a as usize][b as usize] = self.vdw_channel(atom_a, atom_b, a, b, l)?;
            }
        }
        Ok(PairPotential {
            values,
            total: symmetric_sum(&values),
        })
    }

    /// Total free-space potential evaluated directly with `alpha(i xi)` and
    /// the total magnetisability, without splitting into channels.
    pub fn vdw_free_total(&self, atom_a: &AtomModel, atom_b: &AtomModel, l: f64) -> Result<f64> {
        check_distance("atom-atom separation", l)?;
        let Constants { hbar, c, mu0, .. } = self.consts;
        let c2 = c * c;
        let to_xi = c / l;
        let alpha = |atom: &AtomModel, xi: f64| alpha_iso(atom, xi, hbar).unwrap_or(f64::NAN);
        let beta = |atom: &AtomModel, xi: f64| beta_total(atom, xi, hbar).unwrap_or(f64::NAN);
        let norm = |atom: &AtomModel| {
            c2 * alpha(atom, 0.0).abs() + beta(atom, 0.0).abs() + atom.beta_d().abs()
        };
        let (na, nb) = (norm(atom_a), norm(atom_b));
        let breaks: Vec<f64> = [atom_a, atom_b]
            .iter()
            .flat_map(|a| {
                a.electric_transitions()
                    .iter()
                    .chain(a.magnetic_transitions())
            })
            .map(|t| t.omega / to_xi)
            .collect();

        let same = self.integrate(
            |x| {
                let xi = x * to_xi;
                let ee = (c2 * alpha(atom_a, xi) / na) * (c2 * alpha(atom_b, xi) / nb);
                let mm = (beta(atom_a, xi) / na) * (beta(atom_b, xi) / nb);
                (ee + mm) * h1(x)
            },
            0.5,
            breaks.clone(),
            Channel::Pair(ResponseKind::Electric, ResponseKind::Electric),
            l,
        )?;
        let mixed = self.integrate(
            |x| {
                let xi = x * to_xi;
                let em = (c2 * alpha(atom_a, xi) / na) * (beta(atom_b, xi) / nb);
                let me = (beta(atom_a, xi) / na) * (c2 * alpha(atom_b, xi) / nb);
                x * x * (em + me) * h2(x)
            },
            0.5,
            breaks,
            Channel::Pair(ResponseKind::Electric, ResponseKind::Paramagnetic),
            l,
        )?;
        Ok(hbar * mu0 * mu0 * c * na * nb / (16.0 * PI.powi(3) * l.powi(7)) * (mixed - same))
    }

    /// Closed-form asymptote of a pair channel.
    ///
    /// Channels with a diamagnetic side are supported in both regimes (the
    /// `dd` form is exact at all separations). Electric and paramagnetic
    /// channels are supported in the retarded regime only, through their
    /// static responses.
    pub fn vdw_asymptote(
        &self,
        channel: Channel,
        atom_a: &AtomModel,
        atom_b: &AtomModel,
        l: f64,
        regime: Regime,
    ) -> Result<f64> {
        use ResponseKind::{Diamagnetic as D, Electric as E, Paramagnetic as P};

        check_distance("atom-atom separation", l)?;
        let (ka, kb) = match channel {
            Channel::Pair(a, b) => (a, b),
            Channel::Mirror(_) => {
                return Err(Error::Unsupported(format!(
                    "vdw_asymptote needs a pair channel, got mirror channel {channel}"
                )))
            }
        };
        // put the diamagnetic atom (if any) first
        if kb == D && ka != D {
            return self.vdw_asymptote(channel.swapped(), atom_b, atom_a, l, regime);
        }
        let Constants { hbar, c, mu0, .. } = self.consts;
        let pi3 = PI.powi(3);
        let static_of =
            |atom: &AtomModel, kind: ResponseKind| self.profile(atom, kind).static_value;

        match (ka, kb, regime) {
            (D, D, _) => Ok(
                -23.0 * hbar * mu0 * mu0 * c * atom_a.beta_d() * atom_b.beta_d()
                    / (64.0 * pi3 * l.powi(7)),
            ),
            (D, E, Regime::Nonretarded) => {
                let s = weighted_oscillator_sum(atom_b.electric_transitions());
                Ok(-5.0 * mu0 * mu0 * c * atom_a.beta_d().abs() * s / (96.0 * pi3 * l.powi(5)))
            }
            (D, P, Regime::Nonretarded) => {
                let m2 = mean_square_dipole(atom_b.magnetic_transitions());
                Ok(mu0 * mu0 * atom_a.beta_d().abs() * m2 / (16.0 * PI * PI * l.powi(6)))
            }
            (_, _, Regime::Retarded) => {
                let pa = static_of(atom_a, ka);
                let pb = static_of(atom_b, kb);
                match (ka.is_magnetic(), kb.is_magnetic()) {
                    (false, false) => {
                        Ok(-23.0 * hbar * mu0 * mu0 * c.powi(5) * pa * pb
                            / (64.0 * pi3 * l.powi(7)))
                    }
                    (true, true) => {
                        Ok(-23.0 * hbar * mu0 * mu0 * c * pa * pb / (64.0 * pi3 * l.powi(7)))
                    }
                    _ => {
                        Ok(7.0 * hbar * mu0 * mu0 * c.powi(3) * pa * pb / (64.0 * pi3 * l.powi(7)))
                    }
                }
            }
            (_, _, Regime::Nonretarded) => Err(Error::Unsupported(format!(
                "no closed nonretarded form for channel {channel}"
            ))),
        }
    }

    /// Mirror potential over a distance grid, all channels, by quadrature.
    pub fn mirror_curve(
        &self,
        atom: &AtomModel,
        plate: PlateKind,
        distances: &[f64],
    ) -> Result<PotentialCurve> {
        let rows: Vec<MirrorPotential> = distances
            .par_iter()
            .map(|&z| self.cp_mirror(atom, z, plate))
            .collect::<Result<_>>()?;
        let mut curve = PotentialCurve::new(
            Geometry::Mirror(plate),
            distances.to_vec(),
            Method::Quadrature,
            self.units,
            self.quad.clone(),
            vec![atom.label.clone()],
        )?;
        for kind in ResponseKind::ALL {
            curve.insert(
                Channel::Mirror(kind),
                rows.iter().map(|r| r.get(kind)).collect(),
            )?;
        }
        curve.set_total(rows.iter().map(MirrorPotential::total).collect())?;
        Ok(curve)
    }

    /// Closed-form mirror curve of a purely diamagnetic atom.
    pub fn mirror_curve_closed_form(
        &self,
        atom: &AtomModel,
        plate: PlateKind,
        distances: &[f64],
    ) -> Result<PotentialCurve> {
        if !self.profile(atom, ResponseKind::Electric).is_zero()
            || !self.profile(atom, ResponseKind::Paramagnetic).is_zero()
        {
            return Err(Error::Unsupported(format!(
                "atom '{}' has electric or paramagnetic transitions; no closed mirror form",
                atom.label
            )));
        }
        let values = distances
            .iter()
            .map(|&z| self.cp_mirror_diamagnetic_closed(atom.beta_d(), z, plate))
            .collect::<Result<Vec<_>>>()?;
        let mut curve = PotentialCurve::new(
            Geometry::Mirror(plate),
            distances.to_vec(),
            Method::ClosedForm,
            self.units,
            self.quad.clone(),
            vec![atom.label.clone()],
        )?;
        let zeros = vec![0.0; distances.len()];
        curve.insert(Channel::Mirror(ResponseKind::Electric), zeros.clone())?;
        curve.insert(Channel::Mirror(ResponseKind::Paramagnetic), zeros)?;
        curve.insert(Channel::Mirror(ResponseKind::Diamagnetic), values.clone())?;
        curve.set_total(values)?;
        Ok(curve)
    }

    /// Pair potential over a distance grid, all nine channels, by quadrature.
    pub fn pair_curve(
        &self,
        atom_a: &AtomModel,
        atom_b: &AtomModel,
        distances: &[f64],
    ) -> Result<PotentialCurve> {
        let rows: Vec<PairPotential> = distances
            .par_iter()
            .map(|&l| self.vdw_pair(atom_a, atom_b, l))
            .collect::<Result<_>>()?;
        let mut curve = PotentialCurve::new(
            Geometry::FreePair,
            distances.to_vec(),
            Method::Quadrature,
            self.units,
            self.quad.clone(),
            vec![atom_a.label.clone(), atom_b.label.clone()],
        )?;
        for a in ResponseKind::ALL {
            for b in ResponseKind::ALL {
                curve.insert(
                    Channel::Pair(a, b),
                    rows.iter().map(|r| r.get(a, b)).collect(),
                )?;
            }
        }
        curve.set_total(rows.iter().map(|r| r.total).collect())?;
        Ok(curve)
    }

    /// The characteristic depths `(l omega_min / c, l omega_max / c)` over
    /// the transitions of the given atoms, or `None` if they have none.
    pub fn retardation_depth(&self, atoms: &[&AtomModel], distance: f64) -> Option<(f64, f64)> {
        let omegas = atoms
            .iter()
            .flat_map(|a| {
                a.electric_transitions()
                    .iter()
                    .chain(a.magnetic_transitions())
            })
            .map(|t| t.omega);
        let (lo, hi) = omegas.fold((f64::INFINITY, 0.0f64), |(lo, hi), w| {
            (lo.min(w), hi.max(w))
        });
        if hi == 0.0 {
            return None;
        }
        let k = distance / self.consts.c;
        Some((lo * k, hi * k))
    }

    /// Whether `distance` lies deep inside `regime` for the given atoms'
    /// transitions. Atoms without transitions are in every regime.
    pub fn in_deep_regime(&self, atoms: &[&AtomModel], distance: f64, regime: Regime) -> bool {
        match (self.retardation_depth(atoms, distance), regime) {
            (None, _) => true,
            (Some((_, hi)), Regime::Nonretarded) => hi <= NONRETARDED_DEPTH,
            (Some((lo, _)), Regime::Retarded) => lo >= RETARDED_DEPTH,
        }
    }
}
