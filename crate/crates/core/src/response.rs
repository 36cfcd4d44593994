//! Isotropic atomic response functions on the imaginary frequency axis.
//!
//! On `omega = i xi` the electric polarisability and the paramagnetisability
//! are sums of Lorentzians,
//!
//! ```text
//! alpha(i xi) = 2/(3 hbar) sum_k omega_k |mu_0k|^2 / (omega_k^2 + xi^2)
//! ```
//!
//! and need no pole regularisation. The diamagnetisability is a static,
//! non-positive number.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Electric,
    Magnetic,
}

/// One excited state reachable by a dipole transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transition {
    /// Transition angular frequency, rad/s.
    pub omega: f64,
    /// Squared dipole matrix element: `|mu_0k|^2` (C^2 m^2) or `|m_0k|^2` (J^2/T^2).
    pub dipole_sq: f64,
    pub kind: TransitionKind,
}

impl Transition {
    pub fn new(kind: TransitionKind, omega: f64, dipole_sq: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!(
                "transition frequency must be positive and finite, got {omega}"
            )));
        }
        if !(dipole_sq >= 0.0 && dipole_sq.is_finite()) {
            return Err(Error::domain(format!(
                "squared dipole moment must be non-negative and finite, got {dipole_sq}"
            )));
        }
        Ok(Transition {
            omega,
            dipole_sq,
            kind,
        })
    }

    pub fn electric(omega: f64, mu_sq: f64) -> Result<Self> {
        Self::new(TransitionKind::Electric, omega, mu_sq)
    }

    pub fn magnetic(omega: f64, m_sq: f64) -> Result<Self> {
        Self::new(TransitionKind::Magnetic, omega, m_sq)
    }
}

/// A charged constituent contributing to the diamagnetisability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Particle {
    /// Charge, C.
    pub charge: f64,
    /// Mass, kg.
    pub mass: f64,
    /// Ground-state mean square distance from the centre of mass, m^2.
    pub mean_sq_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiamagneticSpec {
    Direct(f64),
    Particles(Vec<Particle>),
}

impl Default for DiamagneticSpec {
    fn default() -> Self {
        DiamagneticSpec::Particles(Vec::new())
    }
}

/// `beta_d = -sum q^2 <r^2> / (6 m)`, or the directly given value.
pub fn diamagnetisability(spec: &DiamagneticSpec) -> Result<f64> {
    match spec {
        DiamagneticSpec::Direct(beta) => {
            if !beta.is_finite() {
                return Err(Error::domain(format!("beta_d must be finite, got {beta}")));
            }
            if *beta > 0.0 {
                return Err(Error::domain(format!(
                    "beta_d = {beta:e} is positive; a diamagnetisability is never positive"
                )));
            }
            Ok(*beta)
        }
        DiamagneticSpec::Particles(particles) => {
            let mut beta = 0.0;
            for p in particles {
                if !(p.mass > 0.0 && p.mass.is_finite()) {
                    return Err(Error::domain(format!(
                        "particle mass must be positive, got {}",
                        p.mass
                    )));
                }
                if !(p.mean_sq_radius >= 0.0 && p.mean_sq_radius.is_finite()) {
                    return Err(Error::domain(format!(
                        "mean square radius must be non-negative, got {}",
                        p.mean_sq_radius
                    )));
                }
                if !p.charge.is_finite() {
                    return Err(Error::domain(format!(
                        "particle charge {} is not finite",
                        p.charge
                    )));
                }
                beta -= p.charge * p.charge * p.mean_sq_radius / (6.0 * p.mass);
            }
            Ok(beta)
        }
    }
}

/// An isotropic atom.
///
/// Construct through [`AtomModel::new`] (or the fixture helpers) so the
/// diamagnetisability is validated once and cached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomModel {
    pub label: String,
    electric: Vec<Transition>,
    magnetic: Vec<Transition>,
    diamagnetic: DiamagneticSpec,
    beta_d: f64,
}

impl AtomModel {
    pub fn new(
        label: impl Into<String>,
        electric: Vec<Transition>,
        magnetic: Vec<Transition>,
        diamagnetic: DiamagneticSpec,
    ) -> Result<Self> {
        let label = label.into();
        if let Some(t) = electric.iter().find(|t| t.kind != TransitionKind::Electric) {
            return Err(Error::Config(format!(
                "atom '{label}': magnetic transition at omega = {} listed as electric",
                t.omega
            )));
        }
        if let Some(t) = magnetic.iter().find(|t| t.kind != TransitionKind::Magnetic) {
            return Err(Error::Config(format!(
                "atom '{label}': electric transition at omega = {} listed as magnetic",
                t.omega
            )));
        }
        let beta_d = diamagnetisability(&diamagnetic)?;
        let is_empty = |ts: &[Transition]| ts.iter().all(|t| t.dipole_sq == 0.0);
        if is_empty(&electric) && is_empty(&magnetic) && beta_d == 0.0 {
            return Err(Error::Config(format!(
                "atom '{label}' has no response at all"
            )));
        }
        Ok(AtomModel {
            label,
            electric,
            magnetic,
            diamagnetic,
            beta_d,
        })
    }

    /// Single electric transition.
    pub fn electric(label: impl Into<String>, omega: f64, mu_sq: f64) -> Result<Self> {
        Self::new(
            label,
            vec![Transition::electric(omega, mu_sq)?],
            Vec::new(),
            DiamagneticSpec::default(),
        )
    }

    /// Single magnetic dipole transition.
    pub fn paramagnetic(label: impl Into<String>, omega: f64, m_sq: f64) -> Result<Self> {
        Self::new(
            label,
            Vec::new(),
            vec![Transition::magnetic(omega, m_sq)?],
            DiamagneticSpec::default(),
        )
    }

    /// Purely diamagnetic atom with the given `beta_d`.
    pub fn diamagnetic(label: impl Into<String>, beta_d: f64) -> Result<Self> {
        Self::new(
            label,
            Vec::new(),
            Vec::new(),
            DiamagneticSpec::Direct(beta_d),
        )
    }

    pub fn electric_transitions(&self) -> &[Transition] {
        &self.electric
    }

    pub fn magnetic_transitions(&self) -> &[Transition] {
        &self.magnetic
    }

    pub fn diamagnetic_spec(&self) -> &DiamagneticSpec {
        &self.diamagnetic
    }

    pub fn beta_d(&self) -> f64 {
        self.beta_d
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if xi >= 0.0 && xi.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "imaginary frequency must be >= 0, got {xi}"
        )))
    }
}

fn lorentzian_sum(transitions: &[Transition], hbar: f64, xi: f64) -> f64 {
    let sum: f64 = transitions
        .iter()
        .map(|t| t.omega * t.dipole_sq / (t.omega * t.omega + xi * xi))
        .sum();
    2.0 * sum / (3.0 * hbar)
}

/// Electric polarisability `alpha(i xi)`.
pub fn alpha_iso(atom: &AtomModel, xi: f64, hbar: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(lorentzian_sum(&atom.electric, hbar, xi))
}

/// Paramagnetisability `beta_p(i xi)`.
pub fn beta_para_iso(atom: &AtomModel, xi: f64, hbar: f64) -> Result<f64> {
    check_xi(xi)?;
    Ok(lorentzian_sum(&atom.magnetic, hbar, xi))
}

/// Total magnetisability `beta_p(i xi) + beta_d`.
pub fn beta_total(atom: &AtomModel, xi: f64, hbar: f64) -> Result<f64> {
    Ok(beta_para_iso(atom, xi, hbar)? + atom.beta_d)
}

/// `sum_k omega_k |d_k|^2` over the transitions of one kind.
pub fn weighted_oscillator_sum(transitions: &[Transition]) -> f64 {
    transitions.iter().map(|t| t.omega * t.dipole_sq).sum()
}

/// `sum_k |d_k|^2`, i.e. the ground-state mean square dipole moment.
pub fn mean_square_dipole(transitions: &[Transition]) -> f64 {
    transitions.iter().map(|t| t.dipole_sq).sum()
}

/// A response factored as `static_value * shape(xi)` with `shape(0) = 1`.
///
/// The potentials integrate the O(1) shape and multiply the static value
/// back in, which keeps SI-sized responses (~1e-40) away from the
/// quadrature's absolute floor.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseProfile {
    pub static_value: f64,
    /// `(omega_k, weight_k)` with weights summing to one; empty for a
    /// frequency-independent response.
    poles: Vec<(f64, f64)>,
}

impl ResponseProfile {
    pub fn constant(value: f64) -> Self {
        ResponseProfile {
            static_value: value,
            poles: Vec::new(),
        }
    }

    pub fn lorentzian(transitions: &[Transition], hbar: f64) -> Self {
        let strengths: Vec<(f64, f64)> = transitions
            .iter()
            .filter(|t| t.dipole_sq > 0.0)
            .map(|t| (t.omega, t.dipole_sq / t.omega))
            .collect();
        let total: f64 = strengths.iter().map(|&(_, s)| s).sum();
        if total == 0.0 {
            return ResponseProfile::constant(0.0);
        }
        ResponseProfile {
            static_value: 2.0 * total / (3.0 * hbar),
            poles: strengths.into_iter().map(|(w, s)| (w, s / total)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.static_value == 0.0
    }

    pub fn shape(&self, xi: f64) -> f64 {
        if self.poles.is_empty() {
            return 1.0;
        }
        self.poles
            .iter()
            .map(|&(w, weight)| weight * w * w / (w * w + xi * xi))
            .sum()
    }

    pub fn value(&self, xi: f64) -> f64 {
        self.static_value * self.shape(xi)
    }

    pub fn pole_frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.poles.iter().map(|&(w, _)| w)
    }
}
