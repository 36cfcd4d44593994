//! Scalar kernels of the dyadic Green tensor at imaginary frequency.
//!
//! Only traces are exposed: isotropic atoms never need more. The free-space
//! kernels depend on the separation `l` alone, so they are symmetric under
//! exchange of the two points. The mirror kernels are built from the
//! scattering part of the Green tensor only; the bulk part diverges at
//! coincident points and has no entry point here.
//!
//! [`dyadic`] holds explicit 3x3 tensors used to check the closed traces.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate_semiinf, QuadratureSpec};

pub mod dyadic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlateKind {
    /// epsilon -> infinity.
    PerfectlyConducting,
    /// mu -> infinity.
    InfinitelyPermeable,
}

impl PlateKind {
    /// Sign of the scattering Green tensor: +1 conducting, -1 permeable.
    pub fn sign(self) -> f64 {
        match self {
            PlateKind::PerfectlyConducting => 1.0,
            PlateKind::InfinitelyPermeable => -1.0,
        }
    }
}

impl fmt::Display for PlateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlateKind::PerfectlyConducting => f.write_str("conducting"),
            PlateKind::InfinitelyPermeable => f.write_str("permeable"),
        }
    }
}

impl FromStr for PlateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "conducting" | "perfectly_conducting" => Ok(PlateKind::PerfectlyConducting),
            "permeable" | "infinitely_permeable" => Ok(PlateKind::InfinitelyPermeable),
            other => Err(format!(
                "unknown plate '{other}' (expected conducting|permeable)"
            )),
        }
    }
}

/// Coefficients of the free-space Green tensor,
/// `G0 ~ [f(x) I - g(x) e_l e_l] e^{-x}` with `x = l xi / c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeGreenScalars {
    pub coeff_iso: f64,
    pub coeff_rad: f64,
    pub x: f64,
}

impl FreeGreenScalars {
    pub fn at(x: f64) -> Self {
        let (f, g) = fg(x);
        FreeGreenScalars {
            coeff_iso: f,
            coeff_rad: g,
            x,
        }
    }
}

/// `f(x) = 1 + x + x^2`, `g(x) = 3 + 3x + x^2`.
pub fn fg(x: f64) -> (f64, f64) {
    (1.0 + x + x * x, 3.0 + 3.0 * x + x * x)
}

/// `(3 + 6x + 5x^2 + 2x^3 + x^4) e^{-2x}`.
pub fn h1(x: f64) -> f64 {
    (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x)))) * (-2.0 * x).exp()
}

/// `(1 + x)^2 e^{-2x}`.
pub fn h2(x: f64) -> f64 {
    let s = 1.0 + x;
    s * s * (-2.0 * x).exp()
}

/// Mirror kernel in `u = 2 z xi / c`: `e^{-u} (1 + u + u^2/2)`.
pub fn mirror_kernel(u: f64) -> f64 {
    (1.0 + u * (1.0 + 0.5 * u)) * (-u).exp()
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
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

/// `Tr[G_mm0(r_A, r_B) . G_mm0(r_B, r_A)] = 2 h1(x) / (16 pi^2 l^6)`.
///
/// The same kernel serves the electric-electric channel since
/// `G_ee0 = G_mm0` in free space.
pub fn trace_gmm_gmm_free(l: f64, xi: f64, c: f64) -> Result<f64> {
    check_positive("separation", l)?;
    check_xi(xi)?;
    let x = l * xi / c;
    Ok(2.0 * h1(x) / (16.0 * PI * PI * l.powi(6)))
}

/// `Tr[G_em0(r_A, r_B) . G_me0(r_B, r_A)] = -xi^2 h2(x) / (8 pi^2 c^2 l^4)`.
pub fn trace_gme_gem_free(l: f64, xi: f64, c: f64) -> Result<f64> {
    check_positive("separation", l)?;
    check_xi(xi)?;
    let x = l * xi / c;
    Ok(-xi * xi * h2(x) / (8.0 * PI * PI * c * c * l.powi(4)))
}

/// `Tr G_mm1(z, z, i xi) = +-(1 / 8 pi z^3) e^{-u} (1 + u + u^2/2)`,
/// `u = 2 z xi / c`, upper sign for a conducting plate.
pub fn mirror_gmm_trace(z: f64, xi: f64, plate: PlateKind, c: f64) -> Result<f64> {
    check_positive("atom-mirror distance", z)?;
    check_xi(xi)?;
    let u = 2.0 * z * xi / c;
    Ok(plate.sign() * mirror_kernel(u) / (8.0 * PI * z.powi(3)))
}

/// `Tr G_ee1(z, z, i xi) = -Tr G_mm1(z, z, i xi)` for a perfect mirror.
pub fn mirror_gee_trace(z: f64, xi: f64, plate: PlateKind, c: f64) -> Result<f64> {
    Ok(-mirror_gmm_trace(z, xi, plate, c)?)
}

/// Same trace as [`mirror_gmm_trace`], obtained by applying the double curl
/// to the plane-wave expansion of the mirror Green tensor and integrating
/// over the in-plane wave vector numerically.
///
/// The azimuthal integral is done analytically (the trace is isotropic in
/// the plane), leaving one integral over `s = q z`.
pub fn mirror_gmm_trace_via_q_integral(
    z: f64,
    xi: f64,
    plate: PlateKind,
    c: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_positive("atom-mirror distance", z)?;
    check_positive("imaginary frequency", xi)?;
    let kappa_z = z * xi / c;
    // e^{-2 b z} with b z >= s
    let spec = spec
        .clone()
        .with_decay_scale(0.5)
        .with_breakpoints([kappa_z]);
    // (1 / 8 pi^2) * 2 pi from the azimuth, z^-3 from s = q z
    let scale = plate.sign() / (4.0 * PI * z.powi(3));
    let integrand = |s: f64| {
        let q = s / z;
        let bz = (s * s + kappa_z * kappa_z).sqrt();
        let trace = dyadic::mirror_plane_wave_gmm_trace(q, 0.0, xi, c).re * z * z;
        s * trace * (-2.0 * bz).exp() / bz
    };
    let r = integrate_semiinf(integrand, &spec)?;
    Ok(scale * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fg_values() {
        assert_eq!(fg(0.0), (1.0, 3.0));
        assert_eq!(fg(1.0), (3.0, 7.0));
        assert_eq!(fg(2.0), (7.0, 13.0));
        let s = FreeGreenScalars::at(0.0);
        assert_eq!((s.coeff_iso, s.coeff_rad), (1.0, 3.0));
    }

    #[test]
    fn h1_expansion() {
        for x in [0.0, 1.0, 2.5] {
            let (f, g) = fg(x);
            let lhs = 0.5 * (3.0 * f * f - 2.0 * f * g + g * g);
            let rhs = 3.0 + 6.0 * x + 5.0 * x * x + 2.0 * x.powi(3) + x.powi(4);
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
        assert_eq!(h1(0.0), 3.0);
    }

    #[test]
    fn static_traces() {
        let t = trace_gmm_gmm_free(1.0, 0.0, 1.0).unwrap();
        assert!((t - 3.0 / (8.0 * PI * PI)).abs() < 1e-16);
        assert_eq!(trace_gme_gem_free(1.0, 0.0, 1.0).unwrap(), 0.0);
        assert!((h2(1.0) - 4.0 * (-2.0f64).exp()).abs() < 1e-16);
        assert!(trace_gmm_gmm_free(0.0, 1.0, 1.0).is_err());
        assert!(trace_gme_gem_free(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn mirror_trace_signs() {
        let t = mirror_gmm_trace(1.0, 0.0, PlateKind::PerfectlyConducting, 1.0).unwrap();
        assert!((t - 1.0 / (8.0 * PI)).abs() < 1e-16);
        for (z, xi) in [(0.3, 0.0), (1.0, 2.0), (5.0, 0.01)] {
            let cond = mirror_gmm_trace(z, xi, PlateKind::PerfectlyConducting, 1.0).unwrap();
            let perm = mirror_gmm_trace(z, xi, PlateKind::InfinitelyPermeable, 1.0).unwrap();
            assert_eq!(cond, -perm);
            let gee = mirror_gee_trace(z, xi, PlateKind::PerfectlyConducting, 1.0).unwrap();
            assert!(gee < 0.0);
            assert_eq!(gee + cond, 0.0);
        }
        let far = mirror_gee_trace(1.0, 1e3, PlateKind::PerfectlyConducting, 1.0).unwrap();
        assert_eq!(far, 0.0);
        assert!(mirror_gmm_trace(0.0, 1.0, PlateKind::PerfectlyConducting, 1.0).is_err());
    }

    #[test]
    fn q_integral_matches_closed_kernel() {
        let spec = QuadratureSpec::default().with_rel_tol(1e-11);
        for plate in [
            PlateKind::PerfectlyConducting,
            PlateKind::InfinitelyPermeable,
        ] {
            let closed = mirror_gmm_trace(1.0, 0.7, plate, 1.0).unwrap();
            let oracle = mirror_gmm_trace_via_q_integral(1.0, 0.7, plate, 1.0, &spec).unwrap();
            assert!((oracle / closed - 1.0).abs() < 1e-8, "{oracle} vs {closed}");
        }
    }

    #[test]
    fn parse_plate() {
        assert_eq!(
            "conducting".parse::<PlateKind>().unwrap(),
            PlateKind::PerfectlyConducting
        );
        assert_eq!(
            "permeable".parse::<PlateKind>().unwrap(),
            PlateKind::InfinitelyPermeable
        );
        assert!("glass".parse::<PlateKind>().is_err());
    }
}
