//! Body-assisted dispersion potentials for atoms with electric, paramagnetic
//! and diamagnetic responses.
//!
//! The engine evaluates single-atom Casimir-Polder potentials in front of a
//! perfectly reflecting mirror and two-atom van der Waals potentials in free
//! space. Every potential is an integral over the positive imaginary
//! frequency axis; [`quad`] does that integration, [`green`] supplies the
//! field kernels and [`response`] the atomic response functions. Where a
//! closed form exists ([`potentials::Engine::cp_mirror_diamagnetic_closed`],
//! [`potentials::Engine::vdw_asymptote`]) it is provided alongside the
//! quadrature route so the two can be checked against each other.
//!
//! ```
//! use dispersion_core::potentials::Engine;
//! use dispersion_core::response::AtomModel;
//! use dispersion_core::units::UnitSystem;
//!
//! let engine = Engine::new(UnitSystem::Natural);
//! let a = AtomModel::diamagnetic("A", -1.0).unwrap();
//! let b = AtomModel::diamagnetic("B", -1.0).unwrap();
//! let u = engine.vdw_pair(&a, &b, 1.0).unwrap();
//! let expected = -23.0 / (64.0 * std::f64::consts::PI.powi(3));
//! assert!((u.total - expected).abs() < 1e-12);
//! ```

// Range checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod atom_file;
pub mod cli;
pub mod curve;
pub mod error;
pub mod green;
pub mod output;
pub mod potentials;
pub mod quad;
pub mod response;
pub mod selftest;
pub mod units;

pub use error::{Error, Result};
