//! Stationary quasibound states and scattering resonances.
//!
//! Three model continua are covered: a particle in a uniform field bound by a
//! delta well, s-waves in a spherical well enclosed by a finite barrier shell,
//! and a one-dimensional well between twin rectangular barriers. Stationary
//! quasibound energies are real roots of implicit equations built from
//! selection-rule Green's functions; resonances are complex poles of the
//! matching determinant.
//!
//! Units: ħ = 1 throughout, with the particle mass carried explicitly by
//! [`PhysicalUnits`]. The default is 2m = 1.

// `!(x > 0.0)` is used on purpose so NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod greens;
pub mod models;
pub mod regression;
pub mod resonance;
pub mod solver;
pub mod specfun;
pub mod timeline;
pub mod wave;

pub use error::{Error, Result};
pub use models::{EnergyRoot, ModelSpec, Parity, PhysicalUnits};
pub use resonance::ComplexPole;
pub use wave::Waveform;
