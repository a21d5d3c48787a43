//! Pointwise algebra for the Maxwell-Born-Infeld system on Minkowski space.
//!
//! * [`minkowski`]: two-forms, Hodge duality, invariants, the electric/magnetic
//!   split, null frames and null components, null forms.
//! * [`constitutive`]: `ell`, the Lagrangian, the Maxwell tensor, the maps
//!   between `(E, B)`, `(D, H)` and `(B, D)`, the tensors `h`, `H` and `H_tri`,
//!   and the reciprocal Born-Infeld metric.
//! * [`stress`]: energy-momentum tensors, the canonical stress, the Morawetz
//!   current and weighted norm, the local-existence multiplier, the Sylvester
//!   positivity matrix, and the conformal Killing generators with their Lie
//!   derivatives.
//! * [`sampling`] and [`verify`]: seeded random inputs and the randomized
//!   identity suite driven by the command-line runner.

pub mod constitutive;
pub mod error;
mod extended;
pub mod minkowski;
pub mod sampling;
pub mod stress;
pub mod verify;

pub use error::{MbiError, Result};
