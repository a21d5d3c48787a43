//! Weighted norms, energies, Lie derivatives, null-component profiles and decay fits.

pub mod energy;
pub mod fit;
pub mod lie;
pub mod norms;
pub mod profiles;
pub mod series;

pub use energy::{energy_en, energy_terms, knorm_integral, knorm_integral_via_interior_products, EnergyReport};
pub use fit::{decay_fit, DecayFit, NullComponent, Tracking};
pub use lie::lie_derivative_field;
pub use norms::{weighted_c_norm, weighted_sobolev_norm};
pub use profiles::{null_profiles, ShellLayout, ShellProfile};
pub use series::{observe, DiagnosticRecord, DiagnosticSeries, ObserveOptions};
