//! Finite-difference evolution of Maxwell-Born-Infeld fields on a periodic grid,
//! snapshot I/O, trajectory residuals and weighted-norm diagnostics.
//!
//! Parallel loops run on the ambient rayon pool. Every reduction is index-ordered,
//! so results do not depend on the number of worker threads.

pub mod diagnostics;
pub mod error;
pub mod faraday;
pub mod grid;
pub mod initial;
mod par;
pub mod reduce;
pub mod residual;
pub mod snapshot;
pub mod solver;
pub mod stencil;

pub use error::{FieldError, Result};
pub use faraday::{SpacetimeSlice, TwoFormField};
pub use grid::{Grid, ScalarField, VectorField};
pub use initial::{make_initial_data, InitialData};
pub use residual::{residual_mbi, Residual};
pub use snapshot::{read_snapshot, write_snapshot, SnapshotMeta};
pub use solver::{rhs, step_rk4, Evolution, FieldState, Mode, SolverConfig};
pub use stencil::{curl_h, div_h, Stencil, StencilOrder};
