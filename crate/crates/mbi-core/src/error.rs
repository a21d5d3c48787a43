//! Error type shared by the pointwise algebra and the grid layers.

use thiserror::Error;

/// Failures raised by the Maxwell-Born-Infeld toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MbiError {
    /// The state left the admissible region where `1 + I1 - I2^2` stays
    /// above the degeneracy threshold, or produced non-finite values.
    #[error("degenerate state: ell^2 = {ell_sq:.3e}{}", fmt_node(*node))]
    DegenerateState {
        /// The offending value of `1 + I1 - I2^2` (NaN when non-finite input was seen).
        ell_sq: f64,
        /// Grid node `(x, y, z)` when the failure happened on a grid.
        node: Option<[usize; 3]>,
    },

    /// The null frame is undefined this close to the spatial origin.
    #[error("null frame undefined at r = {r:.3e} (minimum {r_min:.3e})")]
    FrameSingularity { r: f64, r_min: f64 },

    /// A vector handed to the dominant energy check is not future-directed causal.
    #[error("vector {vector:?} is not future-directed causal (g(X,X) = {norm_sq:.3e})")]
    NotCausal { vector: [f64; 4], norm_sq: f64 },

    /// A time-dependent operation was asked for without enough stored snapshots.
    #[error("insufficient history: need {needed} snapshots, have {available}")]
    InsufficientHistory { needed: usize, available: usize },

    /// A fit was asked for with too few samples.
    #[error("insufficient data: need {needed} samples, have {available}")]
    InsufficientData { needed: usize, available: usize },
}

fn fmt_node(node: Option<[usize; 3]>) -> String {
    match node {
        Some([x, y, z]) => format!(" at node ({x}, {y}, {z})"),
        None => String::new(),
    }
}

/// Convenience alias used throughout the workspace.
pub type Result<T> = std::result::Result<T, MbiError>;
