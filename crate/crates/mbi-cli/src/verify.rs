//! The pointwise algebra suite as a machine-readable report.

use mbi_core::minkowski::{hodge_dual, TwoForm};
use mbi_core::verify::{run_algebra_suite_with, AlgebraOps, AlgebraReport, DEFAULT_TOLERANCE};
use serde::Serialize;

/// Deliberate defects used to check that the suite detects them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Flips the sign of the Hodge dual.
    DualSign,
}

fn flipped_dual(f: &TwoForm) -> TwoForm {
    -hodge_dual(f)
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyJson {
    pub id: &'static str,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraJson {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub failures: Vec<&'static str>,
    pub properties: Vec<PropertyJson>,
}

impl From<&AlgebraReport> for AlgebraJson {
    fn from(r: &AlgebraReport) -> Self {
        Self {
            samples: r.samples,
            seed: r.seed,
            passed: r.all_passed(),
            failures: r.failures(),
            properties: r
                .outcomes
                .iter()
                .map(|o| PropertyJson {
                    id: o.id,
                    passed: o.passed,
                    // JSON has no infinities; saturate.
                    max_error: if o.max_error.is_finite() { o.max_error } else { f64::MAX },
                    tolerance: o.tolerance,
                    seconds: o.seconds,
                })
                .collect(),
        }
    }
}

/// Runs every pointwise property on `samples` seeded draws.
pub fn verify_algebra(samples: usize, seed: u64, tolerance: Option<f64>, mutation: Option<Mutation>) -> AlgebraReport {
    let ops = match mutation {
        None => AlgebraOps::default(),
        Some(Mutation::DualSign) => AlgebraOps { hodge_dual: flipped_dual },
    };
    run_algebra_suite_with(samples, seed, tolerance.unwrap_or(DEFAULT_TOLERANCE), &ops)
}
