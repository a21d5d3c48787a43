//! Decay-exponent reports over the shell profiles of a finished run.

use std::path::Path;

use mbi_field::diagnostics::{decay_fit, DiagnosticSeries, NullComponent, Tracking};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::Result;

/// Target exponents, and the tolerance a measured exponent may deviate from them.
pub const TARGET_TOLERANCE: f64 = 0.5;

/// One fitted exponent with its target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub component: String,
    pub tracking: String,
    pub q0: f64,
    pub exponent: Option<f64>,
    pub std_error: Option<f64>,
    pub ci95: Option<[f64; 2]>,
    pub samples: usize,
    pub target: f64,
    pub within_target: bool,
    /// Why no exponent was produced, when it was not.
    pub error: Option<String>,
}

/// Tracking and target for each null component: the radiation component at fixed
/// retarded time, the rest through the wave-zone band.
pub fn plan(component: NullComponent, q0: f64, band: f64) -> (Tracking, f64) {
    match component {
        NullComponent::UAlpha => (Tracking::FixedQ { q0 }, -1.0),
        NullComponent::Alpha => (Tracking::WaveZone { q0, half_width: band }, -2.5),
        NullComponent::Rho | NullComponent::Sigma => (Tracking::WaveZone { q0, half_width: band }, -2.0),
    }
}

fn tracking_label(t: &Tracking) -> &'static str {
    match t {
        Tracking::WaveZone { .. } => "wave_zone",
        Tracking::FixedQ { .. } => "fixed_q",
    }
}

/// Fits all four null components of `series` with the tracking set up in `config`.
pub fn fit_exponents(series: &DiagnosticSeries, config: &RunConfig) -> Vec<ExponentEntry> {
    let q0 = config.q0();
    let band = config.band();
    let samples: Vec<_> = series.profiles().into_iter().filter(|(t, _)| *t >= config.diagnostics.fit_start).collect();
    NullComponent::ALL
        .iter()
        .map(|&component| {
            let (tracking, target) = plan(component, q0, band);
            let base = ExponentEntry {
                component: component.label().to_string(),
                tracking: tracking_label(&tracking).to_string(),
                q0,
                exponent: None,
                std_error: None,
                ci95: None,
                samples: 0,
                target,
                within_target: false,
                error: None,
            };
            match decay_fit(&samples, component, tracking) {
                Ok(fit) => ExponentEntry {
                    exponent: Some(fit.exponent),
                    std_error: Some(fit.std_error),
                    ci95: Some([fit.ci95.0, fit.ci95.1]),
                    samples: fit.samples,
                    within_target: (fit.exponent - target).abs() <= TARGET_TOLERANCE,
                    ..base
                },
                Err(e) => ExponentEntry { error: Some(e.to_string()), ..base },
            }
        })
        .collect()
}

/// Comparison of one component between two runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedEntry {
    pub component: String,
    pub exponent: Option<f64>,
    pub reference: Option<f64>,
    pub difference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub run: String,
    pub exponents: Vec<ExponentEntry>,
    /// Present when a reference run was given.
    pub paired: Option<Vec<PairedEntry>>,
}

/// Reads `config.json` and `series.csv` of a run directory.
pub fn load_run(dir: &Path) -> Result<(RunConfig, DiagnosticSeries)> {
    let config = RunConfig::load(&dir.join(crate::simulate::CONFIG_FILE))?;
    let file = std::fs::File::open(dir.join(crate::simulate::SERIES_FILE))?;
    let series = DiagnosticSeries::read_csv(std::io::BufReader::new(file))?;
    Ok((config, series))
}

/// Fits a run, and compares it with `reference` when given.
pub fn decay_report(dir: &Path, reference: Option<&Path>) -> Result<DecayReport> {
    let (config, series) = load_run(dir)?;
    let exponents = fit_exponents(&series, &config);
    let paired = match reference {
        Some(ref_dir) => {
            let (ref_config, ref_series) = load_run(ref_dir)?;
            let reference = fit_exponents(&ref_series, &ref_config);
            Some(
                exponents
                    .iter()
                    .zip(&reference)
                    .map(|(a, b)| PairedEntry {
                        component: a.component.clone(),
                        exponent: a.exponent,
                        reference: b.exponent,
                        difference: a.exponent.zip(b.exponent).map(|(x, y)| x - y),
                    })
                    .collect(),
            )
        }
        None => None,
    };
    Ok(DecayReport { run: dir.display().to_string(), exponents, paired })
}
