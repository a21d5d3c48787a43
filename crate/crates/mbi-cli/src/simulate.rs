//! The `simulate` command: evolve, observe, and write the run directory.

use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use mbi_core::MbiError;
use mbi_field::diagnostics::{observe, DiagnosticSeries, ObserveOptions, ShellLayout};
use mbi_field::{
    make_initial_data, residual_mbi, write_snapshot, Evolution, FieldError, FieldState, SnapshotMeta, Stencil,
};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, SnapshotPolicy};
use crate::error::{CliError, Result};
use crate::report::{fit_exponents, ExponentEntry};
use crate::verify::{verify_algebra, AlgebraJson};

pub const CONFIG_FILE: &str = "config.json";
pub const SERIES_FILE: &str = "series.csv";
pub const SUMMARY_FILE: &str = "run_summary.json";
pub const ALGEBRA_FILE: &str = "algebra.json";
pub const SNAPSHOT_DIR: &str = "snapshots";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualJson {
    pub bianchi: f64,
    pub field_equation: f64,
}

/// Everything `run_summary.json` records. Contains no timing, so reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    /// `completed` or `degenerate`.
    pub status: String,
    pub mode: String,
    pub n: usize,
    pub h: f64,
    pub order: u32,
    pub steps: usize,
    pub dt: f64,
    pub t_final: f64,
    pub e0_initial: f64,
    pub e0_final: f64,
    /// `max_t |E0(t) / E0(0) - 1|`.
    pub e0_drift: f64,
    pub ell_min: f64,
    /// Largest `max(|div_h B|, |div_h D|)` over all output times.
    pub max_divergence: f64,
    /// Largest component magnitude of `(B, D)` over all output times.
    pub max_field: f64,
    /// Largest ratio of the divergence to the field magnitude at the same time.
    pub relative_divergence: f64,
    /// Residual of the first-order system at the middle of the last three steps.
    pub residual: Option<ResidualJson>,
    pub exponents: Vec<ExponentEntry>,
    /// Location report when the run stopped early.
    pub failure: Option<String>,
}

/// Directory holding the snapshot written after `step` steps.
pub fn snapshot_dir(run_dir: &Path, step: usize) -> PathBuf {
    run_dir.join(SNAPSHOT_DIR).join(format!("step_{step:07}"))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut out = BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

struct Monitor {
    series: DiagnosticSeries,
    max_divergence: f64,
    max_field: f64,
    relative_divergence: f64,
    ell_min: f64,
}

impl Monitor {
    fn record(&mut self, state: &FieldState, config: &RunConfig, stencil: &Stencil, options: &ObserveOptions) -> Result<()> {
        let record = observe(state, config.mode(), stencil, options)?;
        let div = record.div_b_max.max(record.div_d_max);
        let field = state.max_abs();
        self.max_divergence = self.max_divergence.max(div);
        self.max_field = self.max_field.max(field);
        if field > 0.0 {
            self.relative_divergence = self.relative_divergence.max(div / field);
        }
        self.ell_min = self.ell_min.min(record.ell_min);
        eprintln!(
            "t={:.4} E0={:.6e} ell_min={:.6} div={:.2e}",
            record.t, record.e0, record.ell_min, div
        );
        self.series.push(record)?;
        Ok(())
    }
}

/// Runs the configured simulation into `run_dir`. On a degenerate state the partial
/// series and a summary with the failure location are still written.
pub fn simulate(config: &RunConfig, run_dir: &Path) -> Result<RunSummary> {
    config.validate()?;
    std::fs::create_dir_all(run_dir)?;
    std::fs::write(run_dir.join(CONFIG_FILE), config.to_json() + "\n")?;

    if config.checks.algebra_samples > 0 {
        let report = verify_algebra(config.checks.algebra_samples, config.seed, config.checks.algebra_tolerance, None);
        write_json(&run_dir.join(ALGEBRA_FILE), &AlgebraJson::from(&report))?;
        if !report.all_passed() {
            return Err(CliError::PropertyFailure(report.failures().iter().map(|s| s.to_string()).collect()));
        }
    }

    let started = Instant::now();
    let grid = config.grid()?;
    let order = config.stencil_order()?;
    let mode = config.mode();
    let solver = config.solver()?;
    let initial = make_initial_data(grid, &config.initial_data(), order);
    let stencil = Stencil::new(grid, order);
    let options = ObserveOptions { energy_order: config.diagnostics.energy_order, layout: ShellLayout::for_grid(&grid) };
    let meta = SnapshotMeta { mode, order, seed: config.seed };
    let mut monitor = Monitor {
        series: DiagnosticSeries::default(),
        max_divergence: 0.0,
        max_field: 0.0,
        relative_divergence: 0.0,
        ell_min: f64::INFINITY,
    };

    let mut evolution = Evolution::new(solver, initial)?;
    let mut window: Vec<FieldState> = vec![evolution.state().clone()];
    let outcome = (|| -> Result<()> {
        monitor.record(evolution.state(), config, &stencil, &options)?;
        if config.output.snapshots == SnapshotPolicy::EveryOutput {
            write_snapshot(&snapshot_dir(run_dir, 0), evolution.state(), &meta)?;
        }
        while !evolution.finished() {
            evolution.advance()?;
            window.push(evolution.state().clone());
            if window.len() > 3 {
                window.remove(0);
            }
            if evolution.is_output_step() {
                monitor.record(evolution.state(), config, &stencil, &options)?;
                let last = evolution.finished();
                if config.output.snapshots == SnapshotPolicy::EveryOutput
                    || (last && config.output.snapshots == SnapshotPolicy::Final)
                {
                    write_snapshot(&snapshot_dir(run_dir, evolution.step_index()), evolution.state(), &meta)?;
                }
            }
        }
        Ok(())
    })();
    let degenerate = match outcome {
        Ok(()) => None,
        Err(CliError::Field(FieldError::Core(e @ MbiError::DegenerateState { .. }))) => Some(e),
        Err(other) => return Err(other),
    };

    let file = BufWriter::new(std::fs::File::create(run_dir.join(SERIES_FILE))?);
    monitor.series.write_csv(file)?;

    let residual = if degenerate.is_none() && window.len() == 3 {
        let r = residual_mbi(&window, mode, order)?;
        Some(ResidualJson { bianchi: r.bianchi, field_equation: r.field_equation })
    } else {
        None
    };
    let records = &monitor.series.records;
    let summary = RunSummary {
        status: if degenerate.is_some() { "degenerate" } else { "completed" }.to_string(),
        mode: mode.as_str().to_string(),
        n: grid.n(),
        h: grid.h(),
        order: order.order(),
        steps: evolution.step_index(),
        dt: evolution.dt(),
        t_final: evolution.state().t,
        e0_initial: records.first().map_or(0.0, |r| r.e0),
        e0_final: records.last().map_or(0.0, |r| r.e0),
        e0_drift: monitor.series.e0_drift(),
        ell_min: monitor.ell_min,
        max_divergence: monitor.max_divergence,
        max_field: monitor.max_field,
        relative_divergence: monitor.relative_divergence,
        residual,
        exponents: fit_exponents(&monitor.series, config),
        failure: degenerate.as_ref().map(|e| format!("{e} at t = {}", evolution.state().t)),
    };
    write_json(&run_dir.join(SUMMARY_FILE), &summary)?;
    eprintln!("{} steps in {:.1} s", summary.steps, started.elapsed().as_secs_f64());
    match degenerate {
        Some(e) => Err(e.into()),
        None => Ok(summary),
    }
}
