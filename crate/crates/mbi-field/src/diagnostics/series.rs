//! Time series of diagnostics and their CSV form.

use std::io::{BufRead, Write};

use crate::diagnostics::energy::{energy_terms, knorm_integral};
use crate::diagnostics::fit::NullComponent;
use crate::diagnostics::profiles::{null_profiles, ShellLayout, ShellProfile};
use crate::error::{FieldError, Result};
use crate::faraday::{SpacetimeSlice, TwoFormField};
use crate::solver::{FieldState, Mode};
use crate::stencil::Stencil;

/// Diagnostics at one output time.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticRecord {
    pub t: f64,
    /// Conformal energy with no commutators.
    pub e0: f64,
    /// Conformal energy with up to one commutator, when requested.
    pub e1: Option<f64>,
    /// `|||F|||`.
    pub knorm_int: f64,
    pub div_b_max: f64,
    pub div_d_max: f64,
    /// Smallest `ell^2` over the grid.
    pub ell_min: f64,
    pub profile: ShellProfile,
}

/// Settings for [`observe`].
#[derive(Debug, Clone, PartialEq)]
pub struct ObserveOptions {
    /// Largest commutator count `N` in the energy (0 or 1).
    pub energy_order: usize,
    pub layout: ShellLayout,
}

/// Computes every diagnostic of a state.
pub fn observe(state: &FieldState, mode: Mode, stencil: &Stencil, options: &ObserveOptions) -> Result<DiagnosticRecord> {
    let slice = if options.energy_order >= 1 {
        SpacetimeSlice::from_state(state, mode, stencil)?
    } else {
        SpacetimeSlice::instantaneous(TwoFormField::from_state(state, mode)?)
    };
    let report = energy_terms(&slice, mode, stencil, options.energy_order)?;
    let e0 = report.terms[0].1.max(0.0).sqrt();
    let e1 = (options.energy_order >= 1).then(|| report.energy());
    Ok(DiagnosticRecord {
        t: state.t,
        e0,
        e1,
        knorm_int: knorm_integral(&slice.f),
        div_b_max: stencil.div(&state.b).max_abs(),
        div_d_max: stencil.div(&state.d).max_abs(),
        ell_min: state.ell_sq_min(),
        profile: null_profiles(&slice.f, &options.layout),
    })
}

/// Records in time order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagnosticSeries {
    pub records: Vec<DiagnosticRecord>,
}

const FIXED_COLUMNS: [&str; 7] = ["time", "E0", "E1", "knorm_int", "divB_max", "divD_max", "ell_min"];

fn shell_column(component: NullComponent, r: f64) -> String {
    format!("{}_r{r:?}", component.label())
}

impl DiagnosticSeries {
    pub fn push(&mut self, record: DiagnosticRecord) -> Result<()> {
        if let Some(last) = self.records.last() {
            if !(record.t > last.t) {
                return Err(FieldError::InvalidConfig(format!("times must increase: {} after {}", record.t, last.t)));
            }
        }
        self.records.push(record);
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    /// `(t, profile)` pairs for [`crate::diagnostics::fit::decay_fit`].
    pub fn profiles(&self) -> Vec<(f64, &ShellProfile)> {
        self.records.iter().map(|r| (r.t, &r.profile)).collect()
    }

    /// Largest relative deviation of `E0` from its first value.
    pub fn e0_drift(&self) -> f64 {
        let Some(first) = self.records.first() else { return 0.0 };
        if first.e0 == 0.0 {
            return 0.0;
        }
        self.records.iter().map(|r| ((r.e0 - first.e0) / first.e0).abs()).fold(0.0, f64::max)
    }

    /// Writes the CSV: fixed columns, then one column per component and shell.
    /// Floats use the shortest representation that parses back exactly; a missing `E1` is empty.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        let radii = self.records.first().map(|r| r.profile.radii.clone()).unwrap_or_default();
        let mut header: Vec<String> = FIXED_COLUMNS.iter().map(|s| s.to_string()).collect();
        for c in NullComponent::ALL {
            header.extend(radii.iter().map(|&r| shell_column(c, r)));
        }
        writeln!(out, "{}", header.join(","))?;
        for rec in &self.records {
            if rec.profile.radii != radii {
                return Err(FieldError::GridMismatch("shell radii differ between records".into()));
            }
            let mut row = vec![
                format!("{:?}", rec.t),
                format!("{:?}", rec.e0),
                rec.e1.map(|v| format!("{v:?}")).unwrap_or_default(),
                format!("{:?}", rec.knorm_int),
                format!("{:?}", rec.div_b_max),
                format!("{:?}", rec.div_d_max),
                format!("{:?}", rec.ell_min),
            ];
            for c in NullComponent::ALL {
                row.extend(c.values(&rec.profile).iter().map(|v| format!("{v:?}")));
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    /// Parses a CSV written by [`DiagnosticSeries::write_csv`].
    pub fn read_csv(input: impl BufRead) -> Result<Self> {
        let bad = |msg: String| FieldError::InvalidConfig(format!("diagnostics csv: {msg}"));
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| bad("empty file".into()))??;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < FIXED_COLUMNS.len() || cols[..FIXED_COLUMNS.len()] != FIXED_COLUMNS {
            return Err(bad(format!("unexpected header `{header}`")));
        }
        let shell_cols = &cols[FIXED_COLUMNS.len()..];
        if shell_cols.len() % 4 != 0 {
            return Err(bad("shell columns are not a multiple of four".into()));
        }
        let k = shell_cols.len() / 4;
        let mut radii = Vec::with_capacity(k);
        for (j, name) in shell_cols.iter().enumerate() {
            let comp = NullComponent::ALL[j / k];
            let prefix = format!("{}_r", comp.label());
            let r: f64 = name
                .strip_prefix(&prefix)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("bad shell column `{name}`")))?;
            if j < k {
                radii.push(r);
            } else if r != radii[j % k] {
                return Err(bad(format!("inconsistent radius in `{name}`")));
            }
        }
        let mut series = DiagnosticSeries::default();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != cols.len() {
                return Err(bad(format!("row has {} cells, header has {}", cells.len(), cols.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("bad number `{s}`")));
            let shell = |c: usize| cells[FIXED_COLUMNS.len() + c * k..FIXED_COLUMNS.len() + (c + 1) * k].iter().map(|s| num(s)).collect::<Result<Vec<_>>>();
            series.push(DiagnosticRecord {
                t: num(cells[0])?,
                e0: num(cells[1])?,
                e1: if cells[2].is_empty() { None } else { Some(num(cells[2])?) },
                knorm_int: num(cells[3])?,
                div_b_max: num(cells[4])?,
                div_d_max: num(cells[5])?,
                ell_min: num(cells[6])?,
                profile: ShellProfile { radii: radii.clone(), ualpha: shell(0)?, alpha: shell(1)?, rho: shell(2)?, sigma: shell(3)? },
            })?;
        }
        Ok(series)
    }
}
