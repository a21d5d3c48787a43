//! Method-of-lines evolution of `(B, D)` in curl form.
//!
//! MBI mode evolves `dB/dt = -curl E(B, D)` and `dD/dt = curl H(B, D)` with the
//! constitutive maps evaluated node by node. Maxwell mode uses `E = D`, `H = B`.

use mbi_core::constitutive::{e_h_ell_sq_of_db, StatePoint, ELL_SQ_MIN};
use mbi_core::MbiError;

use crate::error::{FieldError, Result};
use crate::grid::{Grid, VectorField};
use crate::stencil::{Stencil, StencilOrder};

/// Which constitutive law closes the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Mbi,
    Maxwell,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Mbi => "mbi",
            Mode::Maxwell => "maxwell",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "mbi" => Some(Mode::Mbi),
            "maxwell" => Some(Mode::Maxwell),
            _ => None,
        }
    }
}

/// The evolved unknowns at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub grid: Grid,
    pub t: f64,
    pub b: VectorField,
    pub d: VectorField,
}

impl FieldState {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, t: 0.0, b: VectorField::zeros(grid), d: VectorField::zeros(grid) }
    }

    pub fn state_point(&self, index: usize) -> StatePoint {
        StatePoint { b: self.b.get(index), d: self.d.get(index) }
    }

    /// Largest absolute component of `B` and `D`.
    pub fn max_abs(&self) -> f64 {
        self.b.max_abs().max(self.d.max_abs())
    }

    /// Smallest `ell^2 = (1+|B|^2)^2 / (1+|B|^2+|D|^2+|B x D|^2)` over the grid.
    pub fn ell_sq_min(&self) -> f64 {
        crate::reduce::min_map(self.grid.len(), |i| mbi_core::constitutive::ell_of_db(&self.state_point(i)).powi(2))
    }
}

/// Time-stepping parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub mode: Mode,
    pub order: StencilOrder,
    /// `dt <= cfl * h`.
    pub cfl: f64,
    pub t_end: f64,
    /// Output every `cadence` steps; the final step is always an output.
    pub cadence: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { mode: Mode::Mbi, order: StencilOrder::Fourth, cfl: 0.4, t_end: 1.0, cadence: 10 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(FieldError::InvalidConfig(format!("cfl must lie in (0, 0.5], got {}", self.cfl)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(FieldError::InvalidConfig(format!("t_end must be finite and nonnegative, got {}", self.t_end)));
        }
        if self.cadence == 0 {
            return Err(FieldError::InvalidConfig("cadence must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of steps and the uniform step size reaching `t_end` with `dt <= cfl * h`.
    pub fn schedule(&self, grid: &Grid) -> (usize, f64) {
        let dt_max = self.cfl * grid.h();
        if self.t_end == 0.0 {
            return (0, dt_max);
        }
        let steps = (self.t_end / dt_max).ceil().max(1.0) as usize;
        (steps, self.t_end / steps as f64)
    }
}

/// Node-wise constitutive fields `(E, H)` of a state.
pub fn constitutive_fields(state: &FieldState, mode: Mode) -> Result<(VectorField, VectorField)> {
    match mode {
        Mode::Maxwell => Ok((state.d.clone(), state.b.clone())),
        Mode::Mbi => {
            let grid = state.grid;
            let n = grid.n();
            let mut e = VectorField::zeros(grid);
            let mut h = VectorField::zeros(grid);
            let [e0, e1, e2] = e.components_mut();
            let [h0, h1, h2] = h.components_mut();
            let failures = crate::par::slabs([e0, e1, e2, h0, h1, h2], n * n, |z, [e0, e1, e2, h0, h1, h2]| {
                let base = z * n * n;
                let mut failure = None;
                for k in 0..n * n {
                    let (ev, hv, ell_sq) = e_h_ell_sq_of_db(&state.state_point(base + k));
                    if !(ell_sq > ELL_SQ_MIN) && failure.is_none() {
                        failure = Some((base + k, ell_sq));
                    }
                    e0[k] = ev.0[0];
                    e1[k] = ev.0[1];
                    e2[k] = ev.0[2];
                    h0[k] = hv.0[0];
                    h1[k] = hv.0[1];
                    h2[k] = hv.0[2];
                }
                failure
            });
            if let Some((index, ell_sq)) = failures.into_iter().flatten().next() {
                return Err(MbiError::DegenerateState { ell_sq, node: Some(grid.node(index)) }.into());
            }
            Ok((e, h))
        }
    }
}

/// Semi-discrete right-hand side `(dB/dt, dD/dt)`.
pub fn rhs(state: &FieldState, mode: Mode, stencil: &Stencil) -> Result<(VectorField, VectorField)> {
    let mut db = VectorField::zeros(state.grid);
    let mut dd = VectorField::zeros(state.grid);
    match mode {
        Mode::Maxwell => {
            stencil.curl_into(&state.d, -1.0, &mut db);
            stencil.curl_into(&state.b, 1.0, &mut dd);
        }
        Mode::Mbi => {
            let (e, h) = constitutive_fields(state, mode)?;
            stencil.curl_into(&e, -1.0, &mut db);
            stencil.curl_into(&h, 1.0, &mut dd);
        }
    }
    Ok((db, dd))
}

/// One classical four-stage Runge-Kutta step of size `dt`.
pub fn step_rk4(state: &FieldState, dt: f64, mode: Mode, stencil: &Stencil) -> Result<FieldState> {
    let (k1b, k1d) = rhs(state, mode, stencil)?;
    let mut acc_b = state.b.axpy(dt / 6.0, &k1b);
    let mut acc_d = state.d.axpy(dt / 6.0, &k1d);
    let stage = |kb: &VectorField, kd: &VectorField, f: f64, t: f64| FieldState {
        grid: state.grid,
        t,
        b: state.b.axpy(f, kb),
        d: state.d.axpy(f, kd),
    };

    let s2 = stage(&k1b, &k1d, 0.5 * dt, state.t + 0.5 * dt);
    let (k2b, k2d) = rhs(&s2, mode, stencil)?;
    acc_b.add_scaled(dt / 3.0, &k2b);
    acc_d.add_scaled(dt / 3.0, &k2d);

    let s3 = stage(&k2b, &k2d, 0.5 * dt, state.t + 0.5 * dt);
    let (k3b, k3d) = rhs(&s3, mode, stencil)?;
    acc_b.add_scaled(dt / 3.0, &k3b);
    acc_d.add_scaled(dt / 3.0, &k3d);

    let s4 = stage(&k3b, &k3d, dt, state.t + dt);
    let (k4b, k4d) = rhs(&s4, mode, stencil)?;
    acc_b.add_scaled(dt / 6.0, &k4b);
    acc_d.add_scaled(dt / 6.0, &k4d);

    let next = FieldState { grid: state.grid, t: state.t + dt, b: acc_b, d: acc_d };
    if !(next.b.all_finite() && next.d.all_finite()) {
        return Err(MbiError::DegenerateState { ell_sq: f64::NAN, node: None }.into());
    }
    Ok(next)
}

/// Owns the state of a run and advances it on a fixed schedule.
#[derive(Debug, Clone)]
pub struct Evolution {
    config: SolverConfig,
    stencil: Stencil,
    state: FieldState,
    t0: f64,
    step: usize,
    steps: usize,
    dt: f64,
}

impl Evolution {
    pub fn new(config: SolverConfig, initial: FieldState) -> Result<Self> {
        config.validate()?;
        let (steps, dt) = config.schedule(&initial.grid);
        let stencil = Stencil::new(initial.grid, config.order);
        Ok(Self { config, stencil, t0: initial.t, state: initial, step: 0, steps, dt })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn stencil(&self) -> &Stencil {
        &self.stencil
    }

    pub fn state(&self) -> &FieldState {
        &self.state
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn total_steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn finished(&self) -> bool {
        self.step >= self.steps
    }

    /// Whether the current step is an output step.
    pub fn is_output_step(&self) -> bool {
        self.step % self.config.cadence == 0 || self.step == self.steps
    }

    /// Advances one step. Time is set from the step counter so that it does not drift.
    pub fn advance(&mut self) -> Result<()> {
        let mut next = step_rk4(&self.state, self.dt, self.config.mode, &self.stencil)?;
        self.step += 1;
        next.t = self.t0 + self.step as f64 * self.dt;
        self.state = next;
        Ok(())
    }

    /// A state advanced by `dt` from the current one without changing the run.
    pub fn peek(&self, dt: f64) -> Result<FieldState> {
        step_rk4(&self.state, dt, self.config.mode, &self.stencil)
    }
}
