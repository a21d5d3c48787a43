//! Two-form fields on the grid and their space-time derivatives.

use mbi_core::minkowski::{ThreeVector, TwoForm};
use mbi_core::MbiError;

use crate::error::Result;
use crate::grid::{Grid, VectorField};
use crate::solver::{constitutive_fields, rhs, FieldState, Mode};
use crate::stencil::Stencil;

/// A two-form sampled at every node, stored as the six independent components
/// `F_01, F_02, F_03, F_12, F_13, F_23`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormField {
    grid: Grid,
    t: f64,
    c: [Vec<f64>; 6],
}

impl TwoFormField {
    pub fn zeros(grid: Grid, t: f64) -> Self {
        Self { grid, t, c: std::array::from_fn(|_| vec![0.0; grid.len()]) }
    }

    /// Evaluates `f(node index)` at every node.
    pub fn from_fn(grid: Grid, t: f64, f: impl Fn(usize) -> TwoForm + Sync + Send) -> Self {
        let mut out = Self::zeros(grid, t);
        let n = grid.n();
        let [a, b, c, d, e, g] = out.components_mut();
        crate::par::slabs([a, b, c, d, e, g], n * n, |z, slabs| {
            let base = z * n * n;
            let [a, b, c, d, e, g] = slabs;
            for k in 0..n * n {
                let v = f(base + k).independent();
                a[k] = v[0];
                b[k] = v[1];
                c[k] = v[2];
                d[k] = v[3];
                e[k] = v[4];
                g[k] = v[5];
            }
        });
        out
    }

    /// `F` from electric field and magnetic induction, `F_{j0} = E_j`, `B = (F_23, F_31, F_12)`.
    pub fn from_e_b(e: &VectorField, b: &VectorField, t: f64) -> Self {
        let grid = *e.grid();
        let [e0, e1, e2] = e.components();
        let [b0, b1, b2] = b.components();
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        Self { grid, t, c: [neg(e0), neg(e1), neg(e2), b2.to_vec(), neg(b1), b0.to_vec()] }
    }

    /// The Faraday tensor of a solver state.
    pub fn from_state(state: &FieldState, mode: Mode) -> Result<Self> {
        let (e, _) = constitutive_fields(state, mode)?;
        Ok(Self::from_e_b(&e, &state.b, state.t))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn component(&self, slot: usize) -> &[f64] {
        &self.c[slot]
    }

    pub fn components_mut(&mut self) -> [&mut [f64]; 6] {
        let [a, b, c, d, e, g] = &mut self.c;
        [a, b, c, d, e, g]
    }

    /// The two-form at a node index.
    pub fn at(&self, index: usize) -> TwoForm {
        TwoForm::from_independent(std::array::from_fn(|s| self.c[s][index]))
    }

    /// Electric field at a node.
    pub fn e_at(&self, index: usize) -> ThreeVector {
        ThreeVector([-self.c[0][index], -self.c[1][index], -self.c[2][index]])
    }

    /// Magnetic induction at a node.
    pub fn b_at(&self, index: usize) -> ThreeVector {
        ThreeVector([self.c[5][index], -self.c[4][index], self.c[3][index]])
    }

    /// Spatial derivative along `axis` (0, 1, 2 for `x^1, x^2, x^3`).
    pub fn derivative(&self, stencil: &Stencil, axis: usize) -> Self {
        Self { grid: self.grid, t: self.t, c: std::array::from_fn(|s| stencil.derivative(&self.c[s], axis)) }
    }

    /// `(self - other) / (t_self - t_other)`, placed at the midpoint time.
    pub fn difference_quotient(&self, other: &Self) -> Self {
        let inv = 1.0 / (self.t - other.t);
        let c = std::array::from_fn(|s| self.c[s].iter().zip(&other.c[s]).map(|(a, b)| (a - b) * inv).collect());
        Self { grid: self.grid, t: 0.5 * (self.t + other.t), c }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| crate::reduce::max_abs(v)).fold(0.0, f64::max)
    }
}

/// Directional derivative of `E(B, D)` along `(Bd, Dd)`.
pub fn e_of_db_derivative(b: &ThreeVector, d: &ThreeVector, bdot: &ThreeVector, ddot: &ThreeVector) -> ThreeVector {
    let dxb = d.cross(b);
    let w = (1.0 + b.norm_sq() + d.norm_sq() + dxb.norm_sq()).sqrt();
    let dxb_dot = ddot.cross(b) + d.cross(bdot);
    let w_dot = (b.dot(bdot) + d.dot(ddot) + dxb.dot(&dxb_dot)) / w;
    let e = (*d + b.cross(&dxb)) * (1.0 / w);
    (*ddot + bdot.cross(&dxb) + b.cross(&dxb_dot)) * (1.0 / w) - e * (w_dot / w)
}

/// `F` at one time together with `dF/dt`, when known.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeSlice {
    pub f: TwoFormField,
    pub dt_f: Option<TwoFormField>,
}

impl SpacetimeSlice {
    /// A slice without time derivative; only time-independent generators can act on it.
    pub fn instantaneous(f: TwoFormField) -> Self {
        Self { f, dt_f: None }
    }

    /// The middle of the last three snapshots, with a centred time difference.
    pub fn from_window(window: &[TwoFormField]) -> Result<Self> {
        if window.len() < 3 {
            return Err(MbiError::InsufficientHistory { needed: 3, available: window.len() }.into());
        }
        let [prev, mid, next] = [&window[window.len() - 3], &window[window.len() - 2], &window[window.len() - 1]];
        let mut dt_f = next.difference_quotient(prev);
        dt_f.t = mid.t;
        Ok(Self { f: mid.clone(), dt_f: Some(dt_f) })
    }

    /// `F` of a state with the exact semi-discrete time derivative from the right-hand side.
    pub fn from_state(state: &FieldState, mode: Mode, stencil: &Stencil) -> Result<Self> {
        let f = TwoFormField::from_state(state, mode)?;
        let (bdot, ddot) = rhs(state, mode, stencil)?;
        let edot = match mode {
            Mode::Maxwell => ddot,
            Mode::Mbi => {
                let grid = state.grid;
                let mut out = VectorField::zeros(grid);
                let n = grid.n();
                let [o0, o1, o2] = out.components_mut();
                crate::par::slabs([o0, o1, o2], n * n, |z, [a, b, c]| {
                    let base = z * n * n;
                    for k in 0..n * n {
                        let i = base + k;
                        let v = e_of_db_derivative(&state.b.get(i), &state.d.get(i), &bdot.get(i), &ddot.get(i));
                        a[k] = v.0[0];
                        b[k] = v.0[1];
                        c[k] = v.0[2];
                    }
                });
                out
            }
        };
        let dt_f = TwoFormField::from_e_b(&edot, &bdot, state.t);
        Ok(Self { f, dt_f: Some(dt_f) })
    }

    pub fn t(&self) -> f64 {
        self.f.t
    }
}
