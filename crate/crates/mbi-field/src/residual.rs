//! Residuals of the first-order system `dF = 0`, `H^{mu nu kappa lambda} d_mu F_{kappa lambda} = 0`
//! evaluated on a stored trajectory.

use mbi_core::constitutive::big_h_tensor;
use mbi_core::minkowski::{TwoForm, PAIRS};
use mbi_core::MbiError;

use rayon::prelude::*;

use crate::error::Result;
use crate::faraday::{SpacetimeSlice, TwoFormField};
use crate::reduce;
use crate::solver::{FieldState, Mode};
use crate::stencil::{Stencil, StencilOrder};

/// Max-norm residuals over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    /// `max |d_[lambda F_mu nu]|` over the four index triples.
    pub bianchi: f64,
    /// `max |H^{mu nu kappa lambda} d_mu F_{kappa lambda}|` over `nu`.
    pub field_equation: f64,
}

impl Residual {
    pub fn max(&self) -> f64 {
        self.bianchi.max(self.field_equation)
    }
}

const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Residual at one node given `F` and its coordinate derivatives `df[mu] = d_mu F`.
pub fn pointwise_residual(f: &TwoForm, df: &[TwoForm; 4], mode: Mode) -> mbi_core::Result<Residual> {
    let bianchi = TRIPLES
        .iter()
        .map(|&[l, m, n]| (df[l].get(m, n) + df[m].get(n, l) + df[n].get(l, m)).abs())
        .fold(0.0, f64::max);
    let background = match mode {
        Mode::Mbi => *f,
        Mode::Maxwell => TwoForm::ZERO,
    };
    let (h, _) = big_h_tensor(&background)?;
    let mut field_equation = 0.0_f64;
    for nu in 0..4 {
        let mut acc = 0.0;
        for (mu, dfm) in df.iter().enumerate() {
            for &(k, l) in PAIRS.iter() {
                // Each independent pair appears twice with opposite signs in both factors.
                acc += 2.0 * h.get(mu, nu, k, l) * dfm.get(k, l);
            }
        }
        field_equation = field_equation.max(acc.abs());
    }
    Ok(Residual { bianchi, field_equation })
}

/// Residual of a space-time slice whose time derivative is known.
pub fn residual_of_slice(slice: &SpacetimeSlice, mode: Mode, stencil: &Stencil) -> Result<Residual> {
    let dt_f = slice
        .dt_f
        .as_ref()
        .ok_or(MbiError::InsufficientHistory { needed: 3, available: 1 })?;
    let f = &slice.f;
    let grid = *f.grid();
    let spatial: [TwoFormField; 3] = std::array::from_fn(|axis| f.derivative(stencil, axis));
    let eval = |i: usize| {
        let df = [dt_f.at(i), spatial[0].at(i), spatial[1].at(i), spatial[2].at(i)];
        pointwise_residual(&f.at(i), &df, mode)
    };
    let per_node: Vec<mbi_core::Result<Residual>> = (0..grid.len()).into_par_iter().map(eval).collect();
    if let Some(i) = per_node.iter().position(|r| r.is_err()) {
        let ell_sq = match &per_node[i] {
            Err(MbiError::DegenerateState { ell_sq, .. }) => *ell_sq,
            _ => f64::NAN,
        };
        return Err(MbiError::DegenerateState { ell_sq, node: Some(grid.node(i)) }.into());
    }
    let values: Vec<Residual> = per_node.into_iter().map(|r| r.expect("checked above")).collect();
    let bianchi = reduce::max_map(values.len(), |i| values[i].bianchi);
    let field_equation = reduce::max_map(values.len(), |i| values[i].field_equation);
    Ok(Residual { bianchi, field_equation })
}

/// Residual at the middle of the last three stored states, with centred time
/// differences and the spatial stencil of the given order.
pub fn residual_mbi(window: &[FieldState], mode: Mode, order: StencilOrder) -> Result<Residual> {
    if window.len() < 3 {
        return Err(MbiError::InsufficientHistory { needed: 3, available: window.len() }.into());
    }
    let last = &window[window.len() - 3..];
    let fields = last.iter().map(|s| TwoFormField::from_state(s, mode)).collect::<Result<Vec<_>>>()?;
    let slice = SpacetimeSlice::from_window(&fields)?;
    let stencil = Stencil::new(last[1].grid, order);
    residual_of_slice(&slice, mode, &stencil)
}
