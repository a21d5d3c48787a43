//! Conformal energies and weighted integral norms.

use mbi_core::minkowski::{hodge_dual, interior_product, FourVector, TwoForm};
use mbi_core::stress::{energy_current_j0, knorm_sq_at, KillingGenerator};
use mbi_core::MbiError;

use crate::diagnostics::lie::{lie_derivative_with, SliceDerivatives};
use crate::error::{FieldError, Result};
use crate::faraday::{SpacetimeSlice, TwoFormField};
use crate::reduce;
use crate::solver::Mode;
use crate::stencil::Stencil;

/// Integrated energy currents, one per commutator multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    /// `(label, integral of J0[Lie^I F])`; the first entry is `I = ()` with label `F`.
    pub terms: Vec<(String, f64)>,
}

impl EnergyReport {
    /// `(sum of the integrals)^{1/2}`; a negative sum, possible only for large data, gives 0.
    pub fn energy(&self) -> f64 {
        self.terms.iter().map(|(_, v)| v).sum::<f64>().max(0.0).sqrt()
    }
}

/// `integral J0[Fd] h^3` on the background of `f` (MBI) or on the vacuum (Maxwell).
pub fn integrate_current(f: &TwoFormField, fdot: &TwoFormField, mode: Mode) -> Result<f64> {
    let grid = *f.grid();
    let t = f.t();
    let density = |i: usize| {
        let background = match mode {
            Mode::Mbi => f.at(i),
            Mode::Maxwell => TwoForm::ZERO,
        };
        energy_current_j0(&background, &fdot.at(i), t, &grid.position_of(i))
    };
    let total = reduce::sum_map(grid.len(), |i| density(i).unwrap_or(f64::NAN));
    if total.is_nan() {
        let i = (0..grid.len()).find(|&i| density(i).is_err()).unwrap_or(0);
        let ell_sq = match density(i) {
            Err(MbiError::DegenerateState { ell_sq, .. }) => ell_sq,
            _ => f64::NAN,
        };
        return Err(MbiError::DegenerateState { ell_sq, node: Some(grid.node(i)) }.into());
    }
    Ok(total * grid.cell_volume())
}

/// The integrals entering `E_N` for `N <= 1`: `J0[F]` and, for `N = 1`,
/// `J0[Lie_Z F]` over the eleven commutation fields.
pub fn energy_terms(slice: &SpacetimeSlice, mode: Mode, stencil: &Stencil, n_max: usize) -> Result<EnergyReport> {
    if n_max > 1 {
        return Err(FieldError::InvalidConfig(format!("energies are available for N <= 1, got {n_max}")));
    }
    let mut terms = vec![("F".to_string(), integrate_current(&slice.f, &slice.f, mode)?)];
    if n_max == 1 {
        let derivs = SliceDerivatives::new(slice, stencil);
        for z in KillingGenerator::COMMUTATORS {
            let lie = lie_derivative_with(slice, &derivs, z)?;
            terms.push((z.label(), integrate_current(&slice.f, &lie, mode)?));
        }
    }
    Ok(EnergyReport { terms })
}

/// `E_N = (sum_{|I| <= N} integral J0[Lie^I F])^{1/2}`.
pub fn energy_en(slice: &SpacetimeSlice, mode: Mode, stencil: &Stencil, n_max: usize) -> Result<f64> {
    Ok(energy_terms(slice, mode, stencil, n_max)?.energy())
}

/// `|||F||| = (integral Knorm^2)^{1/2}` with midpoint quadrature.
pub fn knorm_integral(f: &TwoFormField) -> f64 {
    let grid = *f.grid();
    let t = f.t();
    let total = reduce::sum_map(grid.len(), |i| knorm_sq_at(&f.at(i), t, &grid.position_of(i)));
    (total * grid.cell_volume()).sqrt()
}

/// The same norm through `Knorm^2 = 2 (|E|^2 + |B|^2 + |P|^2 + |Q|^2)` with
/// `P = i_S F`, `Q = i_S *F` and `S` the scaling field, all in Euclidean norm.
pub fn knorm_integral_via_interior_products(f: &TwoFormField) -> f64 {
    let grid = *f.grid();
    let t = f.t();
    let total = reduce::sum_map(grid.len(), |i| {
        let x = grid.position_of(i);
        let s = FourVector::from_parts(t, &x);
        let form = f.at(i);
        let p = interior_product(&s, &form);
        let q = interior_product(&s, &hodge_dual(&form));
        2.0 * (f.e_at(i).norm_sq() + f.b_at(i).norm_sq() + p.euclidean_norm_sq() + q.euclidean_norm_sq())
    });
    (total * grid.cell_volume()).sqrt()
}
