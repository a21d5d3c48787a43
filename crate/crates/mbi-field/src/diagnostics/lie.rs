//! Lie derivatives of grid two-forms along the conformal Killing generators.

use mbi_core::minkowski::TwoForm;
use mbi_core::stress::{lie_derivative, KillingGenerator};
use mbi_core::MbiError;

use crate::error::Result;
use crate::faraday::{SpacetimeSlice, TwoFormField};
use crate::stencil::Stencil;

/// Spatial derivatives `d_1 F, d_2 F, d_3 F` of a slice, computed once and shared across generators.
#[derive(Debug, Clone)]
pub struct SliceDerivatives {
    pub spatial: [TwoFormField; 3],
}

impl SliceDerivatives {
    pub fn new(slice: &SpacetimeSlice, stencil: &Stencil) -> Self {
        Self { spatial: std::array::from_fn(|axis| slice.f.derivative(stencil, axis)) }
    }
}

/// `Lie_Z F_{mu nu} = Z^kappa d_kappa F_{mu nu} + F_{kappa nu} d_mu Z^kappa + F_{mu kappa} d_nu Z^kappa`
/// at every node. Generators with a time component need `dF/dt` in the slice.
pub fn lie_derivative_field(slice: &SpacetimeSlice, z: KillingGenerator, stencil: &Stencil) -> Result<TwoFormField> {
    let derivs = SliceDerivatives::new(slice, stencil);
    lie_derivative_with(slice, &derivs, z)
}

/// As [`lie_derivative_field`], reusing precomputed spatial derivatives.
pub fn lie_derivative_with(slice: &SpacetimeSlice, derivs: &SliceDerivatives, z: KillingGenerator) -> Result<TwoFormField> {
    if z.needs_time_derivative() && slice.dt_f.is_none() {
        return Err(MbiError::InsufficientHistory { needed: 3, available: 1 }.into());
    }
    let f = &slice.f;
    let grid = *f.grid();
    let t = f.t();
    let [d1, d2, d3] = &derivs.spatial;
    Ok(TwoFormField::from_fn(grid, t, |i| {
        let dt = slice.dt_f.as_ref().map_or(TwoForm::ZERO, |d| d.at(i));
        let df = [dt, d1.at(i), d2.at(i), d3.at(i)];
        lie_derivative(&z, t, &grid.position_of(i), &f.at(i), &df)
    }))
}
