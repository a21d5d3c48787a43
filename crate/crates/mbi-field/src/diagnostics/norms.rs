//! Weighted Sobolev and weighted supremum norms of grid tensorfields.

use crate::error::{FieldError, Result};
use crate::grid::Grid;
use crate::reduce;
use crate::stencil::{Stencil, StencilOrder};

/// Highest derivative order supported by the weighted norms.
pub const MAX_DERIVATIVES: usize = 3;

fn check(grid: &Grid, components: &[&[f64]], n_max: usize) -> Result<()> {
    if n_max > MAX_DERIVATIVES {
        return Err(FieldError::InvalidConfig(format!("weighted norms support N <= {MAX_DERIVATIVES}, got {n_max}")));
    }
    if let Some(c) = components.iter().find(|c| c.len() != grid.len()) {
        return Err(FieldError::GridMismatch(format!("component has {} values, grid has {}", c.len(), grid.len())));
    }
    Ok(())
}

fn weight(grid: &Grid, index: usize, exponent: f64) -> f64 {
    (1.0 + grid.position_of(index).norm_sq()).powf(exponent)
}

/// Depth-first walk over all iterated partial derivatives `d_{i1} ... d_{in} U_c`, `n <= n_max`,
/// calling `visit(level, field)` on each. Only the current path is held in memory.
fn walk(stencil: &Stencil, field: &[f64], level: usize, n_max: usize, visit: &mut impl FnMut(usize, &[f64])) {
    visit(level, field);
    if level < n_max {
        for axis in 0..3 {
            let d = stencil.derivative(field, axis);
            walk(stencil, &d, level + 1, n_max, visit);
        }
    }
}

/// `( sum_{n <= N} integral (1+|x|^2)^{delta+n} |nabla^n U|^2 )^{1/2}` with centred differences
/// and midpoint quadrature `h^3 sum`. The tensor norm sums squares over all components
/// and all ordered derivative index tuples.
pub fn weighted_sobolev_norm(
    grid: &Grid,
    components: &[&[f64]],
    n_max: usize,
    delta: f64,
    order: StencilOrder,
) -> Result<f64> {
    check(grid, components, n_max)?;
    let stencil = Stencil::new(*grid, order);
    let mut total = 0.0;
    for comp in components {
        walk(&stencil, comp, 0, n_max, &mut |level, f| {
            let exponent = delta + level as f64;
            total += reduce::sum_map(grid.len(), |i| weight(grid, i, exponent) * f[i] * f[i]);
        });
    }
    Ok((total * grid.cell_volume()).sqrt())
}

/// `sum_{n <= N} sup_x (1+|x|^2)^{(delta+n)/2} |nabla^n U|(x)` over the grid nodes.
pub fn weighted_c_norm(grid: &Grid, components: &[&[f64]], n_max: usize, delta: f64, order: StencilOrder) -> Result<f64> {
    check(grid, components, n_max)?;
    let stencil = Stencil::new(*grid, order);
    let mut squares = vec![vec![0.0; grid.len()]; n_max + 1];
    for comp in components {
        walk(&stencil, comp, 0, n_max, &mut |level, f| {
            for (acc, v) in squares[level].iter_mut().zip(f) {
                *acc += v * v;
            }
        });
    }
    Ok(squares
        .iter()
        .enumerate()
        .map(|(level, sq)| {
            let exponent = 0.5 * (delta + level as f64);
            reduce::max_map(grid.len(), |i| weight(grid, i, exponent) * sq[i].sqrt())
        })
        .sum())
}
