//! Periodic uniform grids and node-sampled fields.
//!
//! Vector fields are stored component-major, then `z`, `y`, `x` row-major:
//! component `c` of node `(x, y, z)` lives at `c * n^3 + (z * n + y) * n + x`.

use mbi_core::minkowski::ThreeVector;
use rayon::prelude::*;

use crate::error::{FieldError, Result};

/// Smallest supported number of points per axis.
pub const MIN_POINTS: usize = 8;

/// A periodic cube of `n^3` nodes with spacing `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    h: f64,
    origin: [f64; 3],
}

impl Grid {
    /// A grid centred on the spatial origin: nodes at `-n h / 2 + i h`.
    pub fn centered(n: usize, h: f64) -> Result<Self> {
        let half = -0.5 * n as f64 * h;
        Self::with_origin(n, h, [half; 3])
    }

    pub fn with_origin(n: usize, h: f64, origin: [f64; 3]) -> Result<Self> {
        if n < MIN_POINTS {
            return Err(FieldError::InvalidConfig(format!("grid needs at least {MIN_POINTS} points per axis, got {n}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(FieldError::InvalidConfig(format!("grid spacing must be positive and finite, got {h}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(FieldError::InvalidConfig("grid origin must be finite".into()));
        }
        Ok(Self { n, h, origin })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    /// Side length `L = n h` of the periodic cell.
    pub fn extent(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// Number of nodes `n^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Volume `h^3` of one cell, the midpoint quadrature weight.
    pub fn cell_volume(&self) -> f64 {
        self.h * self.h * self.h
    }

    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (z * self.n + y) * self.n + x
    }

    pub fn node(&self, index: usize) -> [usize; 3] {
        let n = self.n;
        [index % n, (index / n) % n, index / (n * n)]
    }

    /// Spatial position of node `(x, y, z)`.
    pub fn position(&self, x: usize, y: usize, z: usize) -> ThreeVector {
        ThreeVector([
            self.origin[0] + x as f64 * self.h,
            self.origin[1] + y as f64 * self.h,
            self.origin[2] + z as f64 * self.h,
        ])
    }

    pub fn position_of(&self, index: usize) -> ThreeVector {
        let [x, y, z] = self.node(index);
        self.position(x, y, z)
    }

    /// Wraps a signed node offset into `0..n`.
    pub fn wrap(&self, i: isize) -> usize {
        i.rem_euclid(self.n as isize) as usize
    }
}

/// A scalar quantity sampled at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    data: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, data: vec![0.0; grid.len()] }
    }

    pub fn from_vec(grid: Grid, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(FieldError::GridMismatch(format!("expected {} values, got {}", grid.len(), data.len())));
        }
        Ok(Self { grid, data })
    }

    /// Samples `f(position)` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(ThreeVector) -> f64 + Sync) -> Self {
        let data = (0..grid.len()).into_par_iter().map(|i| f(grid.position_of(i))).collect();
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn max_abs(&self) -> f64 {
        crate::reduce::max_abs(&self.data)
    }
}

/// A three-component field sampled at every node, stored component-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: Grid,
    data: Vec<f64>,
}

impl VectorField {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, data: vec![0.0; 3 * grid.len()] }
    }

    pub fn from_vec(grid: Grid, data: Vec<f64>) -> Result<Self> {
        if data.len() != 3 * grid.len() {
            return Err(FieldError::GridMismatch(format!("expected {} values, got {}", 3 * grid.len(), data.len())));
        }
        Ok(Self { grid, data })
    }

    /// Builds a field from its three component arrays.
    pub fn from_components(grid: Grid, components: [Vec<f64>; 3]) -> Result<Self> {
        let mut data = Vec::with_capacity(3 * grid.len());
        for c in components {
            if c.len() != grid.len() {
                return Err(FieldError::GridMismatch(format!("component has {} values, grid has {}", c.len(), grid.len())));
            }
            data.extend_from_slice(&c);
        }
        Ok(Self { grid, data })
    }

    /// Samples `f(position)` at every node.
    pub fn from_fn(grid: Grid, f: impl Fn(ThreeVector) -> ThreeVector + Sync) -> Self {
        let mut field = Self::zeros(grid);
        let len = grid.len();
        let [c0, c1, c2] = field.components_mut();
        crate::par::slabs([c0, c1, c2], grid.n() * grid.n(), |z, [a, b, c]| {
            let base = z * a.len();
            for k in 0..a.len() {
                let v = f(grid.position_of(base + k));
                a[k] = v.0[0];
                b[k] = v.0[1];
                c[k] = v.0[2];
            }
        });
        debug_assert_eq!(field.data.len(), 3 * len);
        field
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn component(&self, c: usize) -> &[f64] {
        let len = self.grid.len();
        &self.data[c * len..(c + 1) * len]
    }

    pub fn components(&self) -> [&[f64]; 3] {
        [self.component(0), self.component(1), self.component(2)]
    }

    pub fn components_mut(&mut self) -> [&mut [f64]; 3] {
        let len = self.grid.len();
        let (a, rest) = self.data.split_at_mut(len);
        let (b, c) = rest.split_at_mut(len);
        [a, b, c]
    }

    /// The vector at a node index.
    pub fn get(&self, index: usize) -> ThreeVector {
        let len = self.grid.len();
        ThreeVector([self.data[index], self.data[len + index], self.data[2 * len + index]])
    }

    pub fn set(&mut self, index: usize, v: ThreeVector) {
        let len = self.grid.len();
        self.data[index] = v.0[0];
        self.data[len + index] = v.0[1];
        self.data[2 * len + index] = v.0[2];
    }

    /// Largest absolute component over the grid.
    pub fn max_abs(&self) -> f64 {
        crate::reduce::max_abs(&self.data)
    }

    /// Largest Euclidean length over the grid.
    pub fn max_norm(&self) -> f64 {
        let [a, b, c] = self.components();
        crate::reduce::max_map(self.grid.len(), |i| (a[i] * a[i] + b[i] * b[i] + c[i] * c[i]).sqrt())
    }

    /// `self + factor * other`, elementwise.
    pub fn axpy(&self, factor: f64, other: &VectorField) -> VectorField {
        let data = self.data.par_iter().zip(&other.data).map(|(a, b)| a + factor * b).collect();
        VectorField { grid: self.grid, data }
    }

    /// `self += factor * other`, elementwise.
    pub fn add_scaled(&mut self, factor: f64, other: &VectorField) {
        self.data.par_iter_mut().zip(&other.data).for_each(|(a, b)| *a += factor * b);
    }

    pub fn scale(&mut self, factor: f64) {
        self.data.par_iter_mut().for_each(|a| *a *= factor);
    }

    pub fn all_finite(&self) -> bool {
        self.data.par_iter().all(|v| v.is_finite())
    }
}
