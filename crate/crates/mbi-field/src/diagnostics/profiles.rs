//! Per-shell maxima of the null components of a grid two-form.

use mbi_core::minkowski::{null_decompose, null_frame_with_cutoff, ThreeVector, TwoForm};
use rayon::prelude::*;

use crate::faraday::TwoFormField;
use crate::grid::Grid;

/// Points per sampling sphere.
pub const SHELL_POINTS: usize = 256;

/// Unit vectors of the Fibonacci lattice with `count` points.
pub fn fibonacci_sphere(count: usize) -> Vec<ThreeVector> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            ThreeVector::new(rho * phi.cos(), rho * phi.sin(), z)
        })
        .collect()
}

/// Radii and directions of the sampling shells.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellLayout {
    pub radii: Vec<f64>,
    pub directions: Vec<ThreeVector>,
    /// Frames are not built closer than this to the origin.
    pub r_min: f64,
}

impl ShellLayout {
    /// Shells at `r_k = k dr` with `dr = 2h`, from `2h` out to `L/2 - 2h`.
    pub fn for_grid(grid: &Grid) -> Self {
        let dr = 2.0 * grid.h();
        let r_max = 0.5 * grid.extent() - 2.0 * grid.h();
        let radii = (1..).map(|k| k as f64 * dr).take_while(|r| *r <= r_max + 1e-12 * dr).collect();
        Self { radii, directions: fibonacci_sphere(SHELL_POINTS), r_min: dr }
    }

    pub fn with_radii(radii: Vec<f64>, r_min: f64) -> Self {
        Self { radii, directions: fibonacci_sphere(SHELL_POINTS), r_min }
    }
}

/// Per-shell maxima of `|ualpha|`, `|alpha|`, `|rho|`, `|sigma|`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ShellProfile {
    pub radii: Vec<f64>,
    pub ualpha: Vec<f64>,
    pub alpha: Vec<f64>,
    pub rho: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl ShellProfile {
    pub fn zeros(radii: Vec<f64>) -> Self {
        let k = radii.len();
        Self { radii, ualpha: vec![0.0; k], alpha: vec![0.0; k], rho: vec![0.0; k], sigma: vec![0.0; k] }
    }
}

/// Trilinear interpolation of `f` at an arbitrary position, periodic in every axis.
pub fn interpolate(f: &TwoFormField, x: &ThreeVector) -> TwoForm {
    let grid = f.grid();
    let origin = grid.origin();
    let mut base = [0isize; 3];
    let mut frac = [0.0; 3];
    for a in 0..3 {
        let u = (x.0[a] - origin[a]) / grid.h();
        let fl = u.floor();
        base[a] = fl as isize;
        frac[a] = u - fl;
    }
    let mut out = [0.0; 6];
    for corner in 0..8 {
        let offs = [corner & 1, (corner >> 1) & 1, (corner >> 2) & 1];
        let mut w = 1.0;
        let mut node = [0usize; 3];
        for a in 0..3 {
            w *= if offs[a] == 1 { frac[a] } else { 1.0 - frac[a] };
            node[a] = grid.wrap(base[a] + offs[a] as isize);
        }
        if w == 0.0 {
            continue;
        }
        let idx = grid.index(node[0], node[1], node[2]);
        for (s, o) in out.iter_mut().enumerate() {
            *o += w * f.component(s)[idx];
        }
    }
    TwoForm::from_independent(out)
}

/// Null-component maxima on every shell of `layout`.
pub fn null_profiles(f: &TwoFormField, layout: &ShellLayout) -> ShellProfile {
    let t = f.t();
    let per_shell: Vec<[f64; 4]> = layout
        .radii
        .par_iter()
        .map(|&r| {
            let mut m = [0.0_f64; 4];
            for dir in &layout.directions {
                let x = *dir * r;
                let Ok(frame) = null_frame_with_cutoff(t, &x, layout.r_min) else { continue };
                let nc = null_decompose(&interpolate(f, &x), &frame);
                let vals = [nc.ualpha_norm_sq().sqrt(), nc.alpha_norm_sq().sqrt(), nc.rho.abs(), nc.sigma.abs()];
                for (acc, v) in m.iter_mut().zip(vals) {
                    *acc = acc.max(v);
                }
            }
            m
        })
        .collect();
    let mut out = ShellProfile::zeros(layout.radii.clone());
    for (k, m) in per_shell.iter().enumerate() {
        out.ualpha[k] = m[0];
        out.alpha[k] = m[1];
        out.rho[k] = m[2];
        out.sigma[k] = m[3];
    }
    out
}
