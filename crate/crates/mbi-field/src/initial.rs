//! Divergence-free initial data built as discrete curls of smooth potentials.

use mbi_core::minkowski::ThreeVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{Grid, VectorField};
use crate::solver::FieldState;
use crate::stencil::{Stencil, StencilOrder};

/// Initial-data families. `B = curl_h A1` and `D = curl_h A2`, so both are
/// discretely divergence-free.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `A1 = a g (z x (x - c))`, `A2 = a g (x x (x - c))` with `g = exp(-|x - c|^2 / w^2)`.
    GaussianLoop { amplitude: f64, width: f64, center: [f64; 3] },
    /// A Gaussian-enveloped wave train moving along `k`:
    /// `A1 = a g sin(k.(x - c)) p`, `A2 = a g sin(k.(x - c)) (p x k/|k|)` with `p` orthogonal to `k`.
    PlanePacket { amplitude: f64, k: [f64; 3], width: f64, center: [f64; 3] },
    /// Seeded random combination of the lowest periodic Fourier modes, rescaled so
    /// that the largest component of `B` or `D` equals `amplitude`.
    RandomSmooth { seed: u64, amplitude: f64, max_mode: u32 },
}

impl InitialData {
    /// Radius outside which the data is negligible (below `exp(-9)` of its peak),
    /// or `None` for data filling the periodic cell.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            InitialData::GaussianLoop { width, center, .. } | InitialData::PlanePacket { width, center, .. } => {
                Some(3.0 * width + ThreeVector(*center).norm())
            }
            InitialData::RandomSmooth { .. } => None,
        }
    }

    pub fn amplitude(&self) -> f64 {
        match self {
            InitialData::GaussianLoop { amplitude, .. }
            | InitialData::PlanePacket { amplitude, .. }
            | InitialData::RandomSmooth { amplitude, .. } => *amplitude,
        }
    }
}

fn unit_or(v: ThreeVector, fallback: ThreeVector) -> ThreeVector {
    let n = v.norm();
    if n > 1e-12 {
        v * (1.0 / n)
    } else {
        fallback
    }
}

/// Samples the two potentials of `spec` at the nodes of `grid`.
pub fn potentials(grid: &Grid, spec: &InitialData) -> (VectorField, VectorField) {
    let x_hat = ThreeVector::new(1.0, 0.0, 0.0);
    let z_hat = ThreeVector::new(0.0, 0.0, 1.0);
    match spec {
        InitialData::GaussianLoop { amplitude, width, center } => {
            let (a, w2, c) = (*amplitude, width * width, ThreeVector(*center));
            let gauss = move |x: ThreeVector| {
                let rel = x - c;
                (rel, a * (-rel.norm_sq() / w2).exp())
            };
            let a1 = VectorField::from_fn(*grid, |x| {
                let (rel, g) = gauss(x);
                z_hat.cross(&rel) * g
            });
            let a2 = VectorField::from_fn(*grid, |x| {
                let (rel, g) = gauss(x);
                x_hat.cross(&rel) * g
            });
            (a1, a2)
        }
        InitialData::PlanePacket { amplitude, k, width, center } => {
            let (a, w2, c, k) = (*amplitude, width * width, ThreeVector(*center), ThreeVector(*k));
            let k_hat = unit_or(k, x_hat);
            let p = unit_or(k_hat.cross(&z_hat), unit_or(k_hat.cross(&x_hat), z_hat));
            let q = p.cross(&k_hat);
            let wave = move |x: ThreeVector| {
                let rel = x - c;
                a * (-rel.norm_sq() / w2).exp() * k.dot(&rel).sin()
            };
            (VectorField::from_fn(*grid, |x| p * wave(x)), VectorField::from_fn(*grid, |x| q * wave(x)))
        }
        InitialData::RandomSmooth { seed, max_mode, .. } => {
            let modes = random_modes(*seed, *max_mode);
            let base = 2.0 * std::f64::consts::PI / grid.extent();
            let origin = ThreeVector(grid.origin());
            let eval = |x: ThreeVector, which: usize| {
                let rel = x - origin;
                let mut acc = ThreeVector::ZERO;
                for m in &modes {
                    let phase = base * (m.k[0] * rel.0[0] + m.k[1] * rel.0[1] + m.k[2] * rel.0[2]);
                    let (s, co) = phase.sin_cos();
                    acc = acc + m.cos[which] * co + m.sin[which] * s;
                }
                acc
            };
            (VectorField::from_fn(*grid, |x| eval(x, 0)), VectorField::from_fn(*grid, |x| eval(x, 1)))
        }
    }
}

struct Mode {
    k: [f64; 3],
    cos: [ThreeVector; 2],
    sin: [ThreeVector; 2],
}

fn random_modes(seed: u64, max_mode: u32) -> Vec<Mode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = max_mode as i64;
    let mut out = Vec::new();
    for i in -m..=m {
        for j in -m..=m {
            for k in -m..=m {
                if i == 0 && j == 0 && k == 0 {
                    continue;
                }
                let mut draw = || ThreeVector(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                out.push(Mode { k: [i as f64, j as f64, k as f64], cos: [draw(), draw()], sin: [draw(), draw()] });
            }
        }
    }
    out
}

/// Builds the initial state `B = curl_h A1`, `D = curl_h A2` at `t = 0`.
pub fn make_initial_data(grid: Grid, spec: &InitialData, order: StencilOrder) -> FieldState {
    let stencil = Stencil::new(grid, order);
    let (a1, a2) = potentials(&grid, spec);
    let mut b = stencil.curl(&a1);
    let mut d = stencil.curl(&a2);
    if let InitialData::RandomSmooth { amplitude, .. } = spec {
        let peak = b.max_abs().max(d.max_abs());
        let factor = if peak > 0.0 { amplitude / peak } else { 0.0 };
        b.scale(factor);
        d.scale(factor);
    }
    FieldState { grid, t: 0.0, b, d }
}
