//! Born-Infeld constitutive structure with the field-strength constant set to one.
//!
//! Every quantity derives from `ell = sqrt(1 + I1 - I2^2)`. The Lagrangian is
//! `1 - ell`. The Maxwell tensor `M` closes the system through `dF = dM = 0`.
//! The tensor `H` supplies the principal part of the quasilinear system in the
//! form `H^{mu nu kappa lambda} d_mu F_{kappa lambda} = 0`.

use crate::error::{MbiError, Result};
use crate::minkowski::{
    cross, em_decompose, hodge_dual, invariants, levi_civita_upper, Mat4, Metric, ThreeVector,
    TwoForm,
};

/// Threshold on `ell^2` below which a state counts as degenerate.
pub const ELL_SQ_MIN: f64 = 1e-10;

/// Invariants and `ell` of a two-form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MbiScalars {
    pub i1: f64,
    pub i2: f64,
    pub ell: f64,
}

impl MbiScalars {
    /// Evaluates the invariants and `ell`, failing outside the admissible region.
    pub fn of(f: &TwoForm) -> Result<Self> {
        let (i1, i2) = invariants(f);
        let ell_sq = 1.0 + i1 - i2 * i2;
        if !(ell_sq > ELL_SQ_MIN) {
            return Err(MbiError::DegenerateState { ell_sq, node: None });
        }
        Ok(Self { i1, i2, ell: ell_sq.sqrt() })
    }

    /// The Lagrangian density `1 - ell`.
    pub fn lagrangian(&self) -> f64 {
        1.0 - self.ell
    }
}

/// `ell = sqrt(1 + I1 - I2^2)`.
pub fn ell(f: &TwoForm) -> Result<f64> {
    Ok(MbiScalars::of(f)?.ell)
}

/// Born-Infeld Lagrangian density `1 - ell`.
pub fn lagrangian(f: &TwoForm) -> Result<f64> {
    Ok(MbiScalars::of(f)?.lagrangian())
}

/// Maxwell tensor `M = ell^{-1} (*F + I2 F)`, lower indices.
pub fn maxwell_tensor(f: &TwoForm) -> Result<TwoForm> {
    let sc = MbiScalars::of(f)?;
    Ok((hodge_dual(f) + *f * sc.i2) * (1.0 / sc.ell))
}

/// Dual Maxwell tensor `*M = -ell^{-1} (F - I2 *F)`, lower indices.
pub fn maxwell_dual(f: &TwoForm) -> Result<TwoForm> {
    let sc = MbiScalars::of(f)?;
    Ok((*f - hodge_dual(f) * sc.i2) * (-1.0 / sc.ell))
}

/// Magnetic induction and electric displacement at a point; the solver unknowns.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StatePoint {
    pub b: ThreeVector,
    pub d: ThreeVector,
}

/// Electric displacement and magnetic field from `(E, B)`.
pub fn d_h_of_eb(e: &ThreeVector, b: &ThreeVector) -> Result<(ThreeVector, ThreeVector)> {
    let e_dot_b = e.dot(b);
    let ell_sq = 1.0 + b.norm_sq() - e.norm_sq() - e_dot_b * e_dot_b;
    if !(ell_sq > ELL_SQ_MIN) {
        return Err(MbiError::DegenerateState { ell_sq, node: None });
    }
    let inv_root = 1.0 / ell_sq.sqrt();
    let d = (*e + *b * e_dot_b) * inv_root;
    let h = (*b - *e * e_dot_b) * inv_root;
    Ok((d, h))
}

/// Electric field and magnetic field from `(B, D)`; defined for all finite states.
pub fn e_h_of_db(state: &StatePoint) -> (ThreeVector, ThreeVector) {
    let (e, h, _) = e_h_ell_sq_of_db(state);
    (e, h)
}

/// `E`, `H` and `ell^2` from `(B, D)` in one pass.
pub fn e_h_ell_sq_of_db(state: &StatePoint) -> (ThreeVector, ThreeVector, f64) {
    let StatePoint { b, d } = state;
    let d_cross_b = cross(d, b);
    let b_sq = b.norm_sq();
    let w_sq = 1.0 + b_sq + d.norm_sq() + d_cross_b.norm_sq();
    let inv_w = 1.0 / w_sq.sqrt();
    let e = (*d + cross(b, &d_cross_b)) * inv_w;
    let h = (*b - cross(d, &d_cross_b)) * inv_w;
    let num = 1.0 + b_sq;
    (e, h, num * num / w_sq)
}

/// `ell` expressed through `(B, D)`: `ell^2 = (1+|B|^2)^2 / (1+|B|^2+|D|^2+|B x D|^2)`.
pub fn ell_of_db(state: &StatePoint) -> f64 {
    let b_sq = state.b.norm_sq();
    let num = 1.0 + b_sq;
    let den = 1.0 + b_sq + state.d.norm_sq() + cross(&state.b, &state.d).norm_sq();
    num / den.sqrt()
}

/// Dense rank-four tensor with upper indices, stored row-major over `(mu, nu, kappa, lambda)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankFourTensor {
    c: Box<[f64; 256]>,
}

impl RankFourTensor {
    pub fn zero() -> Self {
        Self { c: Box::new([0.0; 256]) }
    }

    #[inline]
    fn index(mu: usize, nu: usize, kappa: usize, lambda: usize) -> usize {
        ((mu * 4 + nu) * 4 + kappa) * 4 + lambda
    }

    /// Builds a tensor from a component function.
    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                for kappa in 0..4 {
                    for lambda in 0..4 {
                        t.c[Self::index(mu, nu, kappa, lambda)] = f(mu, nu, kappa, lambda);
                    }
                }
            }
        }
        t
    }

    #[inline]
    pub fn get(&self, mu: usize, nu: usize, kappa: usize, lambda: usize) -> f64 {
        self.c[Self::index(mu, nu, kappa, lambda)]
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.c.iter().zip(other.c.iter()).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Contraction with lower-index two-forms `T^{mu nu kappa lambda} A_{kappa lambda}`,
    /// returned as an upper-index matrix.
    pub fn contract_last_pair(&self, a: &TwoForm) -> Mat4 {
        let al = a.lower();
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                let mut acc = 0.0;
                for (kappa, row) in al.iter().enumerate() {
                    for (lambda, v) in row.iter().enumerate() {
                        acc += self.get(mu, nu, kappa, lambda) * v;
                    }
                }
                acc
            })
        })
    }
}

/// `g^{mu kappa} g^{nu lambda} - g^{mu lambda} g^{nu kappa}`.
fn metric_wedge(mu: usize, nu: usize, kappa: usize, lambda: usize) -> f64 {
    let g = |a: usize, b: usize| if a == b { Metric::diag(a) } else { 0.0 };
    g(mu, kappa) * g(nu, lambda) - g(mu, lambda) * g(nu, kappa)
}

struct Ingredients {
    sc: MbiScalars,
    f_up: Mat4,
    dual_up: Mat4,
}

fn ingredients(f: &TwoForm) -> Result<Ingredients> {
    Ok(Ingredients { sc: MbiScalars::of(f)?, f_up: f.upper(), dual_up: hodge_dual(f).upper() })
}

/// The tensor `h^{mu nu kappa lambda}`, which satisfies `h = -d(*M)/dF` on antisymmetric directions.
pub fn h_tensor(f: &TwoForm) -> Result<RankFourTensor> {
    let Ingredients { sc, f_up: fu, dual_up: du } = ingredients(f)?;
    let inv_l = 1.0 / sc.ell;
    let inv_l3 = inv_l * inv_l * inv_l;
    let i2 = sc.i2;
    Ok(RankFourTensor::from_fn(|m, n, k, l| {
        0.5 * (inv_l * metric_wedge(m, n, k, l) - inv_l3 * fu[m][n] * fu[k][l]
            + i2 * inv_l3 * (fu[m][n] * du[k][l] + du[m][n] * fu[k][l])
            - (inv_l + i2 * i2 * inv_l3) * du[m][n] * du[k][l]
            - inv_l * i2 * levi_civita_upper([m, n, k, l]))
    }))
}

/// The principal tensor `H` and its nonlinear part `H_tri`, with `H = 1/2 (g g - g g) + H_tri`.
pub fn big_h_tensor(f: &TwoForm) -> Result<(RankFourTensor, RankFourTensor)> {
    let Ingredients { sc, f_up: fu, dual_up: du } = ingredients(f)?;
    let inv_l2 = 1.0 / (sc.ell * sc.ell);
    let i2 = sc.i2;
    let tri = RankFourTensor::from_fn(|m, n, k, l| {
        0.5 * (-inv_l2 * fu[m][n] * fu[k][l]
            + i2 * inv_l2 * (fu[m][n] * du[k][l] + du[m][n] * fu[k][l])
            - (1.0 + i2 * i2 * inv_l2) * du[m][n] * du[k][l])
    });
    let full = RankFourTensor::from_fn(|m, n, k, l| 0.5 * metric_wedge(m, n, k, l) + tri.get(m, n, k, l));
    Ok((full, tri))
}

/// `H` rebuilt from `h` through `H = ell (h + 1/2 ell^{-1} I2 eps)`.
pub fn big_h_from_h(f: &TwoForm) -> Result<RankFourTensor> {
    let sc = MbiScalars::of(f)?;
    let h = h_tensor(f)?;
    Ok(RankFourTensor::from_fn(|m, n, k, l| {
        sc.ell * (h.get(m, n, k, l) + 0.5 / sc.ell * sc.i2 * levi_civita_upper([m, n, k, l]))
    }))
}

/// Reciprocal Born-Infeld metric `g^{mu nu} - (1+I1)^{-1} F^{mu kappa} F^nu_kappa`.
pub fn bi_inverse_metric(f: &TwoForm) -> Result<Mat4> {
    let (i1, _) = invariants(f);
    let one_plus = 1.0 + i1;
    if !(one_plus > ELL_SQ_MIN) {
        return Err(MbiError::DegenerateState { ell_sq: one_plus, node: None });
    }
    let fu = f.upper();
    Ok(std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let ff: f64 = (0..4).map(|k| fu[mu][k] * fu[nu][k] * Metric::diag(k)).sum();
            let g = if mu == nu { Metric::diag(mu) } else { 0.0 };
            g - ff / one_plus
        })
    }))
}

/// Convenience: `(E, B)` of `F` and its Born-Infeld `(D, H)`.
pub fn fields_of(f: &TwoForm) -> Result<[ThreeVector; 4]> {
    let (e, b) = em_decompose(f);
    let (d, h) = d_h_of_eb(&e, &b)?;
    Ok([e, b, d, h])
}
