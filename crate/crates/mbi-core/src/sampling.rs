//! Seeded random inputs for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::minkowski::{em_recompose, FourVector, ThreeVector, TwoForm};

/// Half-width of the sampling box for the electric field.
pub const E_BOX: f64 = 0.9;
/// Half-width of the sampling box for the magnetic induction.
pub const B_BOX: f64 = 3.0;
/// States with `ell^2` at or below this value are rejected.
pub const ELL_SQ_REJECT: f64 = 1e-6;

/// Deterministic generator of admissible fields, variations and causal vectors.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn three_vector(&mut self, half_width: f64) -> ThreeVector {
        ThreeVector(std::array::from_fn(|_| self.rng.gen_range(-half_width..half_width)))
    }

    /// `(E, B)` uniform in `[-0.9, 0.9]^3 x [-3, 3]^3`, rejecting `ell^2 <= 1e-6`.
    pub fn admissible_eb(&mut self) -> (ThreeVector, ThreeVector) {
        loop {
            let e = self.three_vector(E_BOX);
            let b = self.three_vector(B_BOX);
            let eb = e.dot(&b);
            if 1.0 + b.norm_sq() - e.norm_sq() - eb * eb > ELL_SQ_REJECT {
                return (e, b);
            }
        }
    }

    /// An admissible background two-form.
    pub fn admissible_two_form(&mut self) -> TwoForm {
        let (e, b) = self.admissible_eb();
        em_recompose(&e, &b)
    }

    /// A two-form with independent components uniform in `[-scale, scale]`.
    pub fn two_form(&mut self, scale: f64) -> TwoForm {
        TwoForm::from_independent(std::array::from_fn(|_| self.rng.gen_range(-scale..scale)))
    }

    /// A variation with unit Euclidean norm.
    pub fn unit_two_form(&mut self) -> TwoForm {
        loop {
            let f = self.two_form(1.0);
            let n = f.norm_sq().sqrt();
            if n > 1e-3 {
                return f * (1.0 / n);
            }
        }
    }

    /// A future-directed causal vector; one draw in four is exactly null in direction.
    pub fn future_causal(&mut self) -> FourVector {
        let dir = loop {
            let v = self.three_vector(1.0);
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                break v * (1.0 / n);
            }
        };
        let speed = if self.rng.gen_range(0..4) == 0 { 1.0 } else { self.rng.gen_range(0.0..1.0) };
        let time = self.rng.gen_range(0.1..2.0);
        FourVector::from_parts(time, &(dir * (speed * time)))
    }

    /// A base point `(t, x)` with `t` in `[0, t_max)` and `x` in a box of half-width `x_max`,
    /// kept away from the spatial origin.
    pub fn base_point(&mut self, t_max: f64, x_max: f64) -> (f64, ThreeVector) {
        let t = self.rng.gen_range(0.0..t_max);
        loop {
            let x = self.three_vector(x_max);
            if x.norm() > 1e-3 * x_max {
                return (t, x);
            }
        }
    }
}
