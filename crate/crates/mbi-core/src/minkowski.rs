//! Pointwise tensor algebra on Minkowski space with the inertial metric
//! `g = diag(-1, 1, 1, 1)`.
//!
//! Conventions fixed throughout the workspace:
//!
//! * orientation `[0123] = +1`, with `eps_{0123} = +1` and `eps^{0123} = -1`;
//! * the spatial volume form has `eps_{123} = +1`;
//! * `(*F)^{mu nu} = 1/2 eps^{kappa lambda mu nu} F_{kappa lambda}`;
//! * `E_j = F_{j0}` and `B_j = 1/2 eps_{jab} F_{ab}`, which makes the dual act as
//!   `*(E, B) = (-B, E)`.
//!
//! Two-forms are stored through their six independent lower-index components so
//! antisymmetry holds by construction.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{MbiError, Result};

/// Smallest radius at which a null frame is built for isolated points.
pub const POINTWISE_R_MIN: f64 = 1e-12;

/// Below this length of `z x omega` the frame seed switches from `z` to `x`.
const FRAME_SEED_SWITCH: f64 = 1e-8;

/// The six index pairs `(mu, nu)` with `mu < nu`, in storage order.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A 4x4 real matrix indexed as `m[mu][nu]`.
pub type Mat4 = [[f64; 4]; 4];

/// The Minkowski metric in inertial coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Metric;

impl Metric {
    /// Diagonal entries of `g_{mu nu}` (identical to those of the inverse metric).
    pub const DIAG: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

    /// Diagonal entry `g_{mu mu}`.
    #[inline]
    pub fn diag(mu: usize) -> f64 {
        Self::DIAG[mu]
    }

    /// Full component matrix of `g` (equal to that of `g^{-1}`).
    pub fn components() -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            row[mu] = Self::DIAG[mu];
        }
        m
    }

    /// Determinant of `g`.
    pub fn det() -> f64 {
        -1.0
    }

    /// `g(X, Y)`.
    pub fn inner(x: &FourVector, y: &FourVector) -> f64 {
        (0..4).map(|mu| Self::DIAG[mu] * x.0[mu] * y.0[mu]).sum()
    }

    /// Lowers the index of a vector.
    pub fn lower(x: &FourVector) -> OneForm {
        OneForm(std::array::from_fn(|mu| Self::DIAG[mu] * x.0[mu]))
    }

    /// Raises the index of a one-form.
    pub fn raise(w: &OneForm) -> FourVector {
        FourVector(std::array::from_fn(|mu| Self::DIAG[mu] * w.0[mu]))
    }
}

/// Sign of the permutation `idx` of `(0, 1, 2, 3)`, or zero on a repeated index.
/// This is `eps_{idx}` with `eps_{0123} = +1`.
pub fn levi_civita_lower(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Contravariant volume form `eps^{idx}`; raising four indices with `g` flips the sign.
pub fn levi_civita_upper(idx: [usize; 4]) -> f64 {
    -levi_civita_lower(idx)
}

/// Spatial volume form `eps_{ijk}` with `eps_{123} = +1`; indices are `0..3` here.
pub fn levi_civita_spatial(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        return 0.0;
    }
    let mut sign = 1.0;
    if i > j {
        sign = -sign;
    }
    if i > k {
        sign = -sign;
    }
    if j > k {
        sign = -sign;
    }
    sign
}

/// A vector tangent to a constant-time slice, e.g. E, B, D, H.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ThreeVector(pub [f64; 3]);

impl ThreeVector {
    pub const ZERO: Self = Self([0.0; 3]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Cross product `(u x v)^i = eps^i_{jk} u^j v^k`.
    pub fn cross(&self, other: &Self) -> Self {
        cross(self, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// Cross product of two spatial vectors.
pub fn cross(u: &ThreeVector, v: &ThreeVector) -> ThreeVector {
    let [a1, a2, a3] = u.0;
    let [b1, b2, b3] = v.0;
    ThreeVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
}

impl Add for ThreeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for ThreeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for ThreeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl Mul<f64> for ThreeVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }
}

/// Contravariant components `X^mu` of a spacetime vector.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z])
    }

    /// The vector with time component `t` and spatial part `x`.
    pub fn from_parts(t: f64, x: &ThreeVector) -> Self {
        Self([t, x.0[0], x.0[1], x.0[2]])
    }

    /// Coordinate basis vector `T_(mu) = d/dx^mu`.
    pub fn basis(mu: usize) -> Self {
        let mut v = [0.0; 4];
        v[mu] = 1.0;
        Self(v)
    }

    pub fn spatial(&self) -> ThreeVector {
        ThreeVector([self.0[1], self.0[2], self.0[3]])
    }

    /// Euclidean length squared of the component array.
    pub fn euclidean_norm_sq(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<f64> for FourVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }
}

/// Covariant components `w_mu` of a one-form, e.g. an interior product `i_X F`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OneForm(pub [f64; 4]);

impl OneForm {
    pub fn spatial(&self) -> ThreeVector {
        ThreeVector([self.0[1], self.0[2], self.0[3]])
    }

    /// Euclidean length squared of the component array.
    pub fn euclidean_norm_sq(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    /// Pairing `w(X) = w_mu X^mu`.
    pub fn apply(&self, x: &FourVector) -> f64 {
        (0..4).map(|mu| self.0[mu] * x.0[mu]).sum()
    }
}

/// An antisymmetric covariant two-tensor `F_{mu nu}`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TwoForm {
    /// Components `F_{mu nu}` for `(mu, nu)` in [`PAIRS`] order.
    c: [f64; 6],
}

impl TwoForm {
    pub const ZERO: Self = Self { c: [0.0; 6] };

    /// Builds a two-form from its components over [`PAIRS`].
    pub fn from_independent(c: [f64; 6]) -> Self {
        Self { c }
    }

    /// The independent components over [`PAIRS`].
    pub fn independent(&self) -> [f64; 6] {
        self.c
    }

    /// Builds the antisymmetric part of a full matrix: `(m - m^T)/2`.
    pub fn from_matrix_antisymmetrized(m: &Mat4) -> Self {
        Self { c: PAIRS.map(|(a, b)| 0.5 * (m[a][b] - m[b][a])) }
    }

    /// Component `F_{mu nu}`.
    #[inline]
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        match (mu, nu) {
            (0, 1) => self.c[0],
            (0, 2) => self.c[1],
            (0, 3) => self.c[2],
            (1, 2) => self.c[3],
            (1, 3) => self.c[4],
            (2, 3) => self.c[5],
            (1, 0) => -self.c[0],
            (2, 0) => -self.c[1],
            (3, 0) => -self.c[2],
            (2, 1) => -self.c[3],
            (3, 1) => -self.c[4],
            (3, 2) => -self.c[5],
            _ => 0.0,
        }
    }

    /// Lower-index component matrix `F_{mu nu}`.
    pub fn lower(&self) -> Mat4 {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.get(mu, nu)))
    }

    /// Upper-index component matrix `F^{mu nu}`.
    pub fn upper(&self) -> Mat4 {
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| Metric::diag(mu) * Metric::diag(nu) * self.get(mu, nu))
        })
    }

    /// Mixed components `F_mu^nu = F_{mu kappa} g^{kappa nu}`.
    pub fn mixed(&self) -> Mat4 {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.get(mu, nu) * Metric::diag(nu)))
    }

    /// Full contraction `F_{kappa lambda} G^{kappa lambda}`.
    pub fn contract(&self, other: &Self) -> f64 {
        PAIRS
            .iter()
            .zip(self.c.iter().zip(other.c.iter()))
            .map(|(&(a, b), (f, g))| 2.0 * Metric::diag(a) * Metric::diag(b) * f * g)
            .sum()
    }

    /// Euclidean norm squared with all indices contracted against the identity.
    pub fn norm_sq(&self) -> f64 {
        2.0 * self.c.iter().map(|v| v * v).sum::<f64>()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `F(X, Y) = F_{mu nu} X^mu Y^nu`.
    pub fn eval(&self, x: &FourVector, y: &FourVector) -> f64 {
        PAIRS
            .iter()
            .zip(self.c.iter())
            .map(|(&(a, b), f)| f * (x.0[a] * y.0[b] - x.0[b] * y.0[a]))
            .sum()
    }
}

impl Add for TwoForm {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { c: std::array::from_fn(|i| self.c[i] + o.c[i]) }
    }
}

impl Sub for TwoForm {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { c: std::array::from_fn(|i| self.c[i] - o.c[i]) }
    }
}

impl Neg for TwoForm {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: self.c.map(|v| -v) }
    }
}

impl Mul<f64> for TwoForm {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self { c: self.c.map(|v| v * s) }
    }
}

/// Hodge dual `*F`, returned with lower indices.
///
/// Evaluated through the electric/magnetic split, where the contraction with the
/// volume form reduces to `*(E, B) = (-B, E)`.
pub fn hodge_dual(f: &TwoForm) -> TwoForm {
    let (e, b) = em_decompose(f);
    em_recompose(&(-b), &e)
}

/// Electromagnetic invariants `I1 = 1/2 F.F = |B|^2 - |E|^2` and `I2 = 1/4 F.*F = E.B`.
pub fn invariants(f: &TwoForm) -> (f64, f64) {
    let i1 = 0.5 * f.contract(f);
    let i2 = 0.25 * f.contract(&hodge_dual(f));
    (i1, i2)
}

/// Splits `F` into its electric field `E_j = F_{j0}` and magnetic induction
/// `B_j = 1/2 eps_{jab} F_{ab}`.
pub fn em_decompose(f: &TwoForm) -> (ThreeVector, ThreeVector) {
    let e = ThreeVector([f.get(1, 0), f.get(2, 0), f.get(3, 0)]);
    let b = ThreeVector([f.get(2, 3), f.get(3, 1), f.get(1, 2)]);
    (e, b)
}

/// Inverse of [`em_decompose`]: `F_{j0} = E_j`, `F_{jk} = eps_{ijk} B^i`.
pub fn em_recompose(e: &ThreeVector, b: &ThreeVector) -> TwoForm {
    let [e1, e2, e3] = e.0;
    let [b1, b2, b3] = b.0;
    TwoForm::from_independent([-e1, -e2, -e3, b3, -b2, b1])
}

/// Interior product `(i_X F)_mu = F_{mu kappa} X^kappa`.
pub fn interior_product(x: &FourVector, f: &TwoForm) -> OneForm {
    OneForm(std::array::from_fn(|mu| (0..4).map(|k| f.get(mu, k) * x.0[k]).sum()))
}

/// The null frame `{uL, L, e_1, e_2}` attached to a point off the spatial origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullFrame {
    /// Time of the base point.
    pub t: f64,
    /// Spatial position of the base point.
    pub x: ThreeVector,
    /// Radial unit vector `omega = x / r`.
    pub omega: ThreeVector,
    /// Ingoing null vector `uL = (1, -omega)`.
    pub ul: FourVector,
    /// Outgoing null vector `L = (1, omega)`.
    pub l: FourVector,
    /// Orthonormal sphere tangents with `e_2 = omega x e_1`.
    pub e: [FourVector; 2],
}

impl NullFrame {
    /// Radius `r = |x|` of the base point.
    pub fn r(&self) -> f64 {
        self.x.norm()
    }

    /// Null coordinate `q = r - t`.
    pub fn q(&self) -> f64 {
        self.r() - self.t
    }

    /// Null coordinate `s = r + t`.
    pub fn s(&self) -> f64 {
        self.r() + self.t
    }

    /// The four frame vectors in the order `(uL, L, e_1, e_2)`.
    pub fn vectors(&self) -> [FourVector; 4] {
        [self.ul, self.l, self.e[0], self.e[1]]
    }

    /// Dual coframe `theta^i` with `theta^i(X_j) = delta^i_j` for the frame order of
    /// [`NullFrame::vectors`].
    pub fn coframe(&self) -> [OneForm; 4] {
        let lower_l = Metric::lower(&self.l);
        let lower_ul = Metric::lower(&self.ul);
        [
            OneForm(lower_l.0.map(|v| -0.5 * v)),
            OneForm(lower_ul.0.map(|v| -0.5 * v)),
            Metric::lower(&self.e[0]),
            Metric::lower(&self.e[1]),
        ]
    }
}

/// Builds the null frame at `(t, x)` with the pointwise radius cutoff.
pub fn null_frame_at(t: f64, x: &ThreeVector) -> Result<NullFrame> {
    null_frame_with_cutoff(t, x, POINTWISE_R_MIN)
}

/// Builds the null frame at `(t, x)`, failing when `|x| < r_min`.
///
/// The sphere tangents come from Gram-Schmidt on `(z x omega, omega x (z x omega))`,
/// seeded with `x` instead of `z` when `|z x omega| < 1e-8`.
pub fn null_frame_with_cutoff(t: f64, x: &ThreeVector, r_min: f64) -> Result<NullFrame> {
    let r = x.norm();
    if !(r >= r_min) || r == 0.0 {
        return Err(MbiError::FrameSingularity { r, r_min });
    }
    let omega = *x * (1.0 / r);
    let mut seed_cross = cross(&ThreeVector::new(0.0, 0.0, 1.0), &omega);
    if seed_cross.norm() < FRAME_SEED_SWITCH {
        seed_cross = cross(&ThreeVector::new(1.0, 0.0, 0.0), &omega);
    }
    let e1 = seed_cross * (1.0 / seed_cross.norm());
    let e2_raw = cross(&omega, &e1);
    let e2_raw = e2_raw - e1 * e1.dot(&e2_raw);
    let e2 = e2_raw * (1.0 / e2_raw.norm());
    Ok(NullFrame {
        t,
        x: *x,
        omega,
        ul: FourVector::from_parts(1.0, &(-omega)),
        l: FourVector::from_parts(1.0, &omega),
        e: [FourVector::from_parts(0.0, &e1), FourVector::from_parts(0.0, &e2)],
    })
}

/// Null components of a two-form relative to a [`NullFrame`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NullComponents {
    /// `F(e_A, uL)`.
    pub ualpha: [f64; 2],
    /// `F(e_A, L)`.
    pub alpha: [f64; 2],
    /// `1/2 F(uL, L)`.
    pub rho: f64,
    /// `F(e_1, e_2)`.
    pub sigma: f64,
    /// Null coordinate `q = r - t` of the base point.
    pub q: f64,
    /// Null coordinate `s = r + t` of the base point.
    pub s: f64,
}

impl NullComponents {
    pub fn ualpha_norm_sq(&self) -> f64 {
        self.ualpha[0] * self.ualpha[0] + self.ualpha[1] * self.ualpha[1]
    }

    pub fn alpha_norm_sq(&self) -> f64 {
        self.alpha[0] * self.alpha[0] + self.alpha[1] * self.alpha[1]
    }

    /// `|ualpha|^2 + |alpha|^2 + 2(rho^2 + sigma^2)`, the Euclidean `|F|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.ualpha_norm_sq() + self.alpha_norm_sq() + 2.0 * (self.rho * self.rho + self.sigma * self.sigma)
    }
}

/// Area form of the spheres in the frame basis: `eps_{12} = +1` since `e_2 = omega x e_1`.
pub const SPHERE_AREA_FORM: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

/// Null decomposition of `F` in the frame `fr`.
pub fn null_decompose(f: &TwoForm, fr: &NullFrame) -> NullComponents {
    NullComponents {
        ualpha: [f.eval(&fr.e[0], &fr.ul), f.eval(&fr.e[1], &fr.ul)],
        alpha: [f.eval(&fr.e[0], &fr.l), f.eval(&fr.e[1], &fr.l)],
        rho: 0.5 * f.eval(&fr.ul, &fr.l),
        sigma: f.eval(&fr.e[0], &fr.e[1]),
        q: fr.q(),
        s: fr.s(),
    }
}

/// Reassembles the two-form whose null components in `fr` are `nc`.
pub fn null_recompose(nc: &NullComponents, fr: &NullFrame) -> TwoForm {
    // Frame-basis values F(X_i, X_j) for i < j in the order (uL, L, e_1, e_2).
    let frame_values = [
        (0, 1, 2.0 * nc.rho),
        (0, 2, -nc.ualpha[0]),
        (0, 3, -nc.ualpha[1]),
        (1, 2, -nc.alpha[0]),
        (1, 3, -nc.alpha[1]),
        (2, 3, nc.sigma),
    ];
    let theta = fr.coframe();
    let mut m = [[0.0; 4]; 4];
    for &(i, j, value) in &frame_values {
        for (mu, row) in m.iter_mut().enumerate() {
            for (nu, entry) in row.iter_mut().enumerate() {
                *entry += value * (theta[i].0[mu] * theta[j].0[nu] - theta[j].0[mu] * theta[i].0[nu]);
            }
        }
    }
    TwoForm::from_matrix_antisymmetrized(&m)
}

/// Null components of `*F` computed from those of `F`.
pub fn dual_null_components(nc: &NullComponents) -> NullComponents {
    let eps = SPHERE_AREA_FORM;
    let ua = nc.ualpha;
    let a = nc.alpha;
    NullComponents {
        ualpha: std::array::from_fn(|k| -(0..2).map(|j| ua[j] * eps[j][k]).sum::<f64>()),
        alpha: std::array::from_fn(|k| (0..2).map(|j| a[j] * eps[j][k]).sum::<f64>()),
        rho: nc.sigma,
        sigma: -nc.rho,
        q: nc.q,
        s: nc.s,
    }
}

/// First null form `Q1(F, G) = F^{kappa lambda} G_{kappa lambda}`.
pub fn null_form_q1(f: &TwoForm, g: &TwoForm) -> f64 {
    f.contract(g)
}

/// Second null form `Q2(F, G) = (*F)^{kappa lambda} G_{kappa lambda}`.
pub fn null_form_q2(f: &TwoForm, g: &TwoForm) -> f64 {
    hodge_dual(f).contract(g)
}

/// `Q1` written through null components, with no `ualpha ualpha` or `alpha alpha` products.
pub fn null_form_q1_from_components(f: &NullComponents, g: &NullComponents) -> f64 {
    let ua_a = f.ualpha[0] * g.alpha[0] + f.ualpha[1] * g.alpha[1];
    let a_ua = g.ualpha[0] * f.alpha[0] + g.ualpha[1] * f.alpha[1];
    -ua_a - a_ua - 2.0 * f.rho * g.rho + 2.0 * f.sigma * g.sigma
}

/// `Q2` written through null components.
pub fn null_form_q2_from_components(f: &NullComponents, g: &NullComponents) -> f64 {
    let eps = SPHERE_AREA_FORM;
    let mut area = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            area += eps[a][b] * (f.ualpha[a] * g.alpha[b] + g.ualpha[a] * f.alpha[b]);
        }
    }
    area - 2.0 * f.sigma * g.rho - 2.0 * f.rho * g.sigma
}
