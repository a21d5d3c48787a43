//! Energy-momentum tensors, the canonical stress of the equations of variation,
//! energy currents, multiplier positivity and the conformal Killing generators.

use crate::constitutive::{big_h_tensor, bi_inverse_metric, MbiScalars};
use crate::error::{MbiError, Result};
use crate::minkowski::{
    em_decompose, hodge_dual, null_decompose, null_frame_at, FourVector, Mat4, Metric,
    NullComponents, ThreeVector, TwoForm,
};

/// Which tensor a [`StressSample`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressKind {
    /// Born-Infeld energy-momentum tensor.
    EmMbi,
    /// Linear Maxwell energy-momentum tensor.
    EmMaxwell,
    /// Canonical stress of the equations of variation.
    CanonicalStress,
}

/// A rank-two tensor stored with both indices down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressSample {
    pub kind: StressKind,
    lower: Mat4,
}

impl StressSample {
    pub fn from_lower(kind: StressKind, lower: Mat4) -> Self {
        Self { kind, lower }
    }

    /// Components `T_{mu nu}`.
    pub fn lower(&self) -> Mat4 {
        self.lower
    }

    /// Components `T^mu_nu`.
    pub fn mixed(&self) -> Mat4 {
        std::array::from_fn(|mu| std::array::from_fn(|nu| Metric::diag(mu) * self.lower[mu][nu]))
    }

    /// Components `T^{mu nu}`.
    pub fn upper(&self) -> Mat4 {
        std::array::from_fn(|mu| {
            std::array::from_fn(|nu| Metric::diag(mu) * Metric::diag(nu) * self.lower[mu][nu])
        })
    }

    /// `T(X, Y) = T_{mu nu} X^mu Y^nu`.
    pub fn eval(&self, x: &FourVector, y: &FourVector) -> f64 {
        let mut acc = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                acc += self.lower[mu][nu] * x.0[mu] * y.0[nu];
            }
        }
        acc
    }

    /// Trace `T^kappa_kappa`.
    pub fn trace(&self) -> f64 {
        (0..4).map(|mu| Metric::diag(mu) * self.lower[mu][mu]).sum()
    }

    /// Largest absolute component of the lower-index form.
    pub fn max_abs(&self) -> f64 {
        self.lower.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `T_{mu nu} - T_{nu mu}`.
    pub fn antisymmetric_part(&self) -> Mat4 {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.lower[mu][nu] - self.lower[nu][mu]))
    }
}

/// `A_mu^zeta B_{nu zeta}` for two-forms `A`, `B`.
fn contract_second(a: &TwoForm, b: &TwoForm) -> Mat4 {
    let am = a.mixed();
    let bl = b.lower();
    std::array::from_fn(|mu| std::array::from_fn(|nu| (0..4).map(|z| am[mu][z] * bl[nu][z]).sum()))
}

fn metric_entry(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        Metric::diag(mu)
    } else {
        0.0
    }
}

/// Born-Infeld energy-momentum tensor
/// `T_{mu nu} = ell^{-1} (F_{mu kappa} F_nu^kappa - I2^2 g_{mu nu}) + g_{mu nu} (1 - ell)`.
pub fn em_tensor_mbi(f: &TwoForm) -> Result<StressSample> {
    let sc = MbiScalars::of(f)?;
    let ff = contract_second(f, f);
    let lower = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let g = metric_entry(mu, nu);
            (ff[mu][nu] - sc.i2 * sc.i2 * g) / sc.ell + g * (1.0 - sc.ell)
        })
    });
    Ok(StressSample::from_lower(StressKind::EmMbi, lower))
}

/// Linear Maxwell energy-momentum tensor `Fd_mu^zeta Fd_{nu zeta} - 1/4 g_{mu nu} Fd.Fd`.
pub fn em_tensor_maxwell(fdot: &TwoForm) -> StressSample {
    let ff = contract_second(fdot, fdot);
    let sq = fdot.contract(fdot);
    let lower = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| ff[mu][nu] - 0.25 * metric_entry(mu, nu) * sq)
    });
    StressSample::from_lower(StressKind::EmMaxwell, lower)
}

fn check_future_causal(x: &FourVector) -> Result<()> {
    let norm_sq = Metric::inner(x, x);
    // Null vectors assembled in floating point may land a few ulps on the spacelike side.
    let slack = 1e-12 * x.euclidean_norm_sq();
    if norm_sq > slack || !(x.0[0] > 0.0) {
        return Err(MbiError::NotCausal { vector: x.0, norm_sq });
    }
    Ok(())
}

/// `T_MBI(X, Y)` for future-directed causal `X`, `Y`; nonnegative by the dominant energy condition.
pub fn dec_value(f: &TwoForm, x: &FourVector, y: &FourVector) -> Result<f64> {
    check_future_causal(x)?;
    check_future_causal(y)?;
    Ok(em_tensor_mbi(f)?.eval(x, y))
}

/// Canonical stress `S^mu_nu = H^{mu zeta kappa lambda} Fd_{kappa lambda} Fd_{nu zeta}
/// - 1/4 delta^mu_nu H^{zeta eta kappa lambda} Fd_{zeta eta} Fd_{kappa lambda}`,
/// assembled from the dense tensor `H` of the background `F`.
pub fn canonical_stress(f: &TwoForm, fdot: &TwoForm) -> Result<StressSample> {
    let (h, _) = big_h_tensor(f)?;
    let w = h.contract_last_pair(fdot);
    let fl = fdot.lower();
    let full: f64 = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| w[a][b] * fl[a][b]).sum();
    let mixed: Mat4 = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let wf: f64 = (0..4).map(|z| w[mu][z] * fl[nu][z]).sum();
            wf - if mu == nu { 0.25 * full } else { 0.0 }
        })
    });
    let lower = std::array::from_fn(|mu| std::array::from_fn(|nu| Metric::diag(mu) * mixed[mu][nu]));
    Ok(StressSample::from_lower(StressKind::CanonicalStress, lower))
}

/// The canonical stress written as the Maxwell stress of `Fd` plus four
/// correction blocks weighted by `F.Fd` and `*F.Fd`. Algebraically identical to
/// [`canonical_stress`] but cheaper, so the grid diagnostics use it.
pub fn canonical_stress_blocks(f: &TwoForm, fdot: &TwoForm) -> Result<StressSample> {
    let sc = MbiScalars::of(f)?;
    let dual = hodge_dual(f);
    let inv_l2 = 1.0 / (sc.ell * sc.ell);
    let i2 = sc.i2;
    let f_fd = f.contract(fdot);
    let d_fd = dual.contract(fdot);
    let x_f = contract_second(f, fdot);
    let x_d = contract_second(&dual, fdot);
    let maxwell = em_tensor_maxwell(fdot).lower();
    let lower = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let g = metric_entry(mu, nu);
            maxwell[mu][nu]
                + 0.5 * inv_l2 * (-x_f[mu][nu] * f_fd + 0.25 * g * f_fd * f_fd)
                + 0.5 * (1.0 + i2 * i2 * inv_l2) * (-x_d[mu][nu] * d_fd + 0.25 * g * d_fd * d_fd)
                + 0.5 * i2 * inv_l2 * (x_f[mu][nu] * d_fd - 0.25 * g * f_fd * d_fd)
                + 0.5 * i2 * inv_l2 * (x_d[mu][nu] * f_fd - 0.25 * g * f_fd * d_fd)
        })
    });
    Ok(StressSample::from_lower(StressKind::CanonicalStress, lower))
}

/// Closed form of `S_{mu nu} - S_{nu mu}` in terms of `F.Fd` and `*F.Fd`.
pub fn canonical_stress_antisymmetric(f: &TwoForm, fdot: &TwoForm) -> Result<Mat4> {
    let sc = MbiScalars::of(f)?;
    let dual = hodge_dual(f);
    let inv_l2 = 1.0 / (sc.ell * sc.ell);
    let i2 = sc.i2;
    let f_fd = f.contract(fdot);
    let d_fd = dual.contract(fdot);
    let x_f = contract_second(f, fdot);
    let x_d = contract_second(&dual, fdot);
    Ok(std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            0.5 * inv_l2 * f_fd * (x_f[nu][mu] - x_f[mu][nu])
                + 0.5 * (1.0 + i2 * i2 * inv_l2) * d_fd * (x_d[nu][mu] - x_d[mu][nu])
                + 0.5 * i2 * inv_l2 * d_fd * (x_f[mu][nu] - x_f[nu][mu])
                + 0.5 * i2 * inv_l2 * f_fd * (x_d[mu][nu] - x_d[nu][mu])
        })
    }))
}

/// Morawetz vectorfield `Kbar = (1 + t^2 + |x|^2) d_t + 2 t x^j d_j`.
pub fn morawetz_k(t: f64, x: &ThreeVector) -> FourVector {
    FourVector::from_parts(1.0 + t * t + x.norm_sq(), &(*x * (2.0 * t)))
}

/// Squared weighted pointwise norm
/// `(1+q^2)|ualpha|^2 + (1+s^2)|alpha|^2 + (2+q^2+s^2)(rho^2+sigma^2)`.
pub fn knorm_sq(nc: &NullComponents) -> f64 {
    let q2 = nc.q * nc.q;
    let s2 = nc.s * nc.s;
    (1.0 + q2) * nc.ualpha_norm_sq()
        + (1.0 + s2) * nc.alpha_norm_sq()
        + (2.0 + q2 + s2) * (nc.rho * nc.rho + nc.sigma * nc.sigma)
}

/// Weighted pointwise norm, the square root of [`knorm_sq`].
pub fn knorm(nc: &NullComponents) -> f64 {
    knorm_sq(nc).sqrt()
}

/// Squared weighted norm of `F` at `(t, x)`.
///
/// At the spatial origin the weights coincide (`q^2 = s^2 = t^2`) and the value
/// reduces to `(1 + t^2) |F|^2`, which is used when the frame is unavailable.
pub fn knorm_sq_at(f: &TwoForm, t: f64, x: &ThreeVector) -> f64 {
    match null_frame_at(t, x) {
        Ok(fr) => knorm_sq(&null_decompose(f, &fr)),
        Err(_) => (1.0 + t * t) * f.norm_sq(),
    }
}

/// Energy current `J^0 = S(xi0, Kbar) = S_{0 nu} Kbar^nu` of the variation `Fd` on the background `F`.
pub fn energy_current_j0(f: &TwoForm, fdot: &TwoForm, t: f64, x: &ThreeVector) -> Result<f64> {
    let s = canonical_stress_blocks(f, fdot)?;
    Ok(s.eval(&FourVector::basis(0), &morawetz_k(t, x)))
}

/// Multiplier `V^mu = 2 ell^2 (1+I1) (b^{-1})^{mu nu} xi0_nu` with `xi0_nu = (-1, 0, 0, 0)`.
pub fn vmult(f: &TwoForm) -> Result<FourVector> {
    let sc = MbiScalars::of(f)?;
    let binv = bi_inverse_metric(f)?;
    let factor = 2.0 * sc.ell * sc.ell * (1.0 + sc.i1);
    Ok(FourVector(std::array::from_fn(|mu| -factor * binv[mu][0])))
}

/// Energy density `S(xi0, V) = S^mu_nu xi0_mu V^nu` for the local-existence multiplier.
pub fn local_energy_density(f: &TwoForm, fdot: &TwoForm) -> Result<f64> {
    let s = canonical_stress(f, fdot)?;
    Ok(s.eval(&FourVector::basis(0), &vmult(f)?))
}

/// The same density through `2(1+|B|^2) ell^2 S_00 - 2 ell^2 S_{0a} F^{a rho} F_{0 rho}`.
pub fn local_energy_density_explicit(f: &TwoForm, fdot: &TwoForm) -> Result<f64> {
    let sc = MbiScalars::of(f)?;
    let s = canonical_stress(f, fdot)?.lower();
    let (_, b) = em_decompose(f);
    let fu = f.upper();
    let l2 = sc.ell * sc.ell;
    let mut acc = 2.0 * (1.0 + b.norm_sq()) * l2 * s[0][0];
    for a in 1..4 {
        let frho: f64 = (0..4).map(|r| fu[a][r] * f.get(0, r)).sum();
        acc -= 2.0 * l2 * s[0][a] * frho;
    }
    Ok(acc)
}

/// Adapted-frame data and the positivity matrix of the multiplier energy density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterBlocks {
    /// Unit vector along `E` (or the fallback direction).
    pub e_par: ThreeVector,
    /// Unit vector completing `B` in the plane of `e_par`.
    pub e_perp: ThreeVector,
    /// `e_par x e_perp`.
    pub e_cross: ThreeVector,
    /// `|E|`.
    pub e: f64,
    /// `B . e_par`.
    pub b_par: f64,
    /// `B . e_perp`, nonnegative.
    pub b_perp: f64,
    /// The matrix in the variables `(Bd_par, Bd_perp, Ed_par, Ed_perp)`.
    pub a: Mat4,
    /// Leading principal minors of `a`, by floating-point elimination.
    pub minors: [f64; 4],
    /// Leading principal minors of `a` assembled and eliminated in double-double
    /// arithmetic from the frame scalars `(e, b_par, b_perp)`, then rounded.
    pub minors_exact: [f64; 4],
    /// Closed forms of the same minors.
    pub closed_forms: [f64; 4],
}

/// Builds the adapted frame of `(E, B)` and the matrix whose quadratic form is the
/// multiplier energy density restricted to variations in the `(e_par, e_perp)` plane.
pub fn sylvester_blocks(e_field: &ThreeVector, b_field: &ThreeVector) -> Result<SylvesterBlocks> {
    let e = e_field.norm();
    let e_dot_b = e_field.dot(b_field);
    let ell_sq = 1.0 + b_field.norm_sq() - e * e - e_dot_b * e_dot_b;
    if !(ell_sq > crate::constitutive::ELL_SQ_MIN) {
        return Err(MbiError::DegenerateState { ell_sq, node: None });
    }
    let e_par = if e >= 1e-12 {
        *e_field * (1.0 / e)
    } else if b_field.norm() >= 1e-12 {
        *b_field * (1.0 / b_field.norm())
    } else {
        ThreeVector::new(1.0, 0.0, 0.0)
    };
    let b_par = b_field.dot(&e_par);
    let b_rest = *b_field - e_par * b_par;
    let b_perp_len = b_rest.norm();
    let (e_perp, b_perp) = if b_perp_len > 1e-12 * (1.0 + b_field.norm()) {
        (b_rest * (1.0 / b_perp_len), b_perp_len)
    } else {
        // B parallel to E: any unit vector orthogonal to e_par serves.
        let seed = if e_par.0[0].abs() < 0.9 { ThreeVector::new(1.0, 0.0, 0.0) } else { ThreeVector::new(0.0, 1.0, 0.0) };
        let v = seed - e_par * seed.dot(&e_par);
        (v * (1.0 / v.norm()), 0.0)
    };
    let e_cross = e_par.cross(&e_perp);

    let e2 = e * e;
    let bq2 = b_perp * b_perp;
    let bp2 = b_par * b_par;
    let b2 = bp2 + bq2;
    let l2 = 1.0 + b2 - e2 - e2 * bp2;
    let p = l2 + e2 * bq2;
    let q = 1.0 + b2;
    let mut a = [[0.0; 4]; 4];
    a[0][0] = p * (1.0 + bq2 - e2);
    a[0][1] = -p * b_par * b_perp;
    a[0][2] = q * e * b_par * bq2;
    a[0][3] = q * (1.0 + bq2 - e2) * e * b_perp;
    a[1][1] = p * (1.0 + bp2);
    a[1][2] = -q * (1.0 + bp2) * e * b_perp;
    a[1][3] = -q * e * b_par * bq2;
    a[2][2] = q * q * (1.0 + bp2);
    a[2][3] = q * q * b_par * b_perp;
    a[3][3] = q * q * (1.0 + bq2 - e2);
    for i in 0..4 {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    let minors = std::array::from_fn(|k| leading_minor(&a, k + 1));
    let minors_exact = extended_leading_minors(e, b_par, b_perp);
    let closed_forms = [
        a[0][0],
        p * p * l2,
        (1.0 + bp2) * q * q * p * l2 * l2,
        q.powi(4) * l2.powi(4),
    ];
    Ok(SylvesterBlocks { e_par, e_perp, e_cross, e, b_par, b_perp, a, minors, minors_exact, closed_forms })
}

/// Leading minors of the Sylvester matrix in double-double arithmetic.
///
/// The minors are badly conditioned near the admissibility boundary. A
/// determinant of the rounded floating-point matrix can then only be trusted to
/// about `1e-10`, even when every entry is correctly rounded. Assembling the
/// entries and eliminating with roughly 106-bit significands from the exact
/// binary values of `(e, b_par, b_perp)` removes that loss.
fn extended_leading_minors(e: f64, b_par: f64, b_perp: f64) -> [f64; 4] {
    use crate::extended::DoubleDouble as X;

    let one = X::from(1.0);
    let (e, bp, bq) = (X::from(e), X::from(b_par), X::from(b_perp));
    let e2 = e * e;
    let bq2 = bq * bq;
    let bp2 = bp * bp;
    let b2 = bp2 + bq2;
    let l2 = one + b2 - e2 - e2 * bp2;
    let p = l2 + e2 * bq2;
    let q = one + b2;
    let q2 = q * q;
    let mut a = [[X::from(0.0); 4]; 4];
    a[0][0] = p * (one + bq2 - e2);
    a[0][1] = -(p * bp * bq);
    a[0][2] = q * e * bp * bq2;
    a[0][3] = q * (one + bq2 - e2) * e * bq;
    a[1][1] = p * (one + bp2);
    a[1][2] = -(q * (one + bp2) * e * bq);
    a[1][3] = -(q * e * bp * bq2);
    a[2][2] = q2 * (one + bp2);
    a[2][3] = q2 * bp * bq;
    a[3][3] = q2 * (one + bq2 - e2);
    for i in 0..4 {
        for j in 0..i {
            a[i][j] = a[j][i];
        }
    }
    std::array::from_fn(|k| {
        let n = k + 1;
        let mut m = a;
        let mut det = one;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| m[i][col].hi().abs().total_cmp(&m[j][col].hi().abs()))
                .unwrap_or(col);
            if m[pivot][col].hi() == 0.0 {
                return 0.0;
            }
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det = det * m[col][col];
            for row in (col + 1)..n {
                let factor = m[row][col] / m[col][col];
                for c in col..n {
                    m[row][c] = m[row][c] - factor * m[col][c];
                }
            }
        }
        det.hi()
    })
}

/// Determinant of the leading `k x k` block by Gaussian elimination with partial pivoting.
fn leading_minor(a: &Mat4, k: usize) -> f64 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..k {
        m[i][..k].copy_from_slice(&a[i][..k]);
    }
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in (col + 1)..k {
            let factor = m[row][col] / m[col][col];
            for c in col..k {
                m[row][c] -= factor * m[col][c];
            }
        }
    }
    det
}

/// The conformal Killing fields used for commutation, together with `Kbar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KillingGenerator {
    /// Translation `T_(mu) = d_mu`.
    Translation(usize),
    /// Rotation `Omega_(jk) = x_j d_k - x_k d_j` with spatial indices `1 <= j < k <= 3`.
    Rotation(usize, usize),
    /// Boost `Omega_(0j) = x_0 d_j - x_j d_0 = -t d_j - x_j d_t`.
    Boost(usize),
    /// Scaling `S = x^kappa d_kappa`.
    Scaling,
    /// Morawetz field `Kbar`.
    Morawetz,
}

impl KillingGenerator {
    /// The eleven commutation fields: four translations, three rotations, three boosts and scaling.
    pub const COMMUTATORS: [KillingGenerator; 11] = [
        KillingGenerator::Translation(0),
        KillingGenerator::Translation(1),
        KillingGenerator::Translation(2),
        KillingGenerator::Translation(3),
        KillingGenerator::Rotation(1, 2),
        KillingGenerator::Rotation(1, 3),
        KillingGenerator::Rotation(2, 3),
        KillingGenerator::Boost(1),
        KillingGenerator::Boost(2),
        KillingGenerator::Boost(3),
        KillingGenerator::Scaling,
    ];

    /// Whether the field has a time component that depends on position or a
    /// time derivative enters its Lie derivative.
    pub fn needs_time_derivative(&self) -> bool {
        match self {
            KillingGenerator::Translation(mu) => *mu == 0,
            KillingGenerator::Rotation(..) => false,
            KillingGenerator::Boost(_) | KillingGenerator::Scaling | KillingGenerator::Morawetz => true,
        }
    }

    /// Short stable label such as `T0`, `O12`, `O01`, `S`, `Kbar`.
    pub fn label(&self) -> String {
        match self {
            KillingGenerator::Translation(mu) => format!("T{mu}"),
            KillingGenerator::Rotation(j, k) => format!("O{j}{k}"),
            KillingGenerator::Boost(j) => format!("O0{j}"),
            KillingGenerator::Scaling => "S".to_string(),
            KillingGenerator::Morawetz => "Kbar".to_string(),
        }
    }

    /// Components `Z^mu` at `(t, x)`.
    pub fn eval(&self, t: f64, x: &ThreeVector) -> FourVector {
        let pos = [t, x.0[0], x.0[1], x.0[2]];
        match *self {
            KillingGenerator::Translation(mu) => FourVector::basis(mu),
            KillingGenerator::Rotation(j, k) => {
                let mut v = [0.0; 4];
                v[k] = pos[j];
                v[j] = -pos[k];
                FourVector(v)
            }
            KillingGenerator::Boost(j) => {
                let mut v = [0.0; 4];
                v[j] = -t;
                v[0] = -pos[j];
                FourVector(v)
            }
            KillingGenerator::Scaling => FourVector(pos),
            KillingGenerator::Morawetz => morawetz_k(t, x),
        }
    }

    /// Gradient `grad[mu][kappa] = d_mu Z^kappa` at `(t, x)`.
    pub fn gradient(&self, t: f64, x: &ThreeVector) -> Mat4 {
        let mut grad = [[0.0; 4]; 4];
        match *self {
            KillingGenerator::Translation(_) => {}
            KillingGenerator::Rotation(j, k) => {
                grad[j][k] = 1.0;
                grad[k][j] = -1.0;
            }
            KillingGenerator::Boost(j) => {
                grad[0][j] = -1.0;
                grad[j][0] = -1.0;
            }
            KillingGenerator::Scaling => {
                for (mu, row) in grad.iter_mut().enumerate() {
                    row[mu] = 1.0;
                }
            }
            KillingGenerator::Morawetz => {
                grad[0][0] = 2.0 * t;
                for j in 1..4 {
                    grad[j][0] = 2.0 * x.0[j - 1];
                    grad[0][j] = 2.0 * x.0[j - 1];
                    grad[j][j] = 2.0 * t;
                }
            }
        }
        grad
    }

    /// Conformal factor `phi` with deformation tensor `d_mu Z_nu + d_nu Z_mu = phi g_{mu nu}`.
    pub fn deformation_factor(&self, t: f64) -> f64 {
        match self {
            KillingGenerator::Scaling => 2.0,
            KillingGenerator::Morawetz => 4.0 * t,
            _ => 0.0,
        }
    }
}

/// The constant `c_Z` with `Lie_Z g = c_Z g`; `None` for `Kbar`, whose factor `4t` varies.
pub fn modified_lie_constant(z: &KillingGenerator) -> Option<f64> {
    match z {
        KillingGenerator::Morawetz => None,
        other => Some(other.deformation_factor(0.0)),
    }
}

/// Pointwise Lie derivative of a two-form,
/// `Lie_Z F_{mu nu} = Z^kappa d_kappa F_{mu nu} + F_{kappa nu} d_mu Z^kappa + F_{mu kappa} d_nu Z^kappa`,
/// given the coordinate derivatives `df[kappa] = d_kappa F`.
pub fn lie_derivative(z: &KillingGenerator, t: f64, x: &ThreeVector, f: &TwoForm, df: &[TwoForm; 4]) -> TwoForm {
    let zv = z.eval(t, x);
    let grad = z.gradient(t, x);
    let mut c = [0.0; 6];
    for (slot, &(mu, nu)) in crate::minkowski::PAIRS.iter().enumerate() {
        let mut v = 0.0;
        for k in 0..4 {
            v += zv.0[k] * df[k].get(mu, nu);
            v += f.get(k, nu) * grad[mu][k] + f.get(mu, k) * grad[nu][k];
        }
        c[slot] = v;
    }
    TwoForm::from_independent(c)
}

/// Modified Lie derivative `Lie_Z F + 2 c_Z F`; `None` for `Kbar`.
pub fn modified_lie_derivative(
    z: &KillingGenerator,
    t: f64,
    x: &ThreeVector,
    f: &TwoForm,
    df: &[TwoForm; 4],
) -> Option<TwoForm> {
    let c = modified_lie_constant(z)?;
    Some(lie_derivative(z, t, x, f, df) + *f * (2.0 * c))
}
