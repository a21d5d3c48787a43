//! Randomized verification of the pointwise identities.
//!
//! Every property compares two independent evaluation routes on seeded random
//! inputs and reports the largest scaled discrepancy. The Hodge dual used by
//! the properties is injectable so a deliberately corrupted dual can be checked
//! to trip exactly the dual-dependent properties.

use crate::constitutive::{
    big_h_from_h, big_h_tensor, d_h_of_eb, e_h_of_db, ell, ell_of_db, h_tensor, MbiScalars,
    StatePoint,
};
use crate::minkowski::{
    dual_null_components, em_decompose, em_recompose, hodge_dual, interior_product,
    levi_civita_upper, null_decompose, null_form_q1, null_form_q1_from_components,
    null_form_q2_from_components, null_frame_at, null_recompose, FourVector, Metric,
    NullComponents, ThreeVector, TwoForm,
};
use crate::sampling::Sampler;
use crate::stress::{
    canonical_stress, canonical_stress_antisymmetric, canonical_stress_blocks, em_tensor_maxwell,
    em_tensor_mbi, energy_current_j0, knorm_sq, local_energy_density,
    local_energy_density_explicit, morawetz_k, sylvester_blocks,
};

/// Default tolerance on the scaled discrepancy of every property.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Pluggable operations, so mutated implementations can be run through the suite.
#[derive(Clone, Copy)]
pub struct AlgebraOps {
    pub hodge_dual: fn(&TwoForm) -> TwoForm,
}

impl Default for AlgebraOps {
    fn default() -> Self {
        Self { hodge_dual }
    }
}

/// Result of one property over all samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub id: &'static str,
    /// Largest scaled discrepancy seen.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Wall-clock time spent evaluating this property.
    pub seconds: f64,
    /// Whether the property changes outcome when the sign of the injectable
    /// Hodge dual is flipped (properties quadratic in the dual do not).
    pub dual_sign_sensitive: bool,
}

/// Outcome of a full suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub samples: usize,
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl AlgebraReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    /// Identifiers of failing properties.
    pub fn failures(&self) -> Vec<&'static str> {
        self.outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect()
    }
}

/// Inputs shared by all properties for one sample.
struct Draw {
    f: TwoForm,
    fdot: TwoForm,
    g: TwoForm,
    t: f64,
    x: ThreeVector,
    causal: [FourVector; 2],
}

type Check = fn(&Draw, &AlgebraOps) -> f64;

struct Property {
    id: &'static str,
    dual_sign_sensitive: bool,
    check: Check,
}

fn scaled(diff: f64, scale: f64) -> f64 {
    let d = diff.abs();
    if d.is_nan() {
        return f64::INFINITY;
    }
    d / scale.abs().max(1.0)
}

fn form_diff(a: &TwoForm, b: &TwoForm) -> f64 {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    (*a - *b).max_abs() / scale
}

/// Brute-force `(*F)_{mu nu}` from the explicit volume-form sum.
pub fn hodge_dual_by_contraction(f: &TwoForm) -> TwoForm {
    let fl = f.lower();
    let mut upper = [[0.0; 4]; 4];
    for (mu, row) in upper.iter_mut().enumerate() {
        for (nu, entry) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, frow) in fl.iter().enumerate() {
                for (l, v) in frow.iter().enumerate() {
                    acc += 0.5 * levi_civita_upper([k, l, mu, nu]) * v;
                }
            }
            *entry = acc;
        }
    }
    let lowered = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| Metric::diag(mu) * Metric::diag(nu) * upper[mu][nu])
    });
    TwoForm::from_matrix_antisymmetrized(&lowered)
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut det = 0.0;
    for c in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for k in 0..4 {
                if k != c {
                    minor[r - 1][cc] = m[r][k];
                    cc += 1;
                }
            }
        }
        let d3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * m[0][c] * d3;
    }
    det
}

fn frame_components(f: &TwoForm, d: &Draw) -> NullComponents {
    let fr = null_frame_at(d.t, &d.x).expect("sample base points avoid the origin");
    null_decompose(f, &fr)
}

fn nc_diff(a: &NullComponents, b: &NullComponents) -> f64 {
    let va = [a.ualpha[0], a.ualpha[1], a.alpha[0], a.alpha[1], a.rho, a.sigma];
    let vb = [b.ualpha[0], b.ualpha[1], b.alpha[0], b.alpha[1], b.rho, b.sigma];
    let scale = va.iter().chain(vb.iter()).fold(1.0_f64, |m, v| m.max(v.abs()));
    va.iter().zip(vb.iter()).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

fn or_inf(r: crate::error::Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

fn properties() -> Vec<Property> {
    vec![
        Property {
            id: "dual_matches_volume_form_contraction",
            dual_sign_sensitive: true,
            check: |d, ops| form_diff(&(ops.hodge_dual)(&d.f), &hodge_dual_by_contraction(&d.f)),
        },
        Property {
            id: "double_dual_is_minus_identity",
            dual_sign_sensitive: false,
            check: |d, ops| form_diff(&(ops.hodge_dual)(&(ops.hodge_dual)(&d.f)), &(-d.f)),
        },
        Property {
            id: "identity_ff_minus_dual_dual_is_i1_g",
            dual_sign_sensitive: false,
            check: |d, ops| {
                let dual = (ops.hodge_dual)(&d.f);
                let (i1, _) = crate::minkowski::invariants(&d.f);
                let (fm, dm) = (d.f.mixed(), dual.mixed());
                let (fl, dl) = (d.f.lower(), dual.lower());
                let mut err = 0.0_f64;
                for mu in 0..4 {
                    for nu in 0..4 {
                        let lhs: f64 = (0..4).map(|k| fl[mu][k] * fm[nu][k] - dl[mu][k] * dm[nu][k]).sum();
                        let rhs = if mu == nu { i1 * Metric::diag(mu) } else { 0.0 };
                        err = err.max(scaled(lhs - rhs, d.f.norm_sq()));
                    }
                }
                err
            },
        },
        Property {
            id: "identity_f_dual_is_i2_g",
            dual_sign_sensitive: true,
            check: |d, ops| {
                let dual = (ops.hodge_dual)(&d.f);
                let (_, i2) = crate::minkowski::invariants(&d.f);
                let fl = d.f.lower();
                let dm = dual.mixed();
                let mut err = 0.0_f64;
                for mu in 0..4 {
                    for nu in 0..4 {
                        let lhs: f64 = (0..4).map(|k| fl[mu][k] * dm[nu][k]).sum();
                        let rhs = if mu == nu { i2 * Metric::diag(mu) } else { 0.0 };
                        err = err.max(scaled(lhs - rhs, d.f.norm_sq()));
                    }
                }
                err
            },
        },
        Property {
            id: "i2_squared_is_abs_det_f",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (_, i2) = crate::minkowski::invariants(&d.f);
                let det = det4(&d.f.lower());
                scaled(i2 * i2 - det.abs() / Metric::det().abs(), d.f.norm_sq().powi(2))
            },
        },
        Property {
            id: "invariants_in_terms_of_e_b",
            dual_sign_sensitive: true,
            check: |d, ops| {
                let (e, b) = em_decompose(&d.f);
                let i1 = 0.5 * d.f.contract(&d.f);
                let i2 = 0.25 * d.f.contract(&(ops.hodge_dual)(&d.f));
                let s = d.f.norm_sq();
                scaled(i1 - (b.norm_sq() - e.norm_sq()), s).max(scaled(i2 - e.dot(&b), s))
            },
        },
        Property {
            id: "norm_in_terms_of_e_b",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (e, b) = em_decompose(&d.f);
                scaled(d.f.norm_sq() - 2.0 * (e.norm_sq() + b.norm_sq()), d.f.norm_sq())
            },
        },
        Property {
            id: "em_split_round_trip",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (e, b) = em_decompose(&d.f);
                form_diff(&em_recompose(&e, &b), &d.f)
            },
        },
        Property {
            id: "norm_in_terms_of_null_components",
            dual_sign_sensitive: false,
            check: |d, _| {
                let nc = frame_components(&d.f, d);
                scaled(d.f.norm_sq() - nc.norm_sq(), d.f.norm_sq())
            },
        },
        Property {
            id: "null_split_round_trip",
            dual_sign_sensitive: false,
            check: |d, _| {
                let fr = null_frame_at(d.t, &d.x).expect("off origin");
                form_diff(&null_recompose(&null_decompose(&d.f, &fr), &fr), &d.f)
            },
        },
        Property {
            id: "dual_null_component_relations",
            dual_sign_sensitive: true,
            check: |d, ops| {
                let direct = frame_components(&(ops.hodge_dual)(&d.f), d);
                let via = dual_null_components(&frame_components(&d.f, d));
                nc_diff(&direct, &via)
            },
        },
        Property {
            id: "null_form_q1_expansion",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (nf, ng) = (frame_components(&d.f, d), frame_components(&d.g, d));
                let direct = null_form_q1(&d.f, &d.g);
                scaled(direct - null_form_q1_from_components(&nf, &ng), d.f.norm_sq() + d.g.norm_sq())
            },
        },
        Property {
            id: "null_form_q2_expansion",
            dual_sign_sensitive: true,
            check: |d, ops| {
                let (nf, ng) = (frame_components(&d.f, d), frame_components(&d.g, d));
                let direct = (ops.hodge_dual)(&d.f).contract(&d.g);
                scaled(direct - null_form_q2_from_components(&nf, &ng), d.f.norm_sq() + d.g.norm_sq())
            },
        },
        Property {
            id: "null_forms_on_diagonal_give_invariants",
            dual_sign_sensitive: true,
            check: |d, ops| {
                let (i1, i2) = crate::minkowski::invariants(&d.f);
                let q1 = d.f.contract(&d.f);
                let q2 = (ops.hodge_dual)(&d.f).contract(&d.f);
                let s = d.f.norm_sq();
                scaled(q1 - 2.0 * i1, s).max(scaled(q2 - 4.0 * i2, s))
            },
        },
        Property {
            id: "constitutive_round_trip",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (e, b) = em_decompose(&d.f);
                let Ok((dd, h)) = d_h_of_eb(&e, &b) else { return f64::INFINITY };
                let (e_back, h_back) = e_h_of_db(&StatePoint { b, d: dd });
                let scale = e.max_abs().max(h.max_abs()).max(1.0);
                (e_back - e).max_abs().max((h_back - h).max_abs()) / scale
            },
        },
        Property {
            id: "ell_routes_agree",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (e, b) = em_decompose(&d.f);
                let Ok((dd, _)) = d_h_of_eb(&e, &b) else { return f64::INFINITY };
                let l = or_inf(ell(&d.f));
                (ell_of_db(&StatePoint { b, d: dd }) - l).abs() / l
            },
        },
        Property {
            id: "h_and_big_h_symmetries",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (Ok(h), Ok((big, _))) = (h_tensor(&d.f), big_h_tensor(&d.f)) else { return f64::INFINITY };
                let mut err = 0.0_f64;
                let scale = h.max_abs().max(big.max_abs()).max(1.0);
                for t in [&h, &big] {
                    for m in 0..4 {
                        for n in 0..4 {
                            for k in 0..4 {
                                for l in 0..4 {
                                    let v = t.get(m, n, k, l);
                                    err = err
                                        .max((v + t.get(n, m, k, l)).abs())
                                        .max((v + t.get(m, n, l, k)).abs())
                                        .max((v - t.get(k, l, m, n)).abs());
                                }
                            }
                        }
                    }
                }
                err / scale
            },
        },
        Property {
            id: "big_h_from_h_matches_split",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (Ok(a), Ok((b, _))) = (big_h_from_h(&d.f), big_h_tensor(&d.f)) else { return f64::INFINITY };
                a.max_abs_diff(&b) / a.max_abs().max(1.0)
            },
        },
        Property {
            id: "canonical_stress_trace_free",
            dual_sign_sensitive: false,
            check: |d, _| {
                let Ok(s) = canonical_stress(&d.f, &d.fdot) else { return f64::INFINITY };
                scaled(s.trace(), s.max_abs())
            },
        },
        Property {
            id: "canonical_stress_block_form",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (Ok(a), Ok(b)) = (canonical_stress(&d.f, &d.fdot), canonical_stress_blocks(&d.f, &d.fdot)) else {
                    return f64::INFINITY;
                };
                let (la, lb) = (a.lower(), b.lower());
                let diff = (0..16).fold(0.0_f64, |m, i| m.max((la[i / 4][i % 4] - lb[i / 4][i % 4]).abs()));
                scaled(diff, a.max_abs())
            },
        },
        Property {
            id: "canonical_stress_antisymmetric_part",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (Ok(s), Ok(formula)) = (canonical_stress(&d.f, &d.fdot), canonical_stress_antisymmetric(&d.f, &d.fdot))
                else {
                    return f64::INFINITY;
                };
                let anti = s.antisymmetric_part();
                let diff = (0..16).fold(0.0_f64, |m, i| m.max((anti[i / 4][i % 4] - formula[i / 4][i % 4]).abs()));
                scaled(diff, s.max_abs())
            },
        },
        Property {
            id: "vacuum_current_is_quarter_knorm_sq",
            dual_sign_sensitive: false,
            check: |d, _| {
                let j0 = or_inf(energy_current_j0(&TwoForm::ZERO, &d.fdot, d.t, &d.x));
                let k2 = knorm_sq(&frame_components(&d.fdot, d));
                scaled(j0 - 0.25 * k2, k2)
            },
        },
        Property {
            id: "knorm_sq_is_twice_e_b_p_q",
            dual_sign_sensitive: false,
            check: |d, ops| {
                let k2 = knorm_sq(&frame_components(&d.f, d));
                let (e, b) = em_decompose(&d.f);
                let scaling = FourVector::from_parts(d.t, &d.x);
                let p = interior_product(&scaling, &d.f);
                let q = interior_product(&scaling, &(ops.hodge_dual)(&d.f));
                let sum = e.norm_sq() + b.norm_sq() + p.euclidean_norm_sq() + q.euclidean_norm_sq();
                scaled(k2 - 2.0 * sum, k2)
            },
        },
        Property {
            id: "morawetz_null_components",
            dual_sign_sensitive: false,
            check: |d, _| {
                let fr = null_frame_at(d.t, &d.x).expect("off origin");
                let k = morawetz_k(d.t, &d.x);
                let (q, s) = (fr.q(), fr.s());
                let scale = 1.0 + q * q + s * s;
                scaled(Metric::inner(&k, &fr.l) + (1.0 + q * q), scale)
                    .max(scaled(Metric::inner(&k, &fr.ul) + (1.0 + s * s), scale))
                    .max(scaled(Metric::inner(&k, &fr.e[0]), scale))
                    .max(scaled(Metric::inner(&k, &fr.e[1]), scale))
            },
        },
        Property {
            id: "mbi_stress_null_contractions",
            dual_sign_sensitive: false,
            check: |d, _| {
                let fr = null_frame_at(d.t, &d.x).expect("off origin");
                let (Ok(t), Ok(sc)) = (em_tensor_mbi(&d.f), MbiScalars::of(&d.f)) else { return f64::INFINITY };
                let nc = null_decompose(&d.f, &fr);
                let s = t.max_abs();
                scaled(t.eval(&fr.ul, &fr.ul) - nc.ualpha_norm_sq() / sc.ell, s)
                    .max(scaled(t.eval(&fr.l, &fr.l) - nc.alpha_norm_sq() / sc.ell, s))
            },
        },
        Property {
            id: "mbi_stress_lower_bound_on_ul_l",
            dual_sign_sensitive: false,
            check: |d, _| {
                let fr = null_frame_at(d.t, &d.x).expect("off origin");
                let (Ok(t), Ok(sc)) = (em_tensor_mbi(&d.f), MbiScalars::of(&d.f)) else { return f64::INFINITY };
                let nc = null_decompose(&d.f, &fr);
                let bound = nc.rho * nc.rho + nc.sigma * nc.sigma + sc.i2 * sc.i2;
                scaled((bound - sc.ell * t.eval(&fr.ul, &fr.l)).max(0.0), t.max_abs())
            },
        },
        Property {
            id: "maxwell_stress_null_contractions",
            dual_sign_sensitive: false,
            check: |d, _| {
                let fr = null_frame_at(d.t, &d.x).expect("off origin");
                let t = em_tensor_maxwell(&d.fdot);
                let nc = null_decompose(&d.fdot, &fr);
                let s = t.max_abs();
                scaled(t.eval(&fr.ul, &fr.ul) - nc.ualpha_norm_sq(), s)
                    .max(scaled(t.eval(&fr.l, &fr.l) - nc.alpha_norm_sq(), s))
                    .max(scaled(t.eval(&fr.ul, &fr.l) - (nc.rho * nc.rho + nc.sigma * nc.sigma), s))
                    .max(scaled(t.trace(), s))
            },
        },
        Property {
            id: "dominant_energy_condition",
            dual_sign_sensitive: false,
            check: |d, _| {
                let Ok(t) = em_tensor_mbi(&d.f) else { return f64::INFINITY };
                let v = t.eval(&d.causal[0], &d.causal[1]);
                let scale = t.max_abs() * d.causal[0].euclidean_norm_sq().sqrt() * d.causal[1].euclidean_norm_sq().sqrt();
                scaled((-v).max(0.0), scale)
            },
        },
        Property {
            id: "multiplier_density_routes_agree",
            dual_sign_sensitive: false,
            check: |d, _| {
                let a = or_inf(local_energy_density(&d.f, &d.fdot));
                let b = or_inf(local_energy_density_explicit(&d.f, &d.fdot));
                scaled(a - b, a.abs().max(b.abs()))
            },
        },
        Property {
            id: "sylvester_minors_match_closed_forms",
            dual_sign_sensitive: false,
            check: |d, _| {
                let (e, b) = em_decompose(&d.f);
                let Ok(sy) = sylvester_blocks(&e, &b) else { return f64::INFINITY };
                let mut err = 0.0_f64;
                for k in 0..4 {
                    let cf = sy.closed_forms[k];
                    err = err.max((sy.minors_exact[k] - cf).abs() / cf.abs().max(f64::MIN_POSITIVE));
                    if !(sy.minors_exact[k] > 0.0) {
                        err = f64::INFINITY;
                    }
                }
                err
            },
        },
    ]
}

/// Runs the suite with the library's operations.
pub fn run_algebra_suite(samples: usize, seed: u64, tolerance: f64) -> AlgebraReport {
    run_algebra_suite_with(samples, seed, tolerance, &AlgebraOps::default())
}

/// Runs the suite with the supplied operations.
pub fn run_algebra_suite_with(samples: usize, seed: u64, tolerance: f64, ops: &AlgebraOps) -> AlgebraReport {
    let props = properties();
    let mut worst = vec![0.0_f64; props.len()];
    let mut seconds = vec![0.0_f64; props.len()];
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let (t, x) = sampler.base_point(5.0, 5.0);
        let draw = Draw {
            f: sampler.admissible_two_form(),
            fdot: sampler.two_form(1.0),
            g: sampler.two_form(1.0),
            t,
            x,
            causal: [sampler.future_causal(), sampler.future_causal()],
        };
        for ((w, p), secs) in worst.iter_mut().zip(props.iter()).zip(seconds.iter_mut()) {
            let start = std::time::Instant::now();
            let e = (p.check)(&draw, ops);
            *secs += start.elapsed().as_secs_f64();
            *w = if e.is_nan() { f64::INFINITY } else { w.max(e) };
        }
    }
    let outcomes = props
        .iter()
        .zip(worst)
        .zip(seconds)
        .map(|((p, max_error), seconds)| PropertyOutcome {
            id: p.id,
            max_error,
            seconds,
            tolerance,
            passed: max_error <= tolerance,
            dual_sign_sensitive: p.dual_sign_sensitive,
        })
        .collect();
    AlgebraReport { samples, seed, outcomes }
}
