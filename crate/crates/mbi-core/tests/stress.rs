//! Energy-momentum tensors, canonical stress, currents, multiplier positivity and
//! the conformal Killing generators.

use approx::assert_abs_diff_eq;
use mbi_core::constitutive::ell;
use mbi_core::minkowski::*;
use mbi_core::sampling::Sampler;
use mbi_core::stress::*;
use mbi_core::MbiError;
use proptest::prelude::*;

fn arb_eb() -> impl Strategy<Value = (ThreeVector, ThreeVector)> {
    (prop::array::uniform3(-0.9..0.9f64), prop::array::uniform3(-3.0..3.0f64))
        .prop_map(|(e, b)| (ThreeVector(e), ThreeVector(b)))
        .prop_filter("admissible", |(e, b)| {
            1.0 + b.norm_sq() - e.norm_sq() - e.dot(b).powi(2) > 1e-6
        })
}

fn arb_form(scale: f64) -> impl Strategy<Value = TwoForm> {
    prop::array::uniform6(-scale..scale).prop_map(TwoForm::from_independent)
}

fn arb_point() -> impl Strategy<Value = (f64, ThreeVector)> {
    (0.0..5.0f64, prop::array::uniform3(-5.0..5.0f64))
        .prop_filter("away from the origin", |(_, x)| ThreeVector(*x).norm() > 1e-3)
        .prop_map(|(t, x)| (t, ThreeVector(x)))
}

fn mat_max_abs(m: &Mat4) -> f64 {
    m.iter().flatten().fold(0.0_f64, |a, v| a.max(v.abs()))
}

#[test]
fn vacuum_stress_examples() {
    assert_eq!(em_tensor_mbi(&TwoForm::ZERO).unwrap().max_abs(), 0.0);
    assert_eq!(em_tensor_maxwell(&TwoForm::ZERO).max_abs(), 0.0);
    let t0 = FourVector::basis(0);
    assert_eq!(dec_value(&TwoForm::ZERO, &t0, &t0).unwrap(), 0.0);
}

#[test]
fn maxwell_stress_energy_density() {
    let e = ThreeVector::new(0.3, -0.2, 0.5);
    let b = ThreeVector::new(-1.0, 0.4, 0.1);
    let t = em_tensor_maxwell(&em_recompose(&e, &b));
    let t0 = FourVector::basis(0);
    assert_abs_diff_eq!(t.eval(&t0, &t0), 0.5 * (e.norm_sq() + b.norm_sq()), epsilon = 1e-15);
    assert_abs_diff_eq!(t.trace(), 0.0, epsilon = 1e-15);
}

#[test]
fn non_causal_arguments_are_rejected() {
    let spacelike = FourVector::new(1.0, 2.0, 0.0, 0.0);
    let past = FourVector::new(-1.0, 0.0, 0.0, 0.0);
    let t0 = FourVector::basis(0);
    assert!(matches!(dec_value(&TwoForm::ZERO, &spacelike, &t0), Err(MbiError::NotCausal { .. })));
    assert!(dec_value(&TwoForm::ZERO, &t0, &past).is_err());
}

#[test]
fn mbi_tensor_tends_to_maxwell_at_fourth_order() {
    let mut sampler = Sampler::new(41);
    let f = sampler.two_form(1.0);
    let errs: Vec<f64> = [4e-2, 2e-2, 1e-2]
        .iter()
        .map(|lam| {
            let g = f * *lam;
            let diff = em_tensor_mbi(&g).unwrap().lower();
            let maxwell = em_tensor_maxwell(&g).lower();
            mat_max_abs(&std::array::from_fn(|m| std::array::from_fn(|n| diff[m][n] - maxwell[m][n])))
        })
        .collect();
    let slope = (errs[0] / errs[2]).ln() / 4f64.ln();
    assert!(slope > 3.8, "slope {slope}, errors {errs:?}");
}

#[test]
fn dec_holds_on_many_samples() {
    let mut sampler = Sampler::new(43);
    let mut worst = f64::INFINITY;
    for _ in 0..20_000 {
        let f = sampler.admissible_two_form();
        let (x, y) = (sampler.future_causal(), sampler.future_causal());
        let scale = em_tensor_mbi(&f).unwrap().max_abs() * x.euclidean_norm_sq().sqrt() * y.euclidean_norm_sq().sqrt();
        worst = worst.min(dec_value(&f, &x, &y).unwrap() / scale.max(1e-300));
    }
    assert!(worst >= -1e-12, "worst scaled value {worst:e}");
}

#[test]
fn morawetz_examples() {
    assert_eq!(morawetz_k(0.0, &ThreeVector::ZERO).0, [1.0, 0.0, 0.0, 0.0]);
    let nc = NullComponents { rho: 1.0, q: 0.5, s: 3.0, ..Default::default() };
    assert_abs_diff_eq!(knorm_sq(&nc), 2.0 + 0.25 + 9.0);
    assert_abs_diff_eq!(knorm(&nc), (11.25f64).sqrt());
}

#[test]
fn current_examples() {
    let x = ThreeVector::new(1.0, 2.0, -0.5);
    let mut sampler = Sampler::new(47);
    let f = sampler.admissible_two_form();
    assert_eq!(energy_current_j0(&f, &TwoForm::ZERO, 1.0, &x).unwrap(), 0.0);
    // Origin: Kbar = d_t, so J0 is the Maxwell energy density while the weighted norm is |Fd|^2.
    let fdot = sampler.two_form(1.0);
    let (e, b) = em_decompose(&fdot);
    let j0 = energy_current_j0(&TwoForm::ZERO, &fdot, 0.0, &ThreeVector::ZERO).unwrap();
    assert_abs_diff_eq!(j0, 0.5 * (e.norm_sq() + b.norm_sq()), epsilon = 1e-14);
    assert_abs_diff_eq!(knorm_sq_at(&fdot, 0.0, &ThreeVector::ZERO), fdot.norm_sq(), epsilon = 1e-14);
}

#[test]
fn current_deviation_from_vacuum_is_quadratic_in_background() {
    let mut sampler = Sampler::new(53);
    let f = sampler.two_form(1.0);
    let fdot = sampler.two_form(1.0);
    let (t, x) = (1.5, ThreeVector::new(0.4, -1.1, 2.0));
    let vacuum = energy_current_j0(&TwoForm::ZERO, &fdot, t, &x).unwrap();
    let errs: Vec<f64> = [4e-2, 2e-2, 1e-2]
        .iter()
        .map(|lam| (energy_current_j0(&(f * *lam), &fdot, t, &x).unwrap() - vacuum).abs())
        .collect();
    let slope = (errs[0] / errs[2]).ln() / 4f64.ln();
    assert!((slope - 2.0).abs() < 0.05, "slope {slope}");
}

#[test]
fn vacuum_multiplier() {
    let v = vmult(&TwoForm::ZERO).unwrap();
    assert_eq!(v.0, [2.0, 0.0, 0.0, 0.0]);
    let mut sampler = Sampler::new(59);
    let fdot = sampler.two_form(1.0);
    let (e, b) = em_decompose(&fdot);
    assert_abs_diff_eq!(local_energy_density(&TwoForm::ZERO, &fdot).unwrap(), e.norm_sq() + b.norm_sq(), epsilon = 1e-14);
}

#[test]
fn multiplier_density_is_positive_on_compact_set() {
    let mut sampler = Sampler::new(61);
    let mut min_ratio = f64::INFINITY;
    for _ in 0..20_000 {
        let f = sampler.admissible_two_form();
        let fdot = sampler.unit_two_form();
        min_ratio = min_ratio.min(local_energy_density(&f, &fdot).unwrap());
    }
    assert!(min_ratio > 1e-8, "min density {min_ratio:e}");
}

#[test]
fn sylvester_vacuum_and_pure_magnetic() {
    let blocks = sylvester_blocks(&ThreeVector::ZERO, &ThreeVector::ZERO).unwrap();
    assert_eq!(blocks.minors_exact, [1.0; 4]);
    assert_eq!(blocks.closed_forms, [1.0; 4]);
    let b = 1.3;
    let blocks = sylvester_blocks(&ThreeVector::ZERO, &ThreeVector::new(0.0, b, 0.0)).unwrap();
    let expected = (1.0 + b * b).powi(8);
    assert!((blocks.minors_exact[3] / expected - 1.0).abs() < 1e-12);
    // Oracle: cofactor expansion of det A, independent of the elimination routines.
    assert!((det4_cofactor(&blocks.a) / expected - 1.0).abs() < 1e-12);
}

fn det4_cofactor(a: &Mat4) -> f64 {
    fn det3(m: [[f64; 3]; 3]) -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    (0..4)
        .map(|c| {
            let minor: [[f64; 3]; 3] = std::array::from_fn(|i| {
                let cols: Vec<usize> = (0..4).filter(|&k| k != c).collect();
                std::array::from_fn(|j| a[i + 1][cols[j]])
            });
            let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[0][c] * det3(minor)
        })
        .sum()
}

#[test]
fn killing_examples() {
    let x = ThreeVector::new(1.0, 0.0, 0.0);
    assert_eq!(KillingGenerator::Rotation(1, 2).eval(0.0, &x).0, [0.0, 0.0, 1.0, 0.0]);
    let x = ThreeVector::new(0.3, -0.4, 2.0);
    assert_eq!(KillingGenerator::Scaling.eval(1.5, &x).0, [1.5, 0.3, -0.4, 2.0]);
    assert_eq!(modified_lie_constant(&KillingGenerator::Scaling), Some(2.0));
    assert_eq!(modified_lie_constant(&KillingGenerator::Boost(2)), Some(0.0));
    assert_eq!(modified_lie_constant(&KillingGenerator::Morawetz), None);
    assert_eq!(KillingGenerator::COMMUTATORS.len(), 11);
}

/// Finite differences of `Z` itself give the deformation tensor, which must be `phi g`.
#[test]
fn deformation_tensors_by_finite_differences() {
    let step = 1e-5;
    let mut sampler = Sampler::new(67);
    let mut all = KillingGenerator::COMMUTATORS.to_vec();
    all.push(KillingGenerator::Morawetz);
    for _ in 0..20 {
        let (t, x) = sampler.base_point(3.0, 3.0);
        for z in &all {
            let shifted = |mu: usize, sign: f64| {
                let mut p = [t, x.0[0], x.0[1], x.0[2]];
                p[mu] += sign * step;
                Metric::lower(&z.eval(p[0], &ThreeVector::new(p[1], p[2], p[3])))
            };
            let grad: Mat4 = std::array::from_fn(|mu| {
                let (p, m) = (shifted(mu, 1.0), shifted(mu, -1.0));
                std::array::from_fn(|nu| (p.0[nu] - m.0[nu]) / (2.0 * step))
            });
            let phi = z.deformation_factor(t);
            for mu in 0..4 {
                for nu in 0..4 {
                    let g = if mu == nu { Metric::diag(mu) } else { 0.0 };
                    let pi = grad[mu][nu] + grad[nu][mu];
                    assert!((pi - phi * g).abs() < 1e-7, "{} at ({mu},{nu}): {pi} vs {}", z.label(), phi * g);
                }
            }
            // The analytic gradient agrees with the same differences (raised second index).
            let analytic = z.gradient(t, &x);
            for mu in 0..4 {
                for nu in 0..4 {
                    assert!((analytic[mu][nu] - Metric::diag(nu) * grad[mu][nu]).abs() < 1e-7);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mbi_tensor_symmetric_and_null_evaluations((e, b) in arb_eb(), (t, x) in arb_point()) {
        let f = em_recompose(&e, &b);
        let tm = em_tensor_mbi(&f).unwrap();
        prop_assert!(mat_max_abs(&tm.antisymmetric_part()) <= 1e-14 * tm.max_abs());
        let fr = null_frame_at(t, &x).unwrap();
        let nc = null_decompose(&f, &fr);
        let l = ell(&f).unwrap();
        let tol = 1e-12 * (1.0 + tm.max_abs());
        prop_assert!((tm.eval(&fr.ul, &fr.ul) - nc.ualpha_norm_sq() / l).abs() < tol);
        prop_assert!((tm.eval(&fr.l, &fr.l) - nc.alpha_norm_sq() / l).abs() < tol);
        // Lower bound from the proof of the dominant energy condition.
        let (_, i2) = invariants(&f);
        let bound = nc.rho.powi(2) + nc.sigma.powi(2) + i2 * i2;
        prop_assert!(l * tm.eval(&fr.ul, &fr.l) >= bound - tol);
        prop_assert!(dec_value(&f, &fr.ul, &fr.l).unwrap() >= -tol);
    }

    #[test]
    fn maxwell_null_evaluations(f in arb_form(2.0), (t, x) in arb_point()) {
        let tm = em_tensor_maxwell(&f);
        let fr = null_frame_at(t, &x).unwrap();
        let nc = null_decompose(&f, &fr);
        let tol = 1e-12 * (1.0 + f.norm_sq());
        prop_assert!((tm.eval(&fr.ul, &fr.ul) - nc.ualpha_norm_sq()).abs() < tol);
        prop_assert!((tm.eval(&fr.l, &fr.l) - nc.alpha_norm_sq()).abs() < tol);
        prop_assert!((tm.eval(&fr.ul, &fr.l) - (nc.rho.powi(2) + nc.sigma.powi(2))).abs() < tol);
    }

    #[test]
    fn canonical_stress_routes_and_structure((e, b) in arb_eb(), fdot in arb_form(1.0)) {
        let f = em_recompose(&e, &b);
        let dense = canonical_stress(&f, &fdot).unwrap();
        let blocks = canonical_stress_blocks(&f, &fdot).unwrap();
        let scale = dense.max_abs().max(1e-300);
        let (dl, bl) = (dense.lower(), blocks.lower());
        for m in 0..4 {
            for n in 0..4 {
                prop_assert!((dl[m][n] - bl[m][n]).abs() <= 1e-12 * scale);
            }
        }
        prop_assert!(dense.trace().abs() <= 1e-12 * scale);
        let anti = canonical_stress_antisymmetric(&f, &fdot).unwrap();
        for m in 0..4 {
            for n in 0..4 {
                prop_assert!(((dl[m][n] - dl[n][m]) - anti[m][n]).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn vacuum_canonical_stress_is_maxwell(fdot in arb_form(2.0)) {
        let s = canonical_stress(&TwoForm::ZERO, &fdot).unwrap().lower();
        let m = em_tensor_maxwell(&fdot).lower();
        for a in 0..4 {
            for b in 0..4 {
                prop_assert!((s[a][b] - m[a][b]).abs() <= 1e-14 * (1.0 + fdot.norm_sq()));
            }
        }
    }

    #[test]
    fn vacuum_current_is_quarter_knorm_sq(fdot in arb_form(2.0), (t, x) in arb_point()) {
        let j0 = energy_current_j0(&TwoForm::ZERO, &fdot, t, &x).unwrap();
        let k2 = knorm_sq_at(&fdot, t, &x);
        prop_assert!((j0 - 0.25 * k2).abs() <= 1e-12 * k2.max(1e-300));
    }

    #[test]
    fn multiplier_density_routes_agree((e, b) in arb_eb(), fdot in arb_form(1.0)) {
        let f = em_recompose(&e, &b);
        let a = local_energy_density(&f, &fdot).unwrap();
        let c = local_energy_density_explicit(&f, &fdot).unwrap();
        prop_assert!((a - c).abs() <= 1e-12 * (1.0 + a.abs()));
        prop_assert!(a > 0.0);
    }

    /// The quadratic form of `A` is the multiplier density on variations in the adapted plane.
    #[test]
    fn sylvester_matrix_is_density_gram_matrix((e, b) in arb_eb(), v in prop::array::uniform4(-1.0..1.0f64)) {
        let blocks = sylvester_blocks(&e, &b).unwrap();
        let bdot = blocks.e_par * v[0] + blocks.e_perp * v[1];
        let edot = blocks.e_par * v[2] + blocks.e_perp * v[3];
        let density = local_energy_density(&em_recompose(&e, &b), &em_recompose(&edot, &bdot)).unwrap();
        let quad: f64 = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| blocks.a[i][j] * v[i] * v[j]).sum();
        prop_assert!((density - quad).abs() <= 1e-10 * (1.0 + quad.abs()), "{} vs {}", density, quad);
    }

    #[test]
    fn sylvester_minors_match_closed_forms((e, b) in arb_eb()) {
        let blocks = sylvester_blocks(&e, &b).unwrap();
        for k in 0..4 {
            let c = blocks.closed_forms[k];
            prop_assert!(c > 0.0);
            prop_assert!((blocks.minors_exact[k] - c).abs() <= 1e-10 * c);
        }
        prop_assert!((det4_cofactor(&blocks.a) / blocks.closed_forms[3] - 1.0).abs() < 1e-8);
    }

    /// Lie derivatives along conformal Killing fields commute with the Hodge dual.
    /// Oracle field: `F(y) = F0 + y^kappa F_kappa`, whose derivatives are exact.
    #[test]
    fn lie_derivative_commutes_with_dual(f0 in arb_form(1.0), df in prop::array::uniform4(arb_form(1.0)), (t, x) in arb_point()) {
        let ddual: [TwoForm; 4] = std::array::from_fn(|k| hodge_dual(&df[k]));
        let mut all = KillingGenerator::COMMUTATORS.to_vec();
        all.push(KillingGenerator::Morawetz);
        for z in all {
            let a = hodge_dual(&lie_derivative(&z, t, &x, &f0, &df));
            let b = lie_derivative(&z, t, &x, &hodge_dual(&f0), &ddual);
            prop_assert!((a - b).max_abs() <= 1e-12 * (1.0 + a.max_abs()), "{}", z.label());
        }
    }

    /// Translations act as plain partial derivatives; the modified derivative adds `2 c_Z F`.
    #[test]
    fn translation_and_scaling_lie_derivatives(f0 in arb_form(1.0), df in prop::array::uniform4(arb_form(1.0)), (t, x) in arb_point()) {
        for mu in 0..4 {
            let lie = lie_derivative(&KillingGenerator::Translation(mu), t, &x, &f0, &df);
            prop_assert!((lie - df[mu]).max_abs() == 0.0);
        }
        let s = KillingGenerator::Scaling;
        let plain = lie_derivative(&s, t, &x, &f0, &df);
        let modified = modified_lie_derivative(&s, t, &x, &f0, &df).unwrap();
        prop_assert!((modified - plain - f0 * 4.0).max_abs() <= 1e-14 * (1.0 + plain.max_abs()));
    }
}
