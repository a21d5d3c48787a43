//! The randomized identity suite passes with the library operations and trips the
//! dual-dependent properties when the dual is corrupted.

use mbi_core::minkowski::{hodge_dual, TwoForm};
use mbi_core::verify::{run_algebra_suite, run_algebra_suite_with, AlgebraOps, DEFAULT_TOLERANCE};

#[test]
fn suite_passes_on_seeded_samples() {
    let report = run_algebra_suite(2000, 7, DEFAULT_TOLERANCE);
    for o in &report.outcomes {
        println!("{:<45} {:.3e} {:.3}s", o.id, o.max_error, o.seconds);
    }
    assert!(report.all_passed(), "failures: {:?}", report.failures());
}

#[test]
fn single_sample_passes() {
    assert!(run_algebra_suite(1, 0, DEFAULT_TOLERANCE).all_passed());
}

fn sign_flipped_dual(f: &TwoForm) -> TwoForm {
    -hodge_dual(f)
}

#[test]
fn corrupted_dual_sign_fails_only_dual_properties() {
    let ops = AlgebraOps { hodge_dual: sign_flipped_dual };
    let report = run_algebra_suite_with(200, 3, DEFAULT_TOLERANCE, &ops);
    let failing: Vec<_> = report.outcomes.iter().filter(|o| !o.passed).collect();
    assert!(!failing.is_empty());
    for o in &report.outcomes {
        if !o.dual_sign_sensitive {
            assert!(o.passed, "{} should not depend on the dual", o.id);
        }
    }
    // Every dual-dependent property detects the flipped sign.
    for o in report.outcomes.iter().filter(|o| o.dual_sign_sensitive) {
        assert!(!o.passed, "{} did not detect the corrupted dual", o.id);
    }
}
