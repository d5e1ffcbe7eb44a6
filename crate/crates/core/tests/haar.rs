//! Moments of the Haar state sampler in dimension 4.

use complementary_fidelity::qmath::{haar_state_from, seeded_rng, CVector};

const SAMPLES: usize = 100_000;
const D: f64 = 4.0;

fn overlap_moments(fixed: &CVector, seed: u64) -> (f64, f64, f64) {
    let mut rng = seeded_rng(seed);
    let (mut s1, mut s2, mut s4) = (0.0, 0.0, 0.0);
    for _ in 0..SAMPLES {
        let p = fixed.inner(&haar_state_from(4, &mut rng)).norm_sqr();
        s1 += p;
        s2 += p * p;
        s4 += p.powi(4);
    }
    let n = SAMPLES as f64;
    (s1 / n, s2 / n, s4 / n)
}

/// `E|⟨v|ψ⟩|² = 1/d` and `E|⟨v|ψ⟩|⁴ = 2/(d(d+1))`, each within 3 standard errors.
fn check(fixed: &CVector, seed: u64) {
    let (m1, m2, m4) = overlap_moments(fixed, seed);
    let n = SAMPLES as f64;
    let se1 = ((m2 - m1 * m1) / n).sqrt();
    let se2 = ((m4 - m2 * m2) / n).sqrt();
    assert!((m1 - 1.0 / D).abs() < 3.0 * se1, "mean {m1}");
    assert!(
        (m2 - 2.0 / (D * (D + 1.0))).abs() < 3.0 * se2,
        "second moment {m2}"
    );
}

#[test]
fn overlap_with_computational_state() {
    check(&CVector::basis(4, 0), 1);
}

#[test]
fn overlap_is_invariant_under_rotation() {
    let v = haar_state_from(4, &mut seeded_rng(99));
    check(&v, 2);
}

#[test]
fn states_are_normalized_and_seeded() {
    let mut rng = seeded_rng(5);
    for _ in 0..100 {
        assert!((haar_state_from(4, &mut rng).norm() - 1.0).abs() < 1e-12);
    }
    let a = haar_state_from(4, &mut seeded_rng(7));
    let b = haar_state_from(4, &mut seeded_rng(7));
    assert_eq!(a.max_abs_diff(&b), 0.0);
}
