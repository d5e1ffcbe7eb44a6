#![allow(dead_code)]

use complementary_fidelity::channel::NoisyGateModel;
use complementary_fidelity::gatelib::{cnot, PauliLabel};
use complementary_fidelity::qmath::{haar_state_from, CMatrix, CVector};
use num_complex::Complex64;
use rand::Rng;

/// Allowance for decimal boundaries that binary floats cannot hit exactly.
pub const FP_SLACK: f64 = 1e-12;

/// Random probability vector; about a third of the entries are zeroed so
/// sparse and boundary distributions show up too.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let raw: Vec<f64> = (0..n)
            .map(|_| {
                if rng.random_bool(0.35) {
                    0.0
                } else {
                    -rng.random::<f64>().max(1e-300).ln()
                }
            })
            .collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            return raw.into_iter().map(|x| x / total).collect();
        }
    }
}

pub fn random_chi_diagonal<R: Rng>(rng: &mut R) -> NoisyGateModel {
    let weights = random_simplex(rng, 16);
    let pairs = PauliLabel::all(2)
        .into_iter()
        .zip(weights)
        .filter(|(_, w)| *w > 0.0)
        .collect();
    NoisyGateModel::chi_diagonal(cnot(), pairs).unwrap()
}

/// Haar unitary by Gram–Schmidt on Gaussian columns.
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    let mut cols: Vec<CVector> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v = haar_state_from(d, rng);
        for c in &cols {
            let overlap = c.inner(&v);
            let proj = c.scale(overlap);
            v = CVector::new(
                v.amplitudes()
                    .iter()
                    .zip(proj.amplitudes())
                    .map(|(a, b)| a - b)
                    .collect(),
            )
            .unwrap();
        }
        if v.norm() > 1e-6 {
            cols.push(v.normalized());
        }
    }
    CMatrix::from_fn(d, d, |r, c| cols[c][r])
}

/// Product of three random Pauli rotations, a coherent error with
/// nonzero off-diagonal process-matrix elements.
pub fn random_coherent_error<R: Rng>(rng: &mut R) -> CMatrix {
    let labels = PauliLabel::all(2);
    let mut u = CMatrix::identity(4);
    for _ in 0..3 {
        let label = &labels[rng.random_range(1..16)];
        let theta: f64 = rng.random_range(-0.6..0.6);
        let p = complementary_fidelity::gatelib::pauli(label);
        // exp(iθP) = cos θ I + i sin θ P for a Pauli product
        let rot = &CMatrix::identity(4).scale(Complex64::new(theta.cos(), 0.0))
            + &p.scale(Complex64::new(0.0, theta.sin()));
        u = &rot * &u;
    }
    u
}

pub fn random_unitary_mixture<R: Rng>(rng: &mut R) -> NoisyGateModel {
    let terms = rng.random_range(1..=3);
    let probs = loop {
        let p = random_simplex(rng, terms);
        if p.iter().all(|&x| x > 0.0) || terms == 1 {
            break if terms == 1 { vec![1.0] } else { p };
        }
    };
    let ideal = cnot();
    let elements = probs
        .into_iter()
        .map(|p| {
            let a = if rng.random_bool(0.5) {
                &random_coherent_error(rng) * &ideal
            } else {
                random_unitary(rng, 4)
            };
            (p, a)
        })
        .collect();
    NoisyGateModel::unitary_mixture(ideal, elements).unwrap()
}

pub fn random_model<R: Rng>(rng: &mut R, i: usize) -> NoisyGateModel {
    if i.is_multiple_of(2) {
        random_chi_diagonal(rng)
    } else {
        random_unitary_mixture(rng)
    }
}
