//! Small dense complex linear algebra.
//!
//! Everything here is sized for one or two qubits plus an equally sized
//! ancilla, so at most 16×16. Storage is row-major `Vec<Complex64>`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default absolute tolerance for entrywise comparisons.
pub const EPS: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimensions must be positive".into(),
            ));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a square matrix from real row literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let data: Vec<Complex64> = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        let cols = data.len().checked_div(n).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Self::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.dim(),
            });
        }
        let amps = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum())
            .collect();
        Ok(CVector { amps })
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Entrywise distance of `M† M` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&CMatrix::identity(self.rows))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of a Hermitian matrix in ascending order. The input is
    /// symmetrized first, so tiny anti-Hermitian noise is ignored.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert!(self.is_square(), "eigenvalues need a square matrix");
        let n = self.rows;
        let herm =
            nalgebra::DMatrix::from_fn(n, n, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5);
        let mut values: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on a shape mismatch; use [`CMatrix::matmul`] for the fallible form.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`; entry `(i·rb + k, j·cb + l)` is `a[i,j]·b[k,l]`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (rb, cb) = (b.rows, b.cols);
    CMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a[(r / rb, c / cb)] * b[(r % rb, c % cb)]
    })
}

/// Hilbert–Schmidt expansion coefficient `Tr(basis_op† · target) / d`.
///
/// For a complete set of mutually orthogonal unitaries (the Pauli products),
/// `target = Σ_i hs_coefficient(Λ_i, target) Λ_i`.
pub fn hs_coefficient(basis_op: &CMatrix, target: &CMatrix) -> Result<Complex64> {
    if !basis_op.is_square() || !target.is_square() {
        return Err(Error::InvalidParameter(
            "hs_coefficient needs square matrices".into(),
        ));
    }
    if basis_op.rows != target.rows {
        return Err(Error::DimensionMismatch {
            expected: basis_op.rows,
            actual: target.rows,
        });
    }
    let d = basis_op.rows;
    let overlap: Complex64 = basis_op
        .data
        .iter()
        .zip(&target.data)
        .map(|(b, t)| b.conj() * t)
        .sum();
    Ok(overlap / d as f64)
}

#[derive(Clone, PartialEq)]
pub struct CVector {
    amps: Vec<Complex64>,
}

impl CVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidParameter(
                "vector dimension must be positive".into(),
            ));
        }
        Ok(Self { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amps: self.amps.iter().map(|z| z / n).collect(),
        }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &CVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &CVector) -> CVector {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        CVector { amps }
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &CVector) -> CMatrix {
        CMatrix::from_fn(self.dim(), other.dim(), |r, c| {
            self.amps[r] * other.amps[c].conj()
        })
    }

    pub fn projector(&self) -> CMatrix {
        self.outer(self)
    }

    pub fn scale(&self, factor: Complex64) -> CVector {
        CVector {
            amps: self.amps.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when the two unit vectors agree up to a global phase.
    pub fn equals_up_to_phase(&self, other: &CVector, tol: f64) -> bool {
        self.dim() == other.dim() && (self.inner(other).norm() - 1.0).abs() <= tol
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;

    fn index(&self, k: usize) -> &Complex64 {
        &self.amps[k]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CVector [")?;
        for z in &self.amps {
            write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
        }
        write!(f, " ]")
    }
}

/// The generator used for every seeded draw in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random pure state of dimension `dim`, deterministic in `seed`.
pub fn haar_state(dim: usize, seed: u64) -> CVector {
    haar_state_from(dim, &mut seeded_rng(seed))
}

/// Haar-random pure state drawn from an existing stream: a normalized vector
/// of independent standard complex Gaussians.
pub fn haar_state_from<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v = CVector { amps };
        // a zero draw has probability zero, but it would divide by zero
        if v.norm() > 0.0 {
            return v.normalized();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> CMatrix {
        CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn pauli_z() -> CMatrix {
        CMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i4 = tensor(&CMatrix::identity(2), &CMatrix::identity(2));
        assert!(i4.approx_eq(&CMatrix::identity(4), EPS));
    }

    #[test]
    fn tensor_x_identity_flips_first_qubit() {
        let xi = tensor(&pauli_x(), &CMatrix::identity(2));
        let out = xi.apply(&CVector::basis(4, 0b00)).unwrap();
        assert!(out.max_abs_diff(&CVector::basis(4, 0b10)) < EPS);
    }

    #[test]
    fn tensor_matches_entrywise_kronecker_formula() {
        let (z, x) = (pauli_z(), pauli_x());
        let zx = tensor(&z, &x);
        // oracle: (a⊗b)[2i+k][2j+l] = a[i][j] b[k][l], enumerated explicitly
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert_eq!(zx[(2 * i + k, 2 * j + l)], z[(i, j)] * x[(k, l)]);
                    }
                }
            }
        }
        let expected = CMatrix::from_real_rows(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
            &[0.0, 0.0, -1.0, 0.0],
        ])
        .unwrap();
        assert!(zx.approx_eq(&expected, EPS));
    }

    #[test]
    fn hs_coefficient_examples() {
        let ii = CMatrix::identity(4);
        let xi = tensor(&pauli_x(), &CMatrix::identity(2));
        let zi = tensor(&pauli_z(), &CMatrix::identity(2));
        assert!((hs_coefficient(&ii, &ii).unwrap() - ONE).norm() < EPS);
        assert!(hs_coefficient(&xi, &zi).unwrap().norm() < EPS);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let target = (&ii + &xi.scale(I)).scale(Complex64::new(s, 0.0));
        let c = hs_coefficient(&xi, &target).unwrap();
        assert!((c - Complex64::new(0.0, s)).norm() < EPS);
    }

    #[test]
    fn hs_coefficient_rejects_mismatched_dimensions() {
        let err = hs_coefficient(&CMatrix::identity(2), &CMatrix::identity(4)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn matrix_constructor_checks_entry_count() {
        assert!(CMatrix::new(2, 2, vec![ONE; 3]).is_err());
        assert!(CMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn haar_state_dim_one_has_unit_modulus() {
        for seed in 0..10 {
            let v = haar_state(1, seed);
            assert!((v[0].norm() - 1.0).abs() < EPS);
        }
    }

    #[test]
    fn haar_state_is_normalized_and_seeded() {
        let a = haar_state(4, 7);
        assert!((a.norm() - 1.0).abs() < EPS);
        assert_eq!(a, haar_state(4, 7));
        assert!(a.max_abs_diff(&haar_state(4, 8)) > 1e-6);
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let m = CMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, -1.0]]).unwrap();
        let ev = m.hermitian_eigenvalues();
        assert!((ev[0] + 1.0).abs() < EPS && (ev[1] - 3.0).abs() < EPS);
    }
}
