//! Noisy gate models and the brute-force simulator used to check every bound.
//!
//! Errors are output errors: the `i`-th basis operation is `U_i = F_i · U_0`
//! with `F_i` a Pauli product, so the diagonal of the process matrix is the
//! distribution of Pauli errors seen after an ideal gate.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::analysis::TruthTable;
use crate::error::{Error, Result};
use crate::gatelib::{basis_family, flip_pattern, pauli, BasisFamily, BasisKind, PauliLabel};
use crate::qmath::{haar_state_from, hs_coefficient, seeded_rng, tensor, CMatrix, CVector};

/// Weights and probabilities must sum to one within this.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;
/// Largest accepted `‖A†A − I‖` entry for mixture elements.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum NoiseVariant {
    /// `χ_ii` for the Pauli output errors `F_i`; off-diagonals are zero.
    ChiDiagonal(Vec<(PauliLabel, f64)>),
    /// `Σ_m p_m A_m ρ A_m†` with unitary `A_m`.
    UnitaryMixture(Vec<(f64, CMatrix)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoisyGateModel {
    ideal: CMatrix,
    variant: NoiseVariant,
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} is not a qubit register"
        )));
    }
    Ok(dim.trailing_zeros() as usize)
}

impl NoisyGateModel {
    /// The error-free gate.
    pub fn ideal(ideal: CMatrix) -> Result<Self> {
        let n = qubits_for_dim(ideal.rows())?;
        Self::chi_diagonal(ideal, vec![(PauliLabel::identity(n), 1.0)])
    }

    pub fn chi_diagonal(ideal: CMatrix, weights: Vec<(PauliLabel, f64)>) -> Result<Self> {
        check_ideal(&ideal)?;
        let n = qubits_for_dim(ideal.rows())?;
        let mut seen = BTreeSet::new();
        for (label, w) in &weights {
            if label.n_qubits() != n {
                return Err(Error::InvalidWeights(format!(
                    "label {label} does not act on {n} qubits"
                )));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::InvalidWeights(format!("label {label} listed twice")));
            }
            if !w.is_finite() || *w < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "weight {w} for {label} is not a probability"
                )));
            }
        }
        let total: f64 = weights.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Self {
            ideal,
            variant: NoiseVariant::ChiDiagonal(weights),
        })
    }

    /// Convenience constructor from `("XI", 0.1)` style pairs.
    pub fn chi_diagonal_str(ideal: CMatrix, weights: &[(&str, f64)]) -> Result<Self> {
        let parsed = weights
            .iter()
            .map(|(l, w)| Ok((l.parse()?, *w)))
            .collect::<Result<Vec<_>>>()?;
        Self::chi_diagonal(ideal, parsed)
    }

    pub fn unitary_mixture(ideal: CMatrix, terms: Vec<(f64, CMatrix)>) -> Result<Self> {
        check_ideal(&ideal)?;
        let d = ideal.rows();
        for (index, (p, a)) in terms.iter().enumerate() {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "probability {p} of element {index}"
                )));
            }
            if a.rows() != d || a.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: a.rows(),
                });
            }
            let deviation = a.unitarity_defect();
            if deviation > UNITARITY_TOLERANCE {
                return Err(Error::NotUnitary { index, deviation });
            }
        }
        let total: f64 = terms.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self {
            ideal,
            variant: NoiseVariant::UnitaryMixture(terms),
        })
    }

    pub fn ideal_gate(&self) -> &CMatrix {
        &self.ideal
    }

    pub fn variant(&self) -> &NoiseVariant {
        &self.variant
    }

    pub fn dim(&self) -> usize {
        self.ideal.rows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// The process as `Σ_m p_m K_m ρ K_m†` with unitary `K_m`.
    pub fn kraus_terms(&self) -> Vec<(f64, CMatrix)> {
        match &self.variant {
            NoiseVariant::ChiDiagonal(weights) => weights
                .iter()
                .filter(|(_, w)| *w > 0.0)
                .map(|(label, w)| (*w, &pauli(label) * &self.ideal))
                .collect(),
            NoiseVariant::UnitaryMixture(terms) => {
                terms.iter().filter(|(p, _)| *p > 0.0).cloned().collect()
            }
        }
    }
}

fn check_ideal(ideal: &CMatrix) -> Result<()> {
    qubits_for_dim(ideal.rows())?;
    let deviation = ideal.unitarity_defect();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NotUnitary {
            index: 0,
            deviation,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub const TOLERANCE: f64 = 1e-10;

    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidParameter(
                "density matrix must be square".into(),
            ));
        }
        if m.hermiticity_defect() > Self::TOLERANCE {
            return Err(Error::InvalidParameter(
                "density matrix is not Hermitian".into(),
            ));
        }
        if (m.trace().re - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::InvalidParameter(
                "density matrix does not have unit trace".into(),
            ));
        }
        if m.hermitian_eigenvalues()[0] < -Self::TOLERANCE {
            return Err(Error::InvalidParameter(
                "density matrix is not positive semidefinite".into(),
            ));
        }
        Ok(Self(m))
    }

    pub fn pure(state: &CVector) -> Self {
        Self(state.normalized().projector())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `⟨v|ρ|v⟩`.
    pub fn expectation(&self, v: &CVector) -> f64 {
        let image = self.0.apply(v).expect("dimension matches");
        v.inner(&image).re
    }
}

fn sandwich_sum(terms: &[(f64, CMatrix)], rho: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(rho.rows(), rho.cols());
    for (p, k) in terms {
        let term = &(k * rho) * &k.adjoint();
        out = &out + &term.scale(Complex64::new(*p, 0.0));
    }
    out
}

/// Applies the noisy process to a state.
pub fn apply(model: &NoisyGateModel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            actual: rho.dim(),
        });
    }
    Ok(DensityMatrix(sandwich_sum(
        &model.kraus_terms(),
        rho.matrix(),
    )))
}

/// `χ_ij` in the output-error basis `U_i = F_i U_0`, rows and columns in
/// [`PauliLabel::index`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessMatrix {
    n_qubits: usize,
    chi: CMatrix,
}

impl ProcessMatrix {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.chi
    }

    pub fn get(&self, row: &PauliLabel, col: &PauliLabel) -> Complex64 {
        self.chi[(row.index(), col.index())]
    }

    pub fn diagonal(&self, label: &PauliLabel) -> f64 {
        self.get(label, label).re
    }

    /// `χ_{II,II}`.
    pub fn process_fidelity(&self) -> f64 {
        self.diagonal(&PauliLabel::identity(self.n_qubits))
    }

    pub fn trace(&self) -> f64 {
        self.chi.trace().re
    }

    /// Diagonal rearranged as the joint flip grid `G[j_z][j_x]`.
    pub fn flip_grid(&self) -> Vec<Vec<f64>> {
        let side = 1usize << self.n_qubits;
        let mut grid = vec![vec![0.0; side]; side];
        for label in PauliLabel::all(self.n_qubits) {
            let p = flip_pattern(&label);
            grid[p.z_mask as usize][p.x_mask as usize] += self.diagonal(&label);
        }
        grid
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.chi.hermitian_eigenvalues()[0]
    }
}

/// Expands the model in the output-error basis.
pub fn process_matrix(model: &NoisyGateModel) -> ProcessMatrix {
    let n = model.n_qubits();
    let labels = PauliLabel::all(n);
    let size = labels.len();
    let mut chi = CMatrix::zeros(size, size);
    match model.variant() {
        NoiseVariant::ChiDiagonal(weights) => {
            for (label, w) in weights {
                let i = label.index();
                chi[(i, i)] = Complex64::new(*w, 0.0);
            }
        }
        NoiseVariant::UnitaryMixture(terms) => {
            let basis: Vec<CMatrix> = labels
                .iter()
                .map(|l| &pauli(l) * model.ideal_gate())
                .collect();
            for (p, a) in terms {
                let coeffs: Vec<Complex64> = basis
                    .iter()
                    .map(|u| hs_coefficient(u, a).expect("dimensions validated"))
                    .collect();
                for i in 0..size {
                    for j in 0..size {
                        chi[(i, j)] += coeffs[i] * coeffs[j].conj() * *p;
                    }
                }
            }
        }
    }
    ProcessMatrix { n_qubits: n, chi }
}

/// Fidelity of `(E ⊗ id)(|E_max⟩⟨E_max|)` with `(U_0 ⊗ I)|E_max⟩`, computed on
/// the full system-plus-ancilla state.
pub fn choi_fidelity(model: &NoisyGateModel) -> f64 {
    let d = model.dim();
    // |E_max⟩ = d^{-1/2} Σ_n |n⟩_A |n⟩_B
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for n in 0..d {
        amps[n * d + n] = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    let max_entangled = CVector::new(amps).expect("d >= 2");
    let ancilla = CMatrix::identity(d);
    let extended: Vec<(f64, CMatrix)> = model
        .kraus_terms()
        .into_iter()
        .map(|(p, k)| (p, tensor(&k, &ancilla)))
        .collect();
    let rho_out = sandwich_sum(&extended, &max_entangled.projector());
    let target = tensor(model.ideal_gate(), &ancilla)
        .apply(&max_entangled)
        .expect("dimension matches");
    DensityMatrix(rho_out).expectation(&target)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// Haar-averaged fidelity `⟨ψ|U_0† E(|ψ⟩⟨ψ|) U_0|ψ⟩`, one sequential stream.
pub fn average_fidelity_mc(
    model: &NoisyGateModel,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let d = model.dim();
    let terms = model.kraus_terms();
    let mut rng = seeded_rng(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let psi = haar_state_from(d, &mut rng);
        let target = model.ideal_gate().apply(&psi)?;
        let f: f64 = terms
            .iter()
            .map(|(p, k)| {
                p * target
                    .inner(&k.apply(&psi).expect("dimension matches"))
                    .norm_sqr()
            })
            .sum();
        sum += f;
        sum_sq += f * f;
    }
    let n = samples as f64;
    let mean = sum / n;
    let stderr = if samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        stderr,
        samples,
    })
}

/// `(F_qp d + 1)/(d + 1)`.
pub fn average_fidelity_from_process(f_qp: f64, d: usize) -> f64 {
    (f_qp * d as f64 + 1.0) / (d as f64 + 1.0)
}

/// Exact output statistics of `model` on every member of `family`, measured
/// in the family's output basis.
pub fn truth_table(model: &NoisyGateModel, family: &BasisFamily) -> Result<TruthTable> {
    if family.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            actual: family.dim(),
        });
    }
    let outputs = family.output_family();
    for (k, m) in family.members.iter().enumerate() {
        let image = model.ideal_gate().apply(m)?;
        if !image.equals_up_to_phase(&outputs.members[family.ideal_permutation[k]], 1e-9) {
            return Err(Error::UnsupportedBasis(format!(
                "ideal gate does not realize the {} family permutation",
                family.kind
            )));
        }
    }
    let probs = family
        .members
        .iter()
        .map(|m| {
            let rho = apply(model, &DensityMatrix::pure(m))?;
            Ok(outputs
                .members
                .iter()
                .map(|o| rho.expectation(o).max(0.0))
                .collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    TruthTable::new(family.kind, probs, family.ideal_permutation.clone())
}

/// Integer outcome counts per input.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTable {
    pub basis: BasisKind,
    pub counts: Vec<Vec<u64>>,
    pub ideal_permutation: Vec<usize>,
}

impl CountTable {
    pub fn to_truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_counts(self.basis, &self.counts, self.ideal_permutation.clone())
    }
}

/// Multinomial draw of `shots_per_row` outcomes per input row.
pub fn sample_counts(table: &TruthTable, shots_per_row: u64, seed: u64) -> Result<CountTable> {
    if shots_per_row == 0 {
        return Err(Error::InvalidParameter(
            "shots_per_row must be at least 1".into(),
        ));
    }
    let mut rng = seeded_rng(seed);
    let counts = table
        .probs()
        .iter()
        .map(|row| multinomial(row, shots_per_row, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable {
        basis: table.basis(),
        counts,
        ideal_permutation: table.ideal_permutation().to_vec(),
    })
}

/// Sequential conditional binomials; the row is renormalized first.
fn multinomial<R: Rng + ?Sized>(probs: &[f64], shots: u64, rng: &mut R) -> Result<Vec<u64>> {
    let mut remaining_mass: f64 = probs.iter().sum();
    let mut remaining = shots;
    let mut out = Vec::with_capacity(probs.len());
    for (j, &p) in probs.iter().enumerate() {
        if j + 1 == probs.len() {
            out.push(remaining);
            break;
        }
        let q = if remaining_mass > 0.0 {
            (p / remaining_mass).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let draw = Binomial::new(remaining, q)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .sample(rng);
        out.push(draw);
        remaining -= draw;
        remaining_mass -= p;
    }
    Ok(out)
}

/// Agreement between simulated classical fidelities and the process-matrix
/// diagonal sums.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResiduals {
    pub f_z_table: f64,
    pub f_x_table: f64,
    pub f_z_chi: f64,
    pub f_x_chi: f64,
    pub f_qp_chi: f64,
    pub choi: f64,
    /// `|F_Z(table) − Σ_{j_z=0} χ|`
    pub f_z: f64,
    /// `|F_X(table) − Σ_{j_x=0} χ|`
    pub f_x: f64,
    /// `|Σ_i χ_ii − 1|`
    pub sum_rule: f64,
    /// `|χ_00 − (F_Z + F_X − 1 + Σ_{j_z,j_x≠0} χ)|`
    pub reconstruction: f64,
    /// `|choi_fidelity − χ_00|`
    pub choi_vs_chi: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        [
            self.f_z,
            self.f_x,
            self.sum_rule,
            self.reconstruction,
            self.choi_vs_chi,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn verify_identities(model: &NoisyGateModel) -> Result<IdentityResiduals> {
    use crate::analysis::classical_fidelity;

    let f_z_table = classical_fidelity(&truth_table(model, &basis_family(BasisKind::ZProduct))?);
    let f_x_table = classical_fidelity(&truth_table(model, &basis_family(BasisKind::XProduct))?);
    let chi = process_matrix(model);
    let grid = chi.flip_grid();
    let f_z_chi: f64 = grid[0].iter().sum();
    let f_x_chi: f64 = grid.iter().map(|row| row[0]).sum();
    let both: f64 = grid.iter().skip(1).flat_map(|row| row.iter().skip(1)).sum();
    let f_qp_chi = chi.process_fidelity();
    let choi = choi_fidelity(model);
    Ok(IdentityResiduals {
        f_z_table,
        f_x_table,
        f_z_chi,
        f_x_chi,
        f_qp_chi,
        choi,
        f_z: (f_z_table - f_z_chi).abs(),
        f_x: (f_x_table - f_x_chi).abs(),
        sum_rule: (chi.trace() - 1.0).abs(),
        reconstruction: (f_qp_chi - (f_z_table + f_x_table - 1.0 + both)).abs(),
        choi_vs_chi: (choi - f_qp_chi).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::classical_fidelity;
    use crate::gatelib::{cnot, pauli_str};
    use crate::qmath::{I, ONE};

    fn cnot_model(weights: &[(&str, f64)]) -> NoisyGateModel {
        NoisyGateModel::chi_diagonal_str(cnot(), weights).unwrap()
    }

    /// `A = (II + i·XI)/√2 · U_0`
    fn coherent_model() -> NoisyGateModel {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rot = (&pauli_str("II").unwrap() + &pauli_str("XI").unwrap().scale(I))
            .scale(Complex64::new(s, 0.0));
        NoisyGateModel::unitary_mixture(cnot(), vec![(1.0, &rot * &cnot())]).unwrap()
    }

    fn z_state(bits: usize) -> DensityMatrix {
        DensityMatrix::pure(&CVector::basis(4, bits))
    }

    #[test]
    fn ideal_apply_follows_cnot_truth_table() {
        let model = NoisyGateModel::ideal(cnot()).unwrap();
        let out = apply(&model, &z_state(0b10)).unwrap();
        assert!(out.matrix().approx_eq(z_state(0b11).matrix(), 1e-12));
    }

    #[test]
    fn chi_diagonal_apply_mixes_classically() {
        let model = cnot_model(&[("II", 0.5), ("XI", 0.5)]);
        let out = apply(&model, &z_state(0b00)).unwrap();
        let expected = (&z_state(0b00).matrix().scale(Complex64::new(0.5, 0.0)))
            + &z_state(0b10).matrix().scale(Complex64::new(0.5, 0.0));
        assert!(out.matrix().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn phase_error_is_invisible_on_z_inputs() {
        let ideal = NoisyGateModel::ideal(cnot()).unwrap();
        let phase = cnot_model(&[("ZI", 1.0)]);
        for s in 0..4 {
            let a = apply(&ideal, &z_state(s)).unwrap();
            let b = apply(&phase, &z_state(s)).unwrap();
            assert!(a.matrix().approx_eq(b.matrix(), 1e-12));
        }
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let model = NoisyGateModel::ideal(cnot()).unwrap();
        let rho = DensityMatrix::pure(&CVector::basis(2, 0));
        assert!(matches!(
            apply(&model, &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn process_matrix_examples() {
        let ideal = process_matrix(&NoisyGateModel::ideal(cnot()).unwrap());
        assert_eq!(ideal.process_fidelity(), 1.0);
        assert!((ideal.trace() - 1.0).abs() < 1e-12);

        let mix = NoisyGateModel::unitary_mixture(
            cnot(),
            vec![(0.5, cnot()), (0.5, &pauli_str("XI").unwrap() * &cnot())],
        )
        .unwrap();
        let chi = process_matrix(&mix);
        let (ii, xi) = ("II".parse().unwrap(), "XI".parse().unwrap());
        for a in PauliLabel::all(2) {
            for b in PauliLabel::all(2) {
                let expected = if a == b && (a == ii || a == xi) {
                    0.5
                } else {
                    0.0
                };
                assert!((chi.get(&a, &b) - Complex64::new(expected, 0.0)).norm() < 1e-12);
            }
        }

        // coherent rotation: c_II = 1/√2, c_XI = i/√2
        let chi = process_matrix(&coherent_model());
        assert!((chi.get(&ii, &ii) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((chi.get(&xi, &xi) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((chi.get(&ii, &xi) - Complex64::new(0.0, -0.5)).norm() < 1e-12);
        assert!((chi.get(&xi, &ii) - Complex64::new(0.0, 0.5)).norm() < 1e-12);
        assert!(chi.min_eigenvalue() > -1e-9);
    }

    #[test]
    fn choi_fidelity_examples() {
        assert!((choi_fidelity(&NoisyGateModel::ideal(cnot()).unwrap()) - 1.0).abs() < 1e-12);
        let uniform: Vec<(PauliLabel, f64)> = PauliLabel::all(2)
            .into_iter()
            .map(|l| (l, 1.0 / 16.0))
            .collect();
        let model = NoisyGateModel::chi_diagonal(cnot(), uniform).unwrap();
        assert!((choi_fidelity(&model) - 1.0 / 16.0).abs() < 1e-12);
        assert!((choi_fidelity(&coherent_model()) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_ideal_is_one() {
        let est = average_fidelity_mc(&NoisyGateModel::ideal(cnot()).unwrap(), 1000, 3).unwrap();
        assert!((est.mean - 1.0).abs() < 1e-12);
        assert!(est.stderr < 1e-12);
        assert!(average_fidelity_mc(&NoisyGateModel::ideal(cnot()).unwrap(), 0, 3).is_err());
    }

    #[test]
    fn monte_carlo_is_seeded() {
        let model = cnot_model(&[("II", 0.6), ("YZ", 0.4)]);
        let a = average_fidelity_mc(&model, 500, 11).unwrap();
        assert_eq!(a, average_fidelity_mc(&model, 500, 11).unwrap());
        assert_ne!(a.mean, average_fidelity_mc(&model, 500, 12).unwrap().mean);
    }

    #[test]
    fn truth_table_examples() {
        let z = basis_family(BasisKind::ZProduct);
        let ideal = truth_table(&NoisyGateModel::ideal(cnot()).unwrap(), &z).unwrap();
        for k in 0..4 {
            for j in 0..4 {
                let expected = if j == z.ideal_permutation[k] {
                    1.0
                } else {
                    0.0
                };
                assert!((ideal.get(k, j) - expected).abs() < 1e-12);
            }
        }
        let phase = truth_table(&cnot_model(&[("ZI", 1.0)]), &z).unwrap();
        for k in 0..4 {
            for j in 0..4 {
                assert!((phase.get(k, j) - ideal.get(k, j)).abs() < 1e-12);
            }
        }
        // oracle: row k of the table is the diagonal of apply() on |k⟩
        let model = cnot_model(&[("II", 0.9), ("XI", 0.1)]);
        let table = truth_table(&model, &z).unwrap();
        for k in 0..4 {
            let rho = apply(&model, &z_state(k)).unwrap();
            for j in 0..4 {
                assert!((table.get(k, j) - rho.matrix()[(j, j)].re).abs() < 1e-12);
            }
            assert!((table.correct(k) - 0.9).abs() < 1e-12);
            assert!((table.get(k, z.ideal_permutation[k] ^ 0b10) - 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn truth_table_rejects_wrong_ideal_gate() {
        let model = NoisyGateModel::ideal(CMatrix::identity(4)).unwrap();
        assert!(truth_table(&model, &basis_family(BasisKind::ZProduct)).is_err());
        assert!(truth_table(&model, &basis_family(BasisKind::ZxEigen)).is_ok());
    }

    #[test]
    fn sample_counts_examples() {
        let t = TruthTable::for_family(
            BasisKind::ZProduct,
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.25; 4],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let c = sample_counts(&t, 100, 1).unwrap();
        assert_eq!(c.counts[0], vec![100, 0, 0, 0]);
        assert!(c.counts.iter().all(|row| row.iter().sum::<u64>() == 100));
        assert_eq!(c, sample_counts(&t, 100, 1).unwrap());
        assert!(sample_counts(&t, 0, 1).is_err());

        let big = sample_counts(&t, 1_000_000, 5).unwrap();
        // binomial sd = sqrt(n p (1-p)) = sqrt(1e6 · 3/16) ≈ 433
        let sd = (1e6f64 * 0.25 * 0.75).sqrt();
        for &n in &big.counts[1] {
            assert!((n as f64 - 250_000.0).abs() < 5.0 * sd, "{n}");
        }
    }

    #[test]
    fn identities_hold_for_simple_models() {
        let ideal = verify_identities(&NoisyGateModel::ideal(cnot()).unwrap()).unwrap();
        assert!(ideal.max() < 1e-12);
        let r = verify_identities(&coherent_model()).unwrap();
        assert!(r.max() < 1e-10, "{r:?}");
        assert!((r.f_qp_chi - 0.5).abs() < 1e-12);
    }

    #[test]
    fn model_validation() {
        assert!(NoisyGateModel::chi_diagonal_str(cnot(), &[("II", 0.5)]).is_err());
        assert!(NoisyGateModel::chi_diagonal_str(cnot(), &[("II", 1.1), ("XI", -0.1)]).is_err());
        assert!(NoisyGateModel::chi_diagonal_str(cnot(), &[("III", 1.0)]).is_err());
        assert!(NoisyGateModel::chi_diagonal_str(cnot(), &[("II", 0.5), ("II", 0.5)]).is_err());
        let not_unitary = CMatrix::identity(4).scale(ONE * 2.0);
        assert!(matches!(
            NoisyGateModel::unitary_mixture(cnot(), vec![(1.0, not_unitary)]),
            Err(Error::NotUnitary { .. })
        ));
        assert!(NoisyGateModel::ideal(CMatrix::identity(3)).is_err());
    }

    #[test]
    fn zx_identity_fidelity_counts_preserving_errors() {
        let model = cnot_model(&[("II", 0.7), ("ZI", 0.1), ("XI", 0.2)]);
        let table = truth_table(&model, &basis_family(BasisKind::ZxEigen)).unwrap();
        assert!((classical_fidelity(&table) - 0.8).abs() < 1e-12);
    }
}
