use crate::error::{Error, Result};
use crate::gatelib::{basis_family, BasisKind};

/// Allowed deviation of a probability row from unit sum. Published tables
/// print four entries to three decimals, so a row may be off by 4 × 0.0005.
pub const ROW_SUM_TOLERANCE: f64 = 2e-3;

/// Row-sum tolerance for normalized count tables.
pub const COUNT_ROW_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Exact,
    /// Normalized from integer counts; total shots per row.
    Counts(Vec<u64>),
}

/// Output probabilities per input: `probs[input][output]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthTable {
    basis: BasisKind,
    probs: Vec<Vec<f64>>,
    ideal_permutation: Vec<usize>,
    provenance: Provenance,
}

impl TruthTable {
    pub fn new(
        basis: BasisKind,
        probs: Vec<Vec<f64>>,
        ideal_permutation: Vec<usize>,
    ) -> Result<Self> {
        let table = Self {
            basis,
            probs,
            ideal_permutation,
            provenance: Provenance::Exact,
        };
        table.validate(ROW_SUM_TOLERANCE)?;
        Ok(table)
    }

    /// Table over a catalog family, using that family's ideal permutation.
    pub fn for_family(basis: BasisKind, probs: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(basis, probs, basis_family(basis).ideal_permutation)
    }

    /// Normalizes each row of integer counts to probabilities.
    pub fn from_counts(
        basis: BasisKind,
        counts: &[Vec<u64>],
        ideal_permutation: Vec<usize>,
    ) -> Result<Self> {
        let mut shots = Vec::with_capacity(counts.len());
        let mut probs = Vec::with_capacity(counts.len());
        for (k, row) in counts.iter().enumerate() {
            let total: u64 = row.iter().sum();
            if total == 0 {
                return Err(Error::InvalidTable(format!("row {k} has no counts")));
            }
            shots.push(total);
            probs.push(row.iter().map(|&c| c as f64 / total as f64).collect());
        }
        let table = Self {
            basis,
            probs,
            ideal_permutation,
            provenance: Provenance::Counts(shots),
        };
        table.validate(COUNT_ROW_TOLERANCE)?;
        Ok(table)
    }

    fn validate(&self, row_tol: f64) -> Result<()> {
        let d = self.probs.len();
        if d == 0 || !d.is_power_of_two() {
            return Err(Error::InvalidTable(format!(
                "dimension {d} is not a power of two"
            )));
        }
        for (k, row) in self.probs.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidTable(format!(
                    "row {k} has {} entries, expected {d}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(Error::InvalidTable(format!(
                    "row {k} has invalid entry {bad}"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > row_tol {
                return Err(Error::InvalidTable(format!("row {k} sums to {sum}")));
            }
        }
        let mut seen = vec![false; d];
        for &p in &self.ideal_permutation {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidTable(
                    "ideal permutation is not a permutation".into(),
                ));
            }
        }
        if self.ideal_permutation.len() != d {
            return Err(Error::InvalidTable(
                "ideal permutation has the wrong length".into(),
            ));
        }
        Ok(())
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    pub fn get(&self, input: usize, output: usize) -> f64 {
        self.probs[input][output]
    }

    pub fn ideal_permutation(&self) -> &[usize] {
        &self.ideal_permutation
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Probability that input `k` produced its correct output.
    pub fn correct(&self, k: usize) -> f64 {
        self.probs[k][self.ideal_permutation[k]]
    }
}
