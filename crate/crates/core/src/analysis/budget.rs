use crate::error::{Error, Result};
use crate::gatelib::{mask_symbol, BasisKind};

use super::table::{TruthTable, ROW_SUM_TOLERANCE};

/// Observed distribution of output flip patterns in one basis, indexed by
/// flip mask. Entry 0 is the no-error probability.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorBudget {
    basis: BasisKind,
    eta: Vec<f64>,
}

impl ErrorBudget {
    pub fn new(basis: BasisKind, eta: Vec<f64>) -> Result<Self> {
        if eta.is_empty() || !eta.len().is_power_of_two() {
            return Err(Error::InvalidParameter(
                "error budget length must be a power of two".into(),
            ));
        }
        if eta.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter(
                "error budget entries must be nonnegative".into(),
            ));
        }
        let sum: f64 = eta.iter().sum();
        if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "error budget sums to {sum}"
            )));
        }
        Ok(Self { basis, eta })
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn values(&self) -> &[f64] {
        &self.eta
    }

    pub fn get(&self, mask: u32) -> f64 {
        self.eta[mask as usize]
    }

    /// Probability of the pattern with symbol `0`, `C`, `T` or `B` (two qubits).
    pub fn by_symbol(&self, symbol: char) -> Option<f64> {
        crate::gatelib::symbol_mask(symbol)
            .filter(|&m| (m as usize) < self.eta.len())
            .map(|m| self.get(m))
    }

    /// `(symbol, probability)` pairs in the order 0, C, T, B for two qubits,
    /// otherwise mask order with binary labels.
    pub fn entries(&self) -> Vec<(String, f64)> {
        if self.eta.len() == 4 {
            ['0', 'C', 'T', 'B']
                .iter()
                .map(|&s| (s.to_string(), self.by_symbol(s).unwrap()))
                .collect()
        } else {
            let width = self.eta.len().trailing_zeros() as usize;
            self.eta
                .iter()
                .enumerate()
                .map(|(m, &v)| (format!("{m:0width$b}"), v))
                .collect()
        }
    }
}

/// `(1/d) Σ_k probs[k][perm(k)]`.
pub fn classical_fidelity(table: &TruthTable) -> f64 {
    let d = table.dim();
    (0..d).map(|k| table.correct(k)).sum::<f64>() / d as f64
}

/// `eta(p) = (1/d) Σ_k probs[k][perm(k) XOR p]` for every flip mask `p`.
pub fn error_budget(table: &TruthTable) -> ErrorBudget {
    let d = table.dim();
    let perm = table.ideal_permutation();
    let eta = (0..d)
        .map(|p| (0..d).map(|k| table.get(k, perm[k] ^ p)).sum::<f64>() / d as f64)
        .collect();
    // the table's own row check already bounds the total
    ErrorBudget {
        basis: table.basis(),
        eta,
    }
}

pub fn mask_name(mask: u32, n_qubits: usize) -> String {
    if n_qubits == 2 {
        mask_symbol(mask).to_string()
    } else {
        format!("{mask:0n_qubits$b}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_table_has_no_errors() {
        let t = TruthTable::for_family(
            BasisKind::ZProduct,
            vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        assert_eq!(classical_fidelity(&t), 1.0);
        let eta = error_budget(&t);
        assert_eq!(eta.values(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(eta.by_symbol('0'), Some(1.0));
    }

    #[test]
    fn budget_entries_follow_symbol_order() {
        let b = ErrorBudget::new(BasisKind::ZProduct, vec![0.7, 0.1, 0.15, 0.05]).unwrap();
        let names: Vec<String> = b.entries().into_iter().map(|e| e.0).collect();
        assert_eq!(names, ["0", "C", "T", "B"]);
        assert_eq!(b.by_symbol('C'), Some(0.15));
        assert_eq!(b.by_symbol('T'), Some(0.1));
    }

    #[test]
    fn budget_validation() {
        assert!(ErrorBudget::new(BasisKind::ZProduct, vec![0.5, 0.5, 0.5]).is_err());
        assert!(ErrorBudget::new(BasisKind::ZProduct, vec![0.9, 0.2, -0.1, 0.0]).is_err());
        assert!(ErrorBudget::new(BasisKind::ZProduct, vec![0.5, 0.0, 0.0, 0.0]).is_err());
    }
}
