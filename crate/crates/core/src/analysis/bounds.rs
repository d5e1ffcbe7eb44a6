use crate::error::{Error, Result};
use crate::gatelib::{flip_pattern, preserved_errors, BasisKind};

use super::grid::{grid_min_mass, Cell, MarginalGrid};

/// Process-fidelity interval from the two classical fidelities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityInterval {
    /// `max(0, F_Z + F_X − 1)`
    pub lo: f64,
    /// `F_Z + F_X − 1`, possibly negative.
    pub lo_unclamped: f64,
    /// `min(F_Z, F_X)`
    pub hi: f64,
}

impl FidelityInterval {
    pub fn contains(&self, f: f64, slack: f64) -> bool {
        f >= self.lo - slack && f <= self.hi + slack
    }
}

pub fn fidelity_interval(f_z: f64, f_x: f64) -> FidelityInterval {
    debug_assert!((0.0..=1.0).contains(&f_z) && (0.0..=1.0).contains(&f_x));
    let lo_unclamped = f_z + f_x - 1.0;
    FidelityInterval {
        lo: lo_unclamped.max(0.0),
        lo_unclamped,
        hi: f_z.min(f_x),
    }
}

/// Witness-based entanglement lower bound `(F − b)/(1 − b)`, where `b` is the
/// largest overlap a separable state can have with the target (1/M for M×M).
pub fn capability_bound(fidelity: f64, b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "witness parameter b = {b} must lie in (0, 1)"
        )));
    }
    Ok((fidelity - b) / (1.0 - b))
}

/// Pair discrimination `2F − 1`.
pub fn discrimination_bound(fidelity: f64) -> f64 {
    2.0 * fidelity - 1.0
}

/// Operations whose fidelity is bounded from the two classical tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedOperation {
    /// Identity action on control-Z / target-X eigenstates.
    IdentityZx,
    /// Local X⊗Z inputs to Bell states.
    Entangler,
    /// Bell states to local X⊗Z outputs.
    BellAnalyzer,
}

impl DerivedOperation {
    pub const ALL: [DerivedOperation; 3] = [
        DerivedOperation::IdentityZx,
        DerivedOperation::Entangler,
        DerivedOperation::BellAnalyzer,
    ];

    pub fn input_kind(self) -> BasisKind {
        match self {
            DerivedOperation::IdentityZx => BasisKind::ZxEigen,
            DerivedOperation::Entangler => BasisKind::XzEigen,
            DerivedOperation::BellAnalyzer => BasisKind::Bell,
        }
    }

    pub fn output_kind(self) -> BasisKind {
        self.input_kind().output_kind()
    }

    pub fn name(self) -> &'static str {
        match self {
            DerivedOperation::IdentityZx => "identity_zx",
            DerivedOperation::Entangler => "entangler",
            DerivedOperation::BellAnalyzer => "bell_analyzer",
        }
    }

    /// Grid cells `(j_z, j_x)` of the errors that keep the outputs correct.
    pub fn cells(self) -> Vec<Cell> {
        preserved_errors(self.output_kind())
            .expect("derived operations have supported output families")
            .iter()
            .map(|label| {
                let p = flip_pattern(label);
                (p.z_mask as usize, p.x_mask as usize)
            })
            .collect()
    }
}

/// Smallest fidelity of `op` consistent with the observed marginals.
pub fn derived_fidelity_bound(op: DerivedOperation, grid: &MarginalGrid) -> Result<f64> {
    grid_min_mass(grid, &op.cells())
}
