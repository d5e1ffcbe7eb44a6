use crate::error::{Error, Result};
use crate::gatelib::BasisKind;

use super::bounds::{
    capability_bound, derived_fidelity_bound, discrimination_bound, fidelity_interval,
};
use super::bounds::{DerivedOperation, FidelityInterval};
use super::budget::{classical_fidelity, error_budget, ErrorBudget};
use super::grid::{grid_min_witness, MarginalGrid};
use super::table::TruthTable;

/// Everything that follows from a Z-basis and an X-basis truth table.
///
/// Lower bounds are stored raw; the accessors without `_raw` clamp at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityReport {
    pub b: f64,
    pub f_z: f64,
    pub f_x: f64,
    pub interval: FidelityInterval,
    pub c_coarse_raw: f64,
    pub d_coarse_raw: f64,
    pub f_i_min: f64,
    pub f_c_min: f64,
    pub f_d_min: f64,
    pub c_refined_raw: f64,
    pub d_refined_raw: f64,
    pub eta_z: ErrorBudget,
    pub eta_x: ErrorBudget,
    pub grid: MarginalGrid,
    /// Joint error grid attaining the smallest process fidelity.
    pub min_fqp_witness: Vec<Vec<f64>>,
    pub z_table: TruthTable,
    pub x_table: TruthTable,
}

impl FidelityReport {
    pub fn c_coarse(&self) -> f64 {
        self.c_coarse_raw.max(0.0)
    }

    pub fn d_coarse(&self) -> f64 {
        self.d_coarse_raw.max(0.0)
    }

    pub fn c_refined(&self) -> f64 {
        self.c_refined_raw.max(0.0)
    }

    pub fn d_refined(&self) -> f64 {
        self.d_refined_raw.max(0.0)
    }

    pub fn derived_min(&self, op: DerivedOperation) -> f64 {
        match op {
            DerivedOperation::IdentityZx => self.f_i_min,
            DerivedOperation::Entangler => self.f_c_min,
            DerivedOperation::BellAnalyzer => self.f_d_min,
        }
    }
}

pub fn full_report(z_table: &TruthTable, x_table: &TruthTable, b: f64) -> Result<FidelityReport> {
    if z_table.basis() != BasisKind::ZProduct {
        return Err(Error::UnsupportedBasis(format!(
            "expected a Z table, got {}",
            z_table.basis()
        )));
    }
    if x_table.basis() != BasisKind::XProduct {
        return Err(Error::UnsupportedBasis(format!(
            "expected an X table, got {}",
            x_table.basis()
        )));
    }
    if z_table.dim() != x_table.dim() {
        return Err(Error::DimensionMismatch {
            expected: z_table.dim(),
            actual: x_table.dim(),
        });
    }

    let f_z = classical_fidelity(z_table);
    let f_x = classical_fidelity(x_table);
    let interval = fidelity_interval(f_z, f_x);
    let eta_z = error_budget(z_table);
    let eta_x = error_budget(x_table);
    let grid = MarginalGrid::from_budgets(&eta_z, &eta_x)?;

    let f_i_min = derived_fidelity_bound(DerivedOperation::IdentityZx, &grid)?;
    let f_c_min = derived_fidelity_bound(DerivedOperation::Entangler, &grid)?;
    let f_d_min = derived_fidelity_bound(DerivedOperation::BellAnalyzer, &grid)?;
    let min_fqp_witness = grid_min_witness(&grid, &[(0, 0)])?.witness;

    Ok(FidelityReport {
        b,
        f_z,
        f_x,
        interval,
        c_coarse_raw: capability_bound(interval.lo_unclamped, b)?,
        d_coarse_raw: discrimination_bound(interval.lo_unclamped),
        f_i_min,
        f_c_min,
        f_d_min,
        c_refined_raw: capability_bound(f_c_min, b)?,
        d_refined_raw: discrimination_bound(f_d_min),
        eta_z,
        eta_x,
        grid,
        min_fqp_witness,
        z_table: z_table.clone(),
        x_table: x_table.clone(),
    })
}
