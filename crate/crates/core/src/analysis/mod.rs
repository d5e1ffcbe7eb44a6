//! Bounds computed from classical truth tables alone.

mod bounds;
mod budget;
mod grid;
mod report;
mod table;

pub use bounds::{
    capability_bound, derived_fidelity_bound, discrimination_bound, fidelity_interval,
    DerivedOperation, FidelityInterval,
};
pub use budget::{classical_fidelity, error_budget, mask_name, ErrorBudget};
pub use grid::{
    as_product, frechet_lower, frechet_upper, grid_max_mass, grid_max_witness, grid_min_mass,
    grid_min_witness, product_set, Cell, GridSolution, MarginalGrid, FEASIBILITY_TOLERANCE,
    NORMALIZATION_TOLERANCE,
};
pub use report::{full_report, FidelityReport};
pub use table::{Provenance, TruthTable, COUNT_ROW_TOLERANCE, ROW_SUM_TOLERANCE};
