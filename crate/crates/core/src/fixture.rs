//! Bundled measurement data from an optical controlled-NOT.
//!
//! The Z table holds the classical CNOT, the X table the reversed CNOT, each
//! as printed to three decimals (rows are not renormalized). The minimal
//! fidelity model is the diagonal error distribution that attains the lower
//! process-fidelity bound.

use crate::analysis::TruthTable;
use crate::channel::NoisyGateModel;
use crate::iofmt::{parse_model, parse_truth_table, TableFormat};

pub const MEASURED_Z_JSON: &str = include_str!("../data/measured_z.json");
pub const MEASURED_X_JSON: &str = include_str!("../data/measured_x.json");
pub const MIN_FIDELITY_MODEL_JSON: &str = include_str!("../data/min_fidelity_model.json");
pub const IDEAL_MODEL_JSON: &str = include_str!("../data/ideal_model.json");

/// File names written by `cfid fixture`, with their contents.
pub const FILES: [(&str, &str); 4] = [
    ("measured_z.json", MEASURED_Z_JSON),
    ("measured_x.json", MEASURED_X_JSON),
    ("min_fidelity_model.json", MIN_FIDELITY_MODEL_JSON),
    ("ideal_model.json", IDEAL_MODEL_JSON),
];

/// The Z-basis and X-basis measured tables.
pub fn measured() -> (TruthTable, TruthTable) {
    (measured_z(), measured_x())
}

pub fn measured_z() -> TruthTable {
    parse_truth_table(MEASURED_Z_JSON.as_bytes(), TableFormat::Json)
        .expect("bundled Z table parses")
}

pub fn measured_x() -> TruthTable {
    parse_truth_table(MEASURED_X_JSON.as_bytes(), TableFormat::Json)
        .expect("bundled X table parses")
}

pub fn min_fidelity_model() -> NoisyGateModel {
    parse_model(MIN_FIDELITY_MODEL_JSON.as_bytes()).expect("bundled model parses")
}
