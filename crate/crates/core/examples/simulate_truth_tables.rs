//! Exact truth tables of a noisy CNOT in all five input families.
//!
//!     cargo run --example simulate_truth_tables

use complementary_fidelity::analysis::classical_fidelity;
use complementary_fidelity::channel::{truth_table, NoisyGateModel};
use complementary_fidelity::gatelib::{basis_family, cnot, BasisKind};

fn main() {
    // 5% bit flip on the target after the gate, 3% phase flip on the control.
    let model =
        NoisyGateModel::chi_diagonal_str(cnot(), &[("II", 0.92), ("IX", 0.05), ("ZI", 0.03)])
            .unwrap();

    for kind in BasisKind::ALL {
        let family = basis_family(kind);
        let table = truth_table(&model, &family).unwrap();
        println!(
            "{} inputs, fidelity {:.3}",
            kind.tag(),
            classical_fidelity(&table)
        );
        for (k, row) in table.probs().iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|p| format!("{p:.3}")).collect();
            println!("  {:>6}  {}", kind.member_labels()[k], cells.join("  "));
        }
    }
}
