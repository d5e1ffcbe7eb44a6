//! Finite-shot truth tables and how the bounds tighten with more shots.
//!
//!     cargo run --example sampled_counts

use complementary_fidelity::analysis::full_report;
use complementary_fidelity::channel::{sample_counts, truth_table};
use complementary_fidelity::fixture;
use complementary_fidelity::gatelib::{basis_family, BasisKind};

fn main() {
    let model = fixture::min_fidelity_model();
    let z = truth_table(&model, &basis_family(BasisKind::ZProduct)).unwrap();
    let x = truth_table(&model, &basis_family(BasisKind::XProduct)).unwrap();
    let exact = full_report(&z, &x, 0.5).unwrap();
    println!(
        "exact     F_qp in [{:.4}, {:.4}]",
        exact.interval.lo, exact.interval.hi
    );

    for shots in [100, 1_000, 10_000, 100_000] {
        let zc = sample_counts(&z, shots, 1)
            .unwrap()
            .to_truth_table()
            .unwrap();
        let xc = sample_counts(&x, shots, 2)
            .unwrap()
            .to_truth_table()
            .unwrap();
        let r = full_report(&zc, &xc, 0.5).unwrap();
        println!(
            "{shots:>7}   F_qp in [{:.4}, {:.4}]",
            r.interval.lo, r.interval.hi
        );
    }
}
