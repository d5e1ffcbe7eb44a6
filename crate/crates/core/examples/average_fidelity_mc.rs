//! Haar-averaged state fidelity by sampling, against (F·d + 1)/(d + 1).
//!
//!     cargo run --release --example average_fidelity_mc

use complementary_fidelity::channel::{
    average_fidelity_from_process, average_fidelity_mc, process_matrix,
};
use complementary_fidelity::fixture;

fn main() {
    let model = fixture::min_fidelity_model();
    let f_qp = process_matrix(&model).process_fidelity();
    let expected = average_fidelity_from_process(f_qp, model.dim());
    for samples in [1_000, 10_000, 100_000] {
        let est = average_fidelity_mc(&model, samples, 42).unwrap();
        println!(
            "{samples:>7} samples: {:.5} +- {:.5}  (exact {expected:.5}, {:+.2} stderr)",
            est.mean,
            est.stderr,
            (est.mean - expected) / est.stderr
        );
    }
}
