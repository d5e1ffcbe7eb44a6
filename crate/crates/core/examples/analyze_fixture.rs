//! Bounds on the bundled optical CNOT measurements.
//!
//!     cargo run --example analyze_fixture

use complementary_fidelity::analysis::{full_report, DerivedOperation};
use complementary_fidelity::fixture;

fn main() {
    let (z, x) = fixture::measured();
    let r = full_report(&z, &x, 0.5).expect("fixture tables are consistent");

    println!(
        "classical fidelities  F_Z = {:.4}  F_X = {:.4}",
        r.f_z, r.f_x
    );
    println!(
        "process fidelity      {:.4} <= F_qp <= {:.4}",
        r.interval.lo, r.interval.hi
    );
    println!("entangling capability >= {:.4}", r.c_coarse());
    println!("Bell discrimination   >= {:.4}", r.d_coarse());
    for op in DerivedOperation::ALL {
        println!("{:<14} fidelity >= {:.4}", op.name(), r.derived_min(op));
    }
    println!(
        "refined: C >= {:.4}, D >= {:.4}",
        r.c_refined(),
        r.d_refined()
    );
}
