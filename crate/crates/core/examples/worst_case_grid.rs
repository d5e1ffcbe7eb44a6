//! The joint error distribution that attains the smallest process fidelity,
//! and worst cases for other operations, from the two error budgets.
//!
//!     cargo run --example worst_case_grid

use complementary_fidelity::analysis::{
    error_budget, grid_max_mass, grid_min_witness, mask_name, DerivedOperation, MarginalGrid,
};
use complementary_fidelity::fixture;

fn main() {
    let (z, x) = fixture::measured();
    let grid = MarginalGrid::from_budgets(&error_budget(&z), &error_budget(&x)).unwrap();

    let worst = grid_min_witness(&grid, &[(0, 0)]).unwrap();
    println!(
        "minimal F_qp = {:.5}; rows are Z flips, columns X flips",
        worst.mass
    );
    print!("{:>4}", "");
    for j in 0..4 {
        print!("{:>8}", mask_name(j as u32, 2));
    }
    println!();
    for (i, row) in worst.witness.iter().enumerate() {
        print!("{:>4}", mask_name(i as u32, 2));
        for v in row {
            print!("{v:>8.4}");
        }
        println!();
    }

    for op in DerivedOperation::ALL {
        let cells = op.cells();
        let lo = grid_min_witness(&grid, &cells).unwrap().mass;
        let hi = grid_max_mass(&grid, &cells).unwrap();
        println!("{:<14} fidelity in [{lo:.4}, {hi:.4}]", op.name());
    }
}
