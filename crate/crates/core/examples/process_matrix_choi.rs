//! Process matrix of a coherent over-rotation and its Choi-state fidelity.
//!
//!     cargo run --example process_matrix_choi

use complementary_fidelity::channel::{
    choi_fidelity, process_matrix, verify_identities, NoisyGateModel,
};
use complementary_fidelity::gatelib::{cnot, pauli_str, PauliLabel};
use complementary_fidelity::qmath::CMatrix;
use num_complex::Complex64;

fn main() {
    let theta: f64 = 0.15;
    let zx = pauli_str("ZX").unwrap();
    let rotation = &CMatrix::identity(4).scale(Complex64::new(theta.cos(), 0.0))
        + &zx.scale(Complex64::new(0.0, theta.sin()));
    let gate = &rotation * &cnot();
    let model = NoisyGateModel::unitary_mixture(cnot(), vec![(1.0, gate)]).unwrap();

    let chi = process_matrix(&model);
    println!("nonzero process-matrix entries:");
    for row in PauliLabel::all(2) {
        for col in PauliLabel::all(2) {
            let v = chi.get(&row, &col);
            if v.norm() > 1e-12 {
                println!("  chi[{row},{col}] = {:+.5}{:+.5}i", v.re, v.im);
            }
        }
    }
    println!("chi_II,II       = {:.6}", chi.process_fidelity());
    println!("Choi fidelity   = {:.6}", choi_fidelity(&model));

    let r = verify_identities(&model).unwrap();
    println!(
        "F_Z from table  = {:.6}, from chi = {:.6}",
        r.f_z_table, r.f_z_chi
    );
    println!(
        "F_X from table  = {:.6}, from chi = {:.6}",
        r.f_x_table, r.f_x_chi
    );
}
