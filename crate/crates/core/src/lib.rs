//! Characterize a two-qubit controlled-NOT from two complementary classical
//! truth tables.
//!
//! The Z-basis table shows the classical CNOT, the X-basis table the reversed
//! CNOT. Their average success probabilities bound the quantum process
//! fidelity, and the per-pattern error budgets bound the fidelities of
//! operations that were never run: the identity on control-Z/target-X
//! eigenstates, Bell-state generation and Bell-state analysis. A brute-force
//! density-matrix simulator ([`channel`]) checks every bound against explicit
//! noise models.
//!
//! ```
//! use complementary_fidelity::{analysis, fixture};
//!
//! let (z, x) = fixture::measured();
//! let report = analysis::full_report(&z, &x, 0.5).unwrap();
//! assert!((report.interval.lo - 0.72).abs() < 1e-3);
//! assert!(report.f_d_min > report.f_c_min);
//! ```

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod error;
pub mod fixture;
pub mod gatelib;
pub mod iofmt;
pub mod qmath;

pub use error::{Error, Result};
