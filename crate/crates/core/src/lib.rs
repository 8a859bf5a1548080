//! Selective two-qubit entanglers for a three-spin NMR chain.
//!
//! The crate builds rotating-frame Hamiltonians for a linear chain 1–2–3,
//! propagates rectangular pulse schedules exactly, designs the weak "soft"
//! pulse on qubit 1 that cancels the J12 evolution while J23 produces
//! `exp(−iα Iz⁽²⁾Iz⁽³⁾)`, and compares it against hard-pulse refocusing
//! through Bloch-Siegert shifts and propagator fidelity. A correlated-noise
//! error-correction circuit built from these gates is checked end to end.
//!
//! Conventions used throughout:
//! - frequencies are angular (rad/s) internally; Hz only at I/O boundaries;
//! - qubit 1 is the most significant tensor factor;
//! - pulse schedules are listed in time order and multiply on the left.

pub mod bloch_siegert;
pub mod config;
pub mod design;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod pulse;
pub mod qec;
pub mod simplex;
pub mod spin;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, StateVector};
pub use spin::SpinChainParams;
