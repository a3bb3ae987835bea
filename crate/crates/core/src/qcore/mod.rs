//! Dense complex linear algebra, Pauli operators and the gate catalog.

mod gates;
mod matrix;
mod pauli;

pub use gates::{GateId, UnitaryGate};
pub use matrix::{
    eigh, frobenius_inner, hermitian_from_eigen, partial_trace_first, partial_trace_system,
    project_psd, tensor, trace_norm, CMatrix, HermitianMatrix, C64, HERMITIAN_TOL,
};
pub use pauli::{pauli_operator, Pauli, PauliLabel, PauliString};
