//! Simultaneous reconstruction of quantum processes and sparse measurement
//! corruption.
//!
//! Two tomography schemes are provided:
//!
//! * [`choi`]: random Pauli observables measured on the Choi state of the
//!   channel, recovered with a trace-norm / ℓ1 regularized least-squares
//!   program under positivity and partial-trace constraints.
//! * [`procmat`]: input-state / projector configurations probing the process
//!   matrix χ in a chosen operator basis, recovered with an entrywise-ℓ1 /
//!   ℓ1 program under positivity and trace-preservation constraints.
//!
//! Both share the dense linear algebra in [`qcore`], the corruption and
//! shot-noise generators in [`noise`], the first-order solver in [`solver`]
//! and the figures of merit in [`metrics`].

pub mod choi;
pub mod error;
pub mod metrics;
pub mod noise;
pub mod procmat;
pub mod qcore;
pub mod rng;
pub mod solver;

pub use error::{QptError, Result};
pub use qcore::{CMatrix, HermitianMatrix, C64};
