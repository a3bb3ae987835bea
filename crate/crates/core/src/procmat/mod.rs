//! Process-matrix representation: operator bases, probing configurations,
//! the sensing matrix and the recovery program.

mod basis;
mod configs;
mod sensing;

pub use basis::{GammaBasis, GammaKind};
pub use configs::{
    build_configuration_set, polarization_ket, product_ket, select_configurations, ConfigurationSet,
    TWO_QUBIT_INPUTS, TWO_QUBIT_OBSERVABLES,
};
pub use sensing::{sensing_matrix, SensingMatrix};

use crate::error::{QptError, Result};
use crate::noise::{shot_estimate, ShotMode, Shots};
use crate::qcore::{CMatrix, HermitianMatrix, UnitaryGate, C64};
use crate::solver::{solve, LinearMeasurement, MatrixPenalty, RecoveryProblem, RecoveryResult, SolverOptions};

/// `χ` of a channel `E(ρ) = Σ χ_{αβ} Γ_α ρ Γ_β†` in a declared basis.
#[derive(Debug, Clone)]
pub struct ProcessMatrix {
    basis: GammaBasis,
    chi: HermitianMatrix,
}

impl ProcessMatrix {
    pub fn new(basis: GammaBasis, chi: HermitianMatrix) -> Result<Self> {
        if chi.dim() != basis.len() {
            return Err(QptError::dim(format!(
                "process matrix of dimension {} in a basis of {} elements",
                chi.dim(),
                basis.len()
            )));
        }
        Ok(ProcessMatrix { basis, chi })
    }

    pub fn basis(&self) -> &GammaBasis {
        &self.basis
    }

    pub fn chi(&self) -> &HermitianMatrix {
        &self.chi
    }

    pub fn into_chi(self) -> HermitianMatrix {
        self.chi
    }

    /// `Σ χ_{αβ} Γ_β†Γ_α`, the identity for trace-preserving channels.
    pub fn tp_operator(&self) -> CMatrix {
        let d = self.basis.d();
        let g = self.basis.elements();
        let mut out = CMatrix::zeros(d, d);
        for (a, ga) in g.iter().enumerate() {
            for (b, gb) in g.iter().enumerate() {
                let c = self.chi[(a, b)];
                if c != C64::new(0.0, 0.0) {
                    out += gb.adjoint() * ga * c;
                }
            }
        }
        out
    }

    /// `‖Σ χ_{αβ} Γ_β†Γ_α − I‖_F`.
    pub fn tp_residual(&self) -> f64 {
        let d = self.basis.d();
        (self.tp_operator() - CMatrix::identity(d, d)).norm()
    }

    /// `Σ χ_{αβ} Γ_α ρ Γ_β†`.
    pub fn apply_channel(&self, rho: &CMatrix) -> Result<CMatrix> {
        let d = self.basis.d();
        if rho.shape() != (d, d) {
            return Err(QptError::dim("state dimension does not match the process"));
        }
        let g = self.basis.elements();
        let left: Vec<CMatrix> = g.iter().map(|ga| ga * rho).collect();
        let mut out = CMatrix::zeros(d, d);
        for (a, la) in left.iter().enumerate() {
            for (b, gb) in g.iter().enumerate() {
                let c = self.chi[(a, b)];
                if c != C64::new(0.0, 0.0) {
                    out += la * gb.adjoint() * c;
                }
            }
        }
        Ok(out)
    }
}

/// `χ_{αβ} = e_α·conj(e_β)` with `U = Σ e_α Γ_α`.
pub fn process_matrix_of_unitary(gate: &UnitaryGate, basis: &GammaBasis) -> Result<ProcessMatrix> {
    let e = basis.expand(gate.matrix())?;
    let n = e.len();
    let chi = CMatrix::from_fn(n, n, |a, b| e[a] * e[b].conj());
    ProcessMatrix::new(basis.clone(), HermitianMatrix::symmetrized(chi))
}

/// Simulated outcomes `y_o = p̂_o + v_o`, where `p̂_o` estimates
/// `Tr(M_o E(ρ_o))` from `shots` projective measurements.
pub fn simulate_process_outcomes(
    chi: &ProcessMatrix,
    configs: &ConfigurationSet,
    selected: &[usize],
    shots: Shots,
    corruption: &[f64],
    seed: u64,
) -> Result<Vec<f64>> {
    if corruption.len() != selected.len() {
        return Err(QptError::dim(format!(
            "corruption has {} entries for {} configurations",
            corruption.len(),
            selected.len()
        )));
    }
    let phi = sensing_matrix(chi.basis(), configs, selected)?;
    let exact = phi.apply(chi.chi().matrix());
    let estimate = shot_estimate(&exact, shots, ShotMode::ProjectorProbability, seed)?;
    Ok(estimate.iter().zip(corruption).map(|(p, v)| p + v).collect())
}

/// Recovers `(χ, v)` from unscaled outcomes by minimizing
/// `½‖y − Φχ − v‖² + μ₁‖vec χ‖₁ + μ₂‖v‖₁` over positive, trace-preserving `χ`.
pub fn recover_process(
    y: &[f64],
    phi: &SensingMatrix,
    basis: &GammaBasis,
    mu1: f64,
    mu2: f64,
    opts: &SolverOptions,
) -> Result<RecoveryResult> {
    if phi.d() != basis.d() || phi.basis_kind() != basis.kind() {
        return Err(QptError::dim("sensing matrix was built for a different basis"));
    }
    if !(mu1 > 0.0 && mu2 > 0.0) {
        return Err(QptError::config("regularization weights must be positive"));
    }
    let constraint = basis.tp_constraint()?;
    let problem = RecoveryProblem {
        forward: phi,
        data: y.to_vec(),
        reg_matrix: MatrixPenalty::EntrywiseL1(mu1),
        reg_vector: mu2,
        psd: true,
        affine: Some(&constraint),
    };
    solve(&problem, opts)
}
