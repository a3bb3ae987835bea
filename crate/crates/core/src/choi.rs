//! Choi-state representation and random Pauli sensing.
//!
//! The Choi state of `E` is `(E ⊗ I)(|Ψ⟩⟨Ψ|)` with
//! `|Ψ⟩ = Σ_j |j⟩⊗|j⟩/√d`; the system is the first tensor factor.

use rand::seq::index;

use crate::error::{QptError, Result};
use crate::noise::{shot_estimate, ShotMode, Shots, RANGE_TOL};
use crate::procmat::ProcessMatrix;
use crate::qcore::{CMatrix, HermitianMatrix, PauliLabel, PauliString, UnitaryGate};
use crate::rng::rng_from_seed;
use crate::solver::{
    solve, LinearMeasurement, MatrixPenalty, PartialTraceConstraint, RecoveryProblem, RecoveryResult,
    SolverOptions,
};

const TRACE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct ChoiState {
    d_sys: usize,
    matrix: HermitianMatrix,
}

impl ChoiState {
    /// Checks unit trace and positivity (eigenvalue floor `−1e-10`).
    pub fn new(matrix: HermitianMatrix, d_sys: usize) -> Result<Self> {
        if d_sys == 0 || matrix.dim() != d_sys * d_sys {
            return Err(QptError::dim(format!(
                "Choi state of dimension {} for a {d_sys}-dimensional system",
                matrix.dim()
            )));
        }
        if (matrix.trace() - 1.0).abs() > TRACE_TOL {
            return Err(QptError::numerical(format!("Choi state has trace {}", matrix.trace())));
        }
        if matrix.min_eigenvalue()? < -TRACE_TOL {
            return Err(QptError::numerical("Choi state is not positive semidefinite"));
        }
        Ok(ChoiState { d_sys, matrix })
    }

    pub fn d_sys(&self) -> usize {
        self.d_sys
    }

    /// `d²`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> HermitianMatrix {
        self.matrix
    }
}

/// Row-major vectorization of a square matrix as a `d²`-vector.
fn vec_rows(u: &CMatrix) -> CMatrix {
    let d = u.nrows();
    CMatrix::from_fn(d * d, 1, |k, _| u[(k / d, k % d)])
}

/// `(U⊗I)|Ψ⟩⟨Ψ|(U⊗I)†`, which equals `vec(U)vec(U)†/d`.
pub fn choi_of_unitary(gate: &UnitaryGate) -> ChoiState {
    let d = gate.dim();
    let v = vec_rows(gate.matrix());
    let rho = (&v * v.adjoint()).unscale(d as f64);
    ChoiState {
        d_sys: d,
        matrix: HermitianMatrix::symmetrized(rho),
    }
}

/// Choi state of a channel given by its process matrix:
/// `Σ χ_{αβ} vec(Γ_α) vec(Γ_β)†/d`.
pub fn choi_of_process(process: &ProcessMatrix) -> Result<ChoiState> {
    let basis = process.basis();
    let g = basis.frame();
    let rho = (&g * process.chi().matrix() * g.adjoint()).unscale(basis.d() as f64);
    let trace = rho.trace().re;
    if trace.abs() < 1e-14 {
        return Err(QptError::numerical("process matrix has zero trace"));
    }
    ChoiState::new(HermitianMatrix::symmetrized(rho), basis.d())
}

/// Distinct `2n`-qubit Pauli observables `W_i = P_i^S ⊗ P_i^A`.
#[derive(Debug, Clone)]
pub struct PauliObservableSet {
    n_qubits: usize,
    labels: Vec<PauliLabel>,
    strings: Vec<PauliString>,
}

impl PauliObservableSet {
    pub fn new(n_qubits: usize, labels: Vec<PauliLabel>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 6 {
            return Err(QptError::config(format!("unsupported qubit count {n_qubits}")));
        }
        if labels.is_empty() {
            return Err(QptError::config("observable set is empty"));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.n_qubits() != 2 * n_qubits {
                return Err(QptError::config(format!(
                    "label {l} acts on {} wires, expected {}",
                    l.n_qubits(),
                    2 * n_qubits
                )));
            }
            if !seen.insert(l.index()) {
                return Err(QptError::config(format!("label {l} appears twice")));
            }
        }
        let strings = labels.iter().map(PauliString::from_label).collect();
        Ok(PauliObservableSet {
            n_qubits,
            labels,
            strings,
        })
    }

    /// All `16^n` observables in index order.
    pub fn full(n_qubits: usize) -> Result<Self> {
        let total = 1usize << (4 * n_qubits);
        let labels = (0..total).map(|i| PauliLabel::from_index(i, 2 * n_qubits)).collect();
        Self::new(n_qubits, labels)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[PauliLabel] {
        &self.labels
    }

    /// System dimension `d = 2ⁿ`.
    pub fn d_sys(&self) -> usize {
        1 << self.n_qubits
    }

    /// `Tr(W_i ρ)`, times `√(d²/m)` when `scaled`.
    pub fn evaluate(&self, rho: &CMatrix, scaled: bool) -> Result<Vec<f64>> {
        let dim = self.d_sys() * self.d_sys();
        if rho.shape() != (dim, dim) {
            return Err(QptError::dim(format!(
                "state is {}x{}, observables act on dimension {dim}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let factor = if scaled {
            (dim as f64 / self.m() as f64).sqrt()
        } else {
            1.0
        };
        Ok(self.strings.iter().map(|w| factor * w.expectation(rho)).collect())
    }
}

impl LinearMeasurement for PauliObservableSet {
    fn matrix_dim(&self) -> usize {
        self.d_sys() * self.d_sys()
    }

    fn num_outcomes(&self) -> usize {
        self.m()
    }

    fn apply(&self, x: &CMatrix) -> Vec<f64> {
        self.strings.iter().map(|w| w.expectation(x)).collect()
    }

    fn adjoint(&self, coeffs: &[f64]) -> CMatrix {
        let n = self.matrix_dim();
        let mut out = CMatrix::zeros(n, n);
        for (w, &c) in self.strings.iter().zip(coeffs) {
            w.add_scaled_to(&mut out, c);
        }
        out
    }
}

/// `m` distinct observables drawn uniformly from the `16^n` Pauli strings on
/// system and ancilla.
pub fn sample_pauli_settings(n_qubits: usize, m: usize, seed: u64) -> Result<PauliObservableSet> {
    if n_qubits == 0 || n_qubits > 6 {
        return Err(QptError::config(format!("unsupported qubit count {n_qubits}")));
    }
    let total = 1usize << (4 * n_qubits);
    if m == 0 || m > total {
        return Err(QptError::config(format!("cannot draw {m} of {total} Pauli observables")));
    }
    let mut rng = rng_from_seed(seed);
    let labels = index::sample(&mut rng, total, m)
        .into_iter()
        .map(|i| PauliLabel::from_index(i, 2 * n_qubits))
        .collect();
    PauliObservableSet::new(n_qubits, labels)
}

/// The Pauli sensing map applied to a Choi state.
pub fn sensing_map_choi(state: &ChoiState, settings: &PauliObservableSet, scaled: bool) -> Result<Vec<f64>> {
    if state.d_sys() != settings.d_sys() {
        return Err(QptError::dim("Choi state and observables act on different systems"));
    }
    settings.evaluate(state.matrix().matrix(), scaled)
}

/// `y_i = est_i + v_i` with `est_i` the mean of `shots` ±1 outcomes of `W_i`
/// (or the exact expectation for infinite shots).
pub fn simulate_choi_measurements(
    state: &ChoiState,
    settings: &PauliObservableSet,
    shots: Shots,
    corruption: &[f64],
    seed: u64,
) -> Result<Vec<f64>> {
    if corruption.len() != settings.m() {
        return Err(QptError::dim(format!(
            "corruption has {} entries for {} observables",
            corruption.len(),
            settings.m()
        )));
    }
    let exact = sensing_map_choi(state, settings, false)?;
    if let Some(bad) = exact.iter().find(|p| p.abs() > 1.0 + RANGE_TOL) {
        return Err(QptError::numerical(format!("Pauli expectation {bad} exceeds 1 in magnitude")));
    }
    let est = shot_estimate(&exact, shots, ShotMode::PauliExpectation, seed)?;
    Ok(est.iter().zip(corruption).map(|(e, v)| e + v).collect())
}

/// Recovers `(ρ, v)` from unscaled Pauli data by minimizing
/// `½‖y − Λ̃(ρ) − v‖² + τ₁‖ρ‖_tr + τ₂‖v‖₁` subject to `ρ ⪰ 0` and
/// `Tr_S ρ = I/d`. `tau1 = None` drops the trace-norm term.
pub fn recover_choi(
    y: &[f64],
    settings: &PauliObservableSet,
    tau1: Option<f64>,
    tau2: f64,
    opts: &SolverOptions,
) -> Result<RecoveryResult> {
    if tau1.is_some_and(|t| !(t > 0.0)) || !(tau2 > 0.0) {
        return Err(QptError::config("regularization weights must be positive"));
    }
    let constraint = PartialTraceConstraint::choi(settings.d_sys());
    let problem = RecoveryProblem {
        forward: settings,
        data: y.to_vec(),
        reg_matrix: tau1.map_or(MatrixPenalty::None, MatrixPenalty::TraceNorm),
        reg_vector: tau2,
        psd: true,
        affine: Some(&constraint),
    };
    solve(&problem, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{partial_trace_system, GateId, C64};

    #[test]
    fn identity_choi_is_bell_state() {
        let rho = choi_of_unitary(&UnitaryGate::identity(1).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                let corner = [0, 3].contains(&i) && [0, 3].contains(&j);
                let expected = if corner { 0.5 } else { 0.0 };
                assert!((rho.matrix()[(i, j)] - C64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn ancilla_reduction_is_maximally_mixed() {
        for id in GateId::ALL.into_iter().filter(|&id| id != GateId::Identity) {
            let g = UnitaryGate::standard(id);
            let rho = choi_of_unitary(&g);
            let d = g.dim();
            let red = partial_trace_system(rho.matrix(), d, d).unwrap();
            let target = CMatrix::identity(d, d).unscale(d as f64);
            assert!((red.matrix() - target).norm() < 1e-10, "{id}");
            assert!(ChoiState::new(rho.matrix().clone(), d).is_ok(), "{id}");
        }
    }

    #[test]
    fn cnot_eigenvector_reshapes_to_gate() {
        let g = UnitaryGate::standard(GateId::Cnot);
        let rho = choi_of_unitary(&g);
        let (values, vectors) = rho.matrix().eigh().unwrap();
        let (top, &lambda) = values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        assert!((lambda - 1.0).abs() < 1e-12);
        assert_eq!(values.iter().filter(|v| v.abs() > 1e-10).count(), 1);
        let v = vectors.column(top);
        let reshaped = CMatrix::from_fn(4, 4, |i, j| v[i * 4 + j]);
        // Proportional: U = c·reshaped with |c| = 2.
        let c = g.matrix()[(0, 0)] / reshaped[(0, 0)];
        assert!((c.norm() - 2.0).abs() < 1e-12);
        assert!((reshaped * c - g.matrix()).norm() < 1e-12);
    }

    #[test]
    fn sampling_is_exhaustive_and_deterministic() {
        let all = sample_pauli_settings(2, 256, 4).unwrap();
        let mut idx: Vec<_> = all.labels().iter().map(|l| l.index()).collect();
        idx.sort_unstable();
        assert_eq!(idx, (0..256).collect::<Vec<_>>());
        let a = sample_pauli_settings(2, 64, 4).unwrap();
        let b = sample_pauli_settings(2, 64, 4).unwrap();
        assert_eq!(a.labels(), b.labels());
        assert!(matches!(sample_pauli_settings(2, 257, 0), Err(QptError::Config(_))));
    }

    #[test]
    fn maximally_mixed_and_identity_examples() {
        let mixed = ChoiState::new(HermitianMatrix::identity(16).scale(1.0 / 16.0), 4).unwrap();
        let full = PauliObservableSet::full(2).unwrap();
        let y = sensing_map_choi(&mixed, &full, false).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-15);
        assert!(y[1..].iter().all(|v| v.abs() < 1e-15));
        let cnot = choi_of_unitary(&UnitaryGate::standard(GateId::Cnot));
        let id = PauliObservableSet::new(2, vec!["IIII".parse().unwrap()]).unwrap();
        assert!((sensing_map_choi(&cnot, &id, false).unwrap()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn infinite_shots_add_corruption_exactly() {
        let cnot = choi_of_unitary(&UnitaryGate::standard(GateId::Cnot));
        let s = sample_pauli_settings(2, 20, 1).unwrap();
        let exact = sensing_map_choi(&cnot, &s, false).unwrap();
        let v: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let y = simulate_choi_measurements(&cnot, &s, Shots::Infinite, &v, 0).unwrap();
        for i in 0..20 {
            assert_eq!(y[i], exact[i] + v[i]);
        }
    }

    #[test]
    fn invalid_weights_rejected() {
        let s = sample_pauli_settings(1, 4, 1).unwrap();
        let y = vec![0.0; 4];
        let opts = SolverOptions::default();
        assert!(matches!(recover_choi(&y, &s, Some(0.0), 0.1, &opts), Err(QptError::Config(_))));
        assert!(matches!(recover_choi(&y, &s, None, -1.0, &opts), Err(QptError::Config(_))));
    }
}
