use std::time::Instant;

use anyhow::Result;
use csqpt_core::choi::{choi_of_unitary, recover_choi, sample_pauli_settings, simulate_choi_measurements, ChoiState};
use csqpt_core::metrics::{chi_fidelity, fidelity, mse};
use csqpt_core::noise::{sparse_gaussian, CorruptionSpec};
use csqpt_core::procmat::{
    build_configuration_set, process_matrix_of_unitary, recover_process, select_configurations, sensing_matrix,
    simulate_process_outcomes, ConfigurationSet, GammaBasis, ProcessMatrix,
};
use csqpt_core::rng::derive_seed;
use csqpt_core::solver::{RecoveryResult, SolverOptions};
use csqpt_core::QptError;

use crate::config::{ExperimentConfig, Scheme};
use crate::records::SweepRecord;

/// A run whose solver stopped without meeting its tolerances. Its record is
/// still written, computed from the last iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub m: usize,
    pub run_index: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<RunFailure>,
}

enum Truth {
    Choi(ChoiState),
    Process {
        chi: ProcessMatrix,
        basis: GammaBasis,
        configs: ConfigurationSet,
    },
}

/// Everything that is shared by the runs of one experiment.
pub struct Prepared<'a> {
    config: &'a ExperimentConfig,
    truth: Truth,
    opts: SolverOptions,
}

impl<'a> Prepared<'a> {
    pub fn new(config: &'a ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let gate = config.gate()?;
        let truth = match config.scheme {
            Scheme::ChoiPauli => Truth::Choi(choi_of_unitary(&gate)),
            Scheme::ProcessMatrix => {
                let basis = GammaBasis::new(config.basis(), gate.dim(), Some(&gate))?;
                Truth::Process {
                    chi: process_matrix_of_unitary(&gate, &basis)?,
                    configs: build_configuration_set(gate.n_qubits())?,
                    basis,
                }
            }
        };
        Ok(Prepared {
            config,
            truth,
            opts: config.solver.options(),
        })
    }

    /// One tomography run. The child seed depends only on `(seed, m,
    /// run_index)`, so runs can be executed in any order.
    pub fn run(&self, m: usize, run_index: usize) -> Result<(SweepRecord, Option<RunFailure>)> {
        let cfg = self.config;
        let seed_used = derive_seed(cfg.seed, &[m as u64, run_index as u64]);
        let [select_seed, corruption_seed, shot_seed] = [0, 1, 2].map(|k| derive_seed(seed_used, &[k]));
        let start = Instant::now();
        let v = sparse_gaussian(m, &CorruptionSpec::new(cfg.eta, cfg.sigma, 0.0)?, corruption_seed)?;

        let (outcome, f_of): (_, Box<dyn Fn(&RecoveryResult) -> Result<f64>>) = match &self.truth {
            Truth::Choi(state) => {
                let settings = sample_pauli_settings(cfg.n_qubits(), m, select_seed)?;
                let y = simulate_choi_measurements(state, &settings, cfg.shots, &v, shot_seed)?;
                let tau1 = cfg.trace_norm.then(|| cfg.tau1_rule.at(m));
                (
                    recover_choi(&y, &settings, tau1, cfg.tau2, &self.opts),
                    Box::new(move |r: &RecoveryResult| Ok(fidelity(&r.matrix_estimate, state.matrix())?)),
                )
            }
            Truth::Process { chi, basis, configs } => {
                let selected = select_configurations(configs, m, select_seed)?;
                let phi = sensing_matrix(basis, configs, &selected)?;
                let y = simulate_process_outcomes(chi, configs, &selected, cfg.shots, &v, shot_seed)?;
                (
                    recover_process(&y, &phi, basis, cfg.mu1, cfg.mu2, &self.opts),
                    Box::new(move |r: &RecoveryResult| Ok(chi_fidelity(&r.matrix_estimate, chi.chi())?)),
                )
            }
        };
        let (result, failure) = match outcome {
            Ok(r) => (r, None),
            Err(QptError::Convergence(r)) => {
                let message = format!(
                    "no convergence after {} iterations (feasibility {:.2e})",
                    r.iterations, r.feasibility_residual
                );
                (*r, Some(RunFailure { m, run_index, message }))
            }
            Err(e) => return Err(e.into()),
        };
        let elapsed = start.elapsed().as_secs_f64();
        let record = SweepRecord::new(
            m,
            run_index,
            f_of(&result)?,
            mse(&v, &result.corruption_estimate)?,
            result.iterations,
            if cfg.record_wall_time { elapsed } else { 0.0 },
            seed_used,
        );
        Ok((record, failure))
    }
}

/// All runs for all `m`, sorted by `m` then `run_index`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<SweepOutput> {
    let prepared = Prepared::new(config)?;
    let mut out = SweepOutput::default();
    for &m in &config.m_values {
        for run in 0..config.runs() {
            let (record, failure) = prepared.run(m, run)?;
            out.records.push(record);
            out.failures.extend(failure);
        }
    }
    out.records.sort_by_key(|r| (r.m, r.run_index));
    Ok(out)
}
