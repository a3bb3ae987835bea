use std::io::Write;
use std::str::FromStr;

use anyhow::Result;
use csqpt_core::choi::sample_pauli_settings;
use csqpt_core::metrics::{empirical_grip, GripEstimate, StatePauliMap};
use csqpt_core::procmat::{
    build_configuration_set, process_matrix_of_unitary, select_configurations, sensing_matrix, GammaBasis, GammaKind,
};
use csqpt_core::qcore::{GateId, UnitaryGate};
use csqpt_core::QptError;

use crate::records::round_sig;

/// Which sensing map the GRIP estimate is taken for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GripScheme {
    /// Pauli expectations of a Choi state, scaled by `√(D/m)`.
    Choi,
    /// Projector probabilities on χ in the Pauli basis, scaled by `1/√m`.
    Process,
    /// Pauli expectations of an `n`-qubit state, scaled by `√(D/m)`.
    State,
}

impl FromStr for GripScheme {
    type Err = QptError;

    fn from_str(s: &str) -> Result<Self, QptError> {
        match s.to_ascii_lowercase().as_str() {
            "choi" | "choipauli" => Ok(GripScheme::Choi),
            "process" | "processmatrix" => Ok(GripScheme::Process),
            "state" => Ok(GripScheme::State),
            _ => Err(QptError::Config(format!("unknown GRIP scheme {s:?} (choi, process, state)"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GripRequest {
    pub scheme: GripScheme,
    pub n_qubits: usize,
    pub m: usize,
    pub r: usize,
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
}

pub fn grip(req: &GripRequest) -> Result<GripEstimate> {
    let n = req.n_qubits;
    let est = match req.scheme {
        GripScheme::Choi => {
            let settings = sample_pauli_settings(n, req.m, req.seed)?;
            let dim = (1usize << (2 * n)) as f64;
            empirical_grip(&settings, (dim / req.m as f64).sqrt(), req.r, req.s, req.trials, req.seed)?
        }
        GripScheme::Process => {
            let configs = build_configuration_set(n)?;
            let selected = select_configurations(&configs, req.m, req.seed)?;
            let basis = GammaBasis::pauli(1 << n)?;
            let phi = sensing_matrix(&basis, &configs, &selected)?;
            empirical_grip(&phi, 1.0 / (req.m as f64).sqrt(), req.r, req.s, req.trials, req.seed)?
        }
        GripScheme::State => {
            let map = StatePauliMap::sample(n, req.m, req.seed)?;
            let dim = (1usize << n) as f64;
            empirical_grip(&map, (dim / req.m as f64).sqrt(), req.r, req.s, req.trials, req.seed)?
        }
    };
    Ok(est)
}

pub fn write_grip<W: Write>(out: W, est: &GripEstimate) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["m", "r", "s", "trials", "delta1", "delta2", "delta_total", "delta1_median"])?;
    w.write_record([
        est.m.to_string(),
        est.r.to_string(),
        est.s.to_string(),
        est.trials.to_string(),
        round_sig(est.delta1).to_string(),
        round_sig(est.delta2).to_string(),
        round_sig(est.delta_total).to_string(),
        round_sig(est.delta1_median).to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

pub const FIXTURE_GATES: [GateId; 6] = [
    GateId::Cnot,
    GateId::Cz,
    GateId::Swap,
    GateId::Toffoli,
    GateId::Fredkin,
    GateId::Cccz,
];

/// One nonzero process-matrix entry.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureEntry {
    pub gate: GateId,
    pub alpha: usize,
    pub beta: usize,
    pub alpha_label: String,
    pub beta_label: String,
    pub re: f64,
    pub im: f64,
}

/// Nonzero entries of χ for each catalog gate in the given basis.
pub fn fixture_entries(kind: GammaKind) -> Result<Vec<FixtureEntry>> {
    let mut out = Vec::new();
    for id in FIXTURE_GATES {
        let gate = UnitaryGate::standard(id);
        let basis = GammaBasis::new(kind, gate.dim(), Some(&gate))?;
        let chi = process_matrix_of_unitary(&gate, &basis)?;
        let m = chi.chi().matrix();
        for alpha in 0..m.nrows() {
            for beta in 0..m.ncols() {
                let z = m[(alpha, beta)];
                if z.norm() > 1e-12 {
                    out.push(FixtureEntry {
                        gate: id,
                        alpha,
                        beta,
                        alpha_label: basis.label(alpha),
                        beta_label: basis.label(beta),
                        re: z.re,
                        im: z.im,
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn write_fixtures<W: Write>(out: W, entries: &[FixtureEntry]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["gate", "alpha", "beta", "alpha_label", "beta_label", "re", "im"])?;
    for e in entries {
        w.write_record([
            e.gate.name().to_string(),
            e.alpha.to_string(),
            e.beta.to_string(),
            e.alpha_label.clone(),
            e.beta_label.clone(),
            round_sig(e.re).to_string(),
            round_sig(e.im).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
