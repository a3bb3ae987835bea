use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{Context, Result};
use csqpt_core::noise::Shots;
use csqpt_core::procmat::GammaKind;
use csqpt_core::qcore::{GateId, UnitaryGate};
use csqpt_core::solver::SolverOptions;
use csqpt_core::QptError;
use serde::{Deserialize, Deserializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Scheme {
    ChoiPauli,
    ProcessMatrix,
}

/// `τ₁` either fixed or proportional to `m` (written `"0.01*m"`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tau1Rule {
    Fixed(f64),
    PerM(f64),
}

impl Tau1Rule {
    pub fn at(self, m: usize) -> f64 {
        match self {
            Tau1Rule::Fixed(t) => t,
            Tau1Rule::PerM(c) => c * m as f64,
        }
    }
}

impl FromStr for Tau1Rule {
    type Err = QptError;

    fn from_str(s: &str) -> std::result::Result<Self, QptError> {
        let bad = || QptError::Config(format!("tau1_rule {s:?} is neither a number nor \"<c>*m\""));
        let s = s.trim();
        if let Some(c) = s.strip_suffix('m') {
            let c = c.trim_end().strip_suffix('*').ok_or_else(bad)?;
            return c.trim().parse().map(Tau1Rule::PerM).map_err(|_| bad());
        }
        s.parse().map(Tau1Rule::Fixed).map_err(|_| bad())
    }
}

impl<'de> Deserialize<'de> for Tau1Rule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Tau1Rule::Fixed(x)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

fn de_shots<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Shots, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Count(u64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Count(n) => Ok(Shots::Finite(n)),
        Raw::Text(s) if matches!(s.trim(), "inf" | "infinite" | "∞") => Ok(Shots::Infinite),
        Raw::Text(s) => Err(serde::de::Error::custom(format!("shots {s:?} is neither a count nor \"inf\""))),
    }
}

fn de_from_str<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> std::result::Result<T, D::Error>
where
    T::Err: std::fmt::Display,
{
    String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
}

fn de_opt_from_str<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> std::result::Result<Option<T>, D::Error>
where
    T::Err: std::fmt::Display,
{
    Option::<String>::deserialize(d)?
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .transpose()
}

/// Overrides for [`SolverOptions`]; missing keys keep the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub max_iters: Option<usize>,
    pub feas_tol: Option<f64>,
    pub obj_tol: Option<f64>,
    pub over_relaxation: Option<f64>,
    pub step_size: Option<f64>,
}

impl SolverSection {
    pub fn options(&self) -> SolverOptions {
        let mut o = SolverOptions::default();
        if let Some(v) = self.max_iters {
            o.max_iters = v;
        }
        if let Some(v) = self.feas_tol {
            o.feas_tol = v;
        }
        if let Some(v) = self.obj_tol {
            o.obj_tol = v;
        }
        if let Some(v) = self.over_relaxation {
            o.over_relaxation = v;
        }
        if let Some(v) = self.step_size {
            o.step_size = csqpt_core::solver::StepSize::Fixed(v);
        }
        o
    }
}

fn default_sigma() -> f64 {
    1.0
}
fn default_shots() -> Shots {
    Shots::DEFAULT
}
fn default_tau1() -> Tau1Rule {
    Tau1Rule::PerM(0.01)
}
fn default_tau2() -> f64 {
    1e-2
}
fn default_mu1() -> f64 {
    1e-5
}
fn default_mu2() -> f64 {
    1e-3
}
fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scheme: Scheme,
    #[serde(deserialize_with = "de_from_str")]
    pub gate: GateId,
    /// Process-matrix scheme only; Pauli when absent.
    #[serde(default, deserialize_with = "de_opt_from_str")]
    pub basis_kind: Option<GammaKind>,
    pub m_values: Vec<usize>,
    /// Defaults to 100, 50 or 10 runs for two-, three- and four-qubit gates.
    #[serde(default)]
    pub runs: Option<usize>,
    pub eta: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_shots", deserialize_with = "de_shots")]
    pub shots: Shots,
    #[serde(default = "default_tau1")]
    pub tau1_rule: Tau1Rule,
    /// Keep the trace-norm term of the Choi program.
    #[serde(default = "default_true")]
    pub trace_norm: bool,
    #[serde(default = "default_tau2")]
    pub tau2: f64,
    #[serde(default = "default_mu1")]
    pub mu1: f64,
    #[serde(default = "default_mu2")]
    pub mu2: f64,
    pub seed: u64,
    pub output_path: PathBuf,
    /// Wall times make output files differ between identical runs, so they
    /// are written as 0 unless requested.
    #[serde(default)]
    pub record_wall_time: bool,
    #[serde(default)]
    pub solver: SolverSection,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| QptError::Config(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| QptError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).with_context(|| format!("loading {}", path.display()))
    }

    pub fn gate(&self) -> Result<UnitaryGate> {
        // The identity has no fixed size; sweeps over it use two qubits.
        Ok(UnitaryGate::new(self.gate, self.gate.arity().is_none().then_some(2))?)
    }

    pub fn n_qubits(&self) -> usize {
        self.gate.arity().unwrap_or(2)
    }

    pub fn runs(&self) -> usize {
        self.runs.unwrap_or(match self.n_qubits() {
            2 => 100,
            3 => 50,
            _ => 10,
        })
    }

    pub fn basis(&self) -> GammaKind {
        self.basis_kind.unwrap_or(GammaKind::Pauli)
    }

    /// Largest admissible `m`: all Pauli settings, or all configurations.
    pub fn max_m(&self) -> usize {
        // d⁴ in both schemes: 16ⁿ Pauli settings, or (4ⁿ inputs)·(4ⁿ projectors).
        1 << (4 * self.n_qubits())
    }

    pub fn validate(&self) -> std::result::Result<(), QptError> {
        let err = |msg: String| Err(QptError::Config(msg));
        if self.scheme == Scheme::ChoiPauli && self.basis_kind.is_some() {
            return err("basis_kind applies to the ProcessMatrix scheme only".into());
        }
        if self.scheme == Scheme::ProcessMatrix && !(2..=4).contains(&self.n_qubits()) {
            return err(format!("no configuration set for {}-qubit gates", self.n_qubits()));
        }
        if self.m_values.is_empty() {
            return err("m_values is empty".into());
        }
        let max = self.max_m();
        if let Some(&m) = self.m_values.iter().find(|&&m| m == 0 || m > max) {
            return err(format!("m = {m} outside 1..={max}"));
        }
        if self.runs == Some(0) {
            return err("runs must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return err(format!("eta = {} outside [0, 1]", self.eta));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return err(format!("sigma = {} must be positive", self.sigma));
        }
        if self.shots == Shots::Finite(0) {
            return err("shots must be positive or \"inf\"".into());
        }
        let positive = |x: f64| x > 0.0 && x.is_finite();
        let tau1_ok = match self.tau1_rule {
            Tau1Rule::Fixed(t) | Tau1Rule::PerM(t) => positive(t),
        };
        if !(tau1_ok && positive(self.tau2) && positive(self.mu1) && positive(self.mu2)) {
            return err("regularization weights must be positive".into());
        }
        self.solver.options().validate()
    }
}
