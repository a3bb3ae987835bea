use nalgebra::DVector;
use rand::seq::index;

use crate::error::{QptError, Result};
use crate::qcore::{HermitianMatrix, C64};
use crate::rng::rng_from_seed;

pub const TWO_QUBIT_INPUTS: [&str; 16] = [
    "HH", "VH", "DV", "RH", "RV", "VV", "HV", "HA", "HR", "RR", "RA", "DA", "DL", "VA", "VR", "DH",
];

pub const TWO_QUBIT_OBSERVABLES: [&str; 16] = [
    "HH", "HV", "VH", "VV", "HD", "HR", "VR", "VD", "DD", "LR", "LD", "DL", "DV", "LV", "DH", "LH",
];

/// Per-qubit alphabet used for three and four qubits.
const PRODUCT_ALPHABET: [char; 4] = ['H', 'V', 'D', 'R'];

/// Single-qubit polarization ket.
pub fn polarization_ket(symbol: char) -> Result<[C64; 2]> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r = |x: f64| C64::new(x, 0.0);
    Ok(match symbol {
        'H' => [r(1.0), r(0.0)],
        'V' => [r(0.0), r(1.0)],
        'D' => [r(s), r(s)],
        'A' => [r(s), r(-s)],
        'R' => [r(s), C64::new(0.0, s)],
        'L' => [r(s), C64::new(0.0, -s)],
        _ => return Err(QptError::config(format!("unknown polarization symbol `{symbol}`"))),
    })
}

/// Product ket for a label such as `"DA"`; the first symbol is the most
/// significant qubit.
pub fn product_ket(label: &str) -> Result<DVector<C64>> {
    let mut ket = DVector::from_element(1, C64::new(1.0, 0.0));
    for ch in label.chars() {
        let q = polarization_ket(ch)?;
        ket = ket.kronecker(&DVector::from_column_slice(&q));
    }
    if ket.len() < 2 {
        return Err(QptError::config("empty state label"));
    }
    Ok(ket)
}

/// Input states, projective observables and the probed pairs.
#[derive(Debug, Clone)]
pub struct ConfigurationSet {
    n_qubits: usize,
    input_labels: Vec<String>,
    observable_labels: Vec<String>,
    inputs: Vec<DVector<C64>>,
    observables: Vec<DVector<C64>>,
    pairs: Vec<(usize, usize)>,
}

fn product_labels(n: usize) -> Vec<String> {
    let mut labels = vec![String::new()];
    for _ in 0..n {
        labels = labels
            .iter()
            .flat_map(|prefix| PRODUCT_ALPHABET.iter().map(move |c| format!("{prefix}{c}")))
            .collect();
    }
    labels
}

impl ConfigurationSet {
    /// All `(input, observable)` combinations of the given pure states. Pair
    /// `k` is input `k / n_obs`, observable `k % n_obs`.
    pub fn from_labels(inputs: &[String], observables: &[String]) -> Result<Self> {
        let kets = |labels: &[String]| labels.iter().map(|l| product_ket(l)).collect::<Result<Vec<_>>>();
        let in_kets = kets(inputs)?;
        let obs_kets = kets(observables)?;
        let dim = in_kets.first().map(|k| k.len()).unwrap_or(0);
        if dim == 0 || obs_kets.is_empty() {
            return Err(QptError::config("configuration set needs inputs and observables"));
        }
        if in_kets.iter().chain(&obs_kets).any(|k| k.len() != dim) {
            return Err(QptError::config("state labels have differing qubit counts"));
        }
        let pairs = (0..in_kets.len())
            .flat_map(|i| (0..obs_kets.len()).map(move |o| (i, o)))
            .collect();
        Ok(ConfigurationSet {
            n_qubits: dim.trailing_zeros() as usize,
            input_labels: inputs.to_vec(),
            observable_labels: observables.to_vec(),
            inputs: in_kets,
            observables: obs_kets,
            pairs,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn input_labels(&self) -> &[String] {
        &self.input_labels
    }

    pub fn observable_labels(&self) -> &[String] {
        &self.observable_labels
    }

    pub fn input_ket(&self, i: usize) -> &DVector<C64> {
        &self.inputs[i]
    }

    pub fn observable_ket(&self, o: usize) -> &DVector<C64> {
        &self.observables[o]
    }

    /// `ρ = |ψ⟩⟨ψ|` of input `i`.
    pub fn input_state(&self, i: usize) -> HermitianMatrix {
        HermitianMatrix::projector(&self.inputs[i])
    }

    /// `M = |φ⟩⟨φ|` of observable `o`.
    pub fn observable(&self, o: usize) -> HermitianMatrix {
        HermitianMatrix::projector(&self.observables[o])
    }
}

/// The probing configurations for 2, 3 or 4 qubits: the fixed two-qubit
/// lists, or `{H,V,D,R}^⊗n` for both inputs and observables.
pub fn build_configuration_set(n_qubits: usize) -> Result<ConfigurationSet> {
    let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match n_qubits {
        2 => ConfigurationSet::from_labels(&owned(&TWO_QUBIT_INPUTS), &owned(&TWO_QUBIT_OBSERVABLES)),
        3 | 4 => {
            let labels = product_labels(n_qubits);
            ConfigurationSet::from_labels(&labels, &labels)
        }
        _ => Err(QptError::config(format!(
            "configuration sets exist for 2, 3 or 4 qubits, not {n_qubits}"
        ))),
    }
}

/// `m` distinct pair indices drawn uniformly without replacement.
pub fn select_configurations(configs: &ConfigurationSet, m: usize, seed: u64) -> Result<Vec<usize>> {
    if m == 0 || m > configs.len() {
        return Err(QptError::config(format!(
            "cannot select {m} of {} configurations",
            configs.len()
        )));
    }
    let mut rng = rng_from_seed(seed);
    Ok(index::sample(&mut rng, configs.len(), m).into_vec())
}
