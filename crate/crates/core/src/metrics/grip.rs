//! Monte Carlo lower bounds on the isometry defect of the extended map
//! `[A, I]` over low-rank states and sparse vectors.

use nalgebra::DMatrix;
use rand::seq::index;
use rand::Rng as _;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{QptError, Result};
use crate::qcore::{CMatrix, HermitianMatrix, PauliLabel, PauliString, C64};
use crate::rng::{derive_seed, rng_from_seed, Rng};
use crate::solver::LinearMeasurement;

/// Pauli expectations `Tr(P_i ρ)` of an `n`-qubit state.
#[derive(Debug, Clone)]
pub struct StatePauliMap {
    dim: usize,
    strings: Vec<PauliString>,
}

impl StatePauliMap {
    /// `m` distinct `n`-qubit Pauli strings drawn uniformly.
    pub fn sample(n_qubits: usize, m: usize, seed: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 12 {
            return Err(QptError::config(format!("unsupported qubit count {n_qubits}")));
        }
        let total = 1usize << (2 * n_qubits);
        if m == 0 || m > total {
            return Err(QptError::config(format!("cannot draw {m} of {total} Pauli strings")));
        }
        let mut rng = rng_from_seed(seed);
        let strings = index::sample(&mut rng, total, m)
            .into_iter()
            .map(|i| PauliString::from_label(&PauliLabel::from_index(i, n_qubits)))
            .collect();
        Ok(StatePauliMap {
            dim: 1 << n_qubits,
            strings,
        })
    }
}

impl LinearMeasurement for StatePauliMap {
    fn matrix_dim(&self) -> usize {
        self.dim
    }

    fn num_outcomes(&self) -> usize {
        self.strings.len()
    }

    fn apply(&self, x: &CMatrix) -> Vec<f64> {
        self.strings.iter().map(|w| w.expectation(x)).collect()
    }

    fn adjoint(&self, coeffs: &[f64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (w, &c) in self.strings.iter().zip(coeffs) {
            w.add_scaled_to(&mut out, c);
        }
        out
    }
}

/// One Monte Carlo draw `(ρ, v)` normalized to `‖ρ‖_F² + ‖v‖² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GripDraw {
    /// `|‖A(ρ)‖² − ‖ρ‖_F²|`.
    pub delta1: f64,
    /// `2|⟨A(ρ), v⟩|`.
    pub delta2: f64,
    /// `|‖A(ρ) + v‖² − ‖ρ‖_F² − ‖v‖²|`.
    pub delta_total: f64,
    /// `|‖A(ρ̂)‖² − 1|` for the unit-Frobenius direction `ρ̂` of the draw.
    pub delta1_unit: f64,
    /// `‖v‖∞` after normalization.
    pub v_max: f64,
}

/// Running maxima over the draws. These are lower bounds on the supremum
/// in the isometry constant, never the constant itself.
#[derive(Debug, Clone, PartialEq)]
pub struct GripEstimate {
    pub delta1: f64,
    pub delta2: f64,
    pub delta_total: f64,
    /// Median of [`GripDraw::delta1_unit`].
    pub delta1_median: f64,
    pub trials: usize,
    pub r: usize,
    pub s: usize,
    pub m: usize,
    pub draws: Vec<GripDraw>,
}

/// Haar-random orthonormal columns with Dirichlet(1) weights: a random
/// unit-trace PSD matrix of rank `r`.
fn random_low_rank_state(dim: usize, r: usize, rng: &mut Rng) -> HermitianMatrix {
    let g = DMatrix::from_fn(dim, r, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let q = g.qr().q();
    let weights: Vec<f64> = (0..r).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = weights.iter().sum();
    let mut rho = CMatrix::zeros(dim, dim);
    for (k, w) in weights.iter().enumerate() {
        let col = q.column(k);
        rho += (&col * col.adjoint()) * C64::new(w / total, 0.0);
    }
    HermitianMatrix::symmetrized(rho)
}

fn random_sparse_unit(m: usize, s: usize, rng: &mut Rng) -> Vec<f64> {
    let mut v = vec![0.0; m];
    if s == 0 {
        return v;
    }
    for i in index::sample(rng, m, s).iter() {
        v[i] = StandardNormal.sample(rng);
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Estimates the isometry defect of `[scale·A, I]` from `trials` random
/// draws of a rank-`r` unit-trace PSD matrix and an `s`-sparse vector. Each
/// pair is rescaled to the unit sphere with a uniformly random split angle
/// between the two components; `s = 0` restricts to the matrix part.
pub fn empirical_grip(
    map: &dyn LinearMeasurement,
    scale: f64,
    r: usize,
    s: usize,
    trials: usize,
    seed: u64,
) -> Result<GripEstimate> {
    let m = map.num_outcomes();
    let dim = map.matrix_dim();
    if trials == 0 {
        return Err(QptError::config("at least one trial is required"));
    }
    if r == 0 || r > dim {
        return Err(QptError::config(format!("rank {r} outside 1..={dim}")));
    }
    if s > m {
        return Err(QptError::config(format!("sparsity {s} exceeds {m} outcomes")));
    }
    let mut draws = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, &[t as u64]));
        let rho = random_low_rank_state(dim, r, &mut rng);
        let v_dir = random_sparse_unit(m, s, &mut rng);
        let angle = if s == 0 {
            0.0
        } else {
            rng.random_range(0.0..std::f64::consts::FRAC_PI_2)
        };
        let rho_unit = rho.scale(1.0 / rho.frobenius_norm());
        let a_unit: Vec<f64> = map.apply(rho_unit.matrix()).iter().map(|x| scale * x).collect();
        let a_norm2: f64 = a_unit.iter().map(|x| x * x).sum();
        let (c, sn) = (angle.cos(), angle.sin());
        let cross: f64 = a_unit.iter().zip(&v_dir).map(|(a, v)| a * v).sum();
        // ‖cA ρ̂ + s v̂‖² − c² − s² = c²(‖Aρ̂‖² − 1) + 2cs⟨Aρ̂, v̂⟩
        let d1 = c * c * (a_norm2 - 1.0);
        let d2 = 2.0 * c * sn * cross;
        draws.push(GripDraw {
            delta1: d1.abs(),
            delta2: d2.abs(),
            delta_total: (d1 + d2).abs(),
            delta1_unit: (a_norm2 - 1.0).abs(),
            v_max: v_dir.iter().fold(0.0_f64, |acc, x| acc.max(sn * x.abs())),
        });
    }
    let max = |f: fn(&GripDraw) -> f64| draws.iter().map(f).fold(0.0_f64, f64::max);
    let mut unit: Vec<f64> = draws.iter().map(|d| d.delta1_unit).collect();
    Ok(GripEstimate {
        delta1: max(|d| d.delta1),
        delta2: max(|d| d.delta2),
        delta_total: max(|d| d.delta_total),
        delta1_median: median(&mut unit),
        trials,
        r,
        s,
        m,
        draws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_state_is_normalized_low_rank() {
        let mut rng = rng_from_seed(1);
        let rho = random_low_rank_state(8, 3, &mut rng);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        let ev = rho.eigenvalues().unwrap();
        assert_eq!(ev.iter().filter(|v| **v > 1e-10).count(), 3);
        assert!(ev.iter().all(|v| *v > -1e-12));
    }

    #[test]
    fn full_state_tomography_is_isometric() {
        let map = StatePauliMap::sample(2, 16, 0).unwrap();
        let est = empirical_grip(&map, (4.0f64 / 16.0).sqrt(), 2, 0, 20, 5).unwrap();
        assert!(est.delta1 < 1e-10);
        assert_eq!(est.delta2, 0.0);
    }

    #[test]
    fn split_bounds_total() {
        let map = StatePauliMap::sample(3, 20, 2).unwrap();
        let est = empirical_grip(&map, (8.0f64 / 20.0).sqrt(), 1, 3, 50, 9).unwrap();
        for d in &est.draws {
            assert!(d.delta_total <= d.delta1 + d.delta2 + 1e-12);
        }
        assert!(est.delta_total <= est.delta1 + est.delta2 + 1e-12);
    }
}
