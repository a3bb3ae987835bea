use crate::error::{QptError, Result};
use crate::qcore::{CMatrix, C64};
use crate::solver::LinearMeasurement;

use super::basis::{GammaBasis, GammaKind};
use super::configs::ConfigurationSet;

/// The sensing matrix `Φ` restricted to a selection of configurations.
///
/// Row `o` of `Φ` has entries `a_α·conj(a_β)/√m` with
/// `a_α = ⟨φ_o|Γ_α|ψ_o⟩`, i.e. every row is a rank-one outer product. Only
/// the vectors `b_o = conj(a_o)` are stored, as the columns of a `d²×m`
/// matrix; [`SensingMatrix::to_dense`] materializes the full `m×d⁴` form.
#[derive(Debug, Clone)]
pub struct SensingMatrix {
    d: usize,
    kind: GammaKind,
    selected: Vec<usize>,
    factors: CMatrix,
}

impl SensingMatrix {
    pub fn m(&self) -> usize {
        self.selected.len()
    }

    /// `d⁴`, the number of columns of the dense form.
    pub fn d4(&self) -> usize {
        self.d.pow(4)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn basis_kind(&self) -> GammaKind {
        self.kind
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    /// `Φ[o, α·d² + β] = Tr(Γ_α ρ_o Γ_β† M_o)/√m`.
    pub fn entry(&self, o: usize, alpha: usize, beta: usize) -> C64 {
        let b = self.factors.column(o);
        b[alpha].conj() * b[beta] / (self.m() as f64).sqrt()
    }

    /// Dense `m×d⁴` matrix. Memory grows as `m·d⁴`.
    pub fn to_dense(&self) -> CMatrix {
        let d2 = self.d * self.d;
        CMatrix::from_fn(self.m(), d2 * d2, |o, k| self.entry(o, k / d2, k % d2))
    }

    /// `Φ·vec(χ)`, including the `1/√m` factor.
    pub fn apply_scaled(&self, chi: &CMatrix) -> Vec<f64> {
        let s = (self.m() as f64).sqrt();
        self.apply(chi).into_iter().map(|y| y / s).collect()
    }
}

impl LinearMeasurement for SensingMatrix {
    fn matrix_dim(&self) -> usize {
        self.d * self.d
    }

    fn num_outcomes(&self) -> usize {
        self.m()
    }

    /// Unscaled outcomes `b_o† χ b_o = Tr(M_o Σ χ_{αβ} Γ_α ρ_o Γ_β†)`.
    fn apply(&self, chi: &CMatrix) -> Vec<f64> {
        let cb = chi * &self.factors;
        self.factors
            .column_iter()
            .zip(cb.column_iter())
            .map(|(b, c)| b.dotc(&c).re)
            .collect()
    }

    fn adjoint(&self, coeffs: &[f64]) -> CMatrix {
        let mut scaled = self.factors.clone();
        for (mut col, &c) in scaled.column_iter_mut().zip(coeffs) {
            col.scale_mut(c);
        }
        let out = scaled * self.factors.adjoint();
        (&out + out.adjoint()).scale(0.5)
    }
}

/// Builds `Φ` for the selected pair indices of `configs`.
pub fn sensing_matrix(basis: &GammaBasis, configs: &ConfigurationSet, selected: &[usize]) -> Result<SensingMatrix> {
    if selected.is_empty() {
        return Err(QptError::config("at least one configuration must be selected"));
    }
    if configs.dim() != basis.d() {
        return Err(QptError::dim(format!(
            "configurations act on dimension {}, basis on {}",
            configs.dim(),
            basis.d()
        )));
    }
    let mut seen = vec![false; configs.len()];
    for &k in selected {
        if k >= configs.len() {
            return Err(QptError::config(format!("configuration index {k} out of range")));
        }
        if std::mem::replace(&mut seen[k], true) {
            return Err(QptError::config(format!("configuration {k} selected twice")));
        }
    }
    let d2 = basis.len();
    let mut factors = CMatrix::zeros(d2, selected.len());
    for (o, &k) in selected.iter().enumerate() {
        let (i, j) = configs.pairs()[k];
        let psi = configs.input_ket(i);
        let phi = configs.observable_ket(j);
        for (alpha, g) in basis.elements().iter().enumerate() {
            // b_α = conj(⟨φ|Γ_α|ψ⟩)
            factors[(alpha, o)] = phi.dotc(&(g * psi)).conj();
        }
    }
    Ok(SensingMatrix {
        d: basis.d(),
        kind: basis.kind(),
        selected: selected.to_vec(),
        factors,
    })
}
