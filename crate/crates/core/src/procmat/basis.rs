use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;

use crate::error::{QptError, Result};
use crate::qcore::{pauli_operator, CMatrix, PauliLabel, UnitaryGate, C64};
use crate::solver::PartialTraceConstraint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaKind {
    Pauli,
    Computational,
    Svd,
}

impl GammaKind {
    pub fn name(self) -> &'static str {
        match self {
            GammaKind::Pauli => "pauli",
            GammaKind::Computational => "computational",
            GammaKind::Svd => "svd",
        }
    }
}

impl fmt::Display for GammaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GammaKind {
    type Err = QptError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pauli" => Ok(GammaKind::Pauli),
            "computational" => Ok(GammaKind::Computational),
            "svd" => Ok(GammaKind::Svd),
            _ => Err(QptError::config(format!("unknown basis kind `{s}`"))),
        }
    }
}

/// An operator basis `{Γ_α}` of `d×d` matrices with
/// `Tr(Γ_β†Γ_α) = norm_const·δ_{αβ}`.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    kind: GammaKind,
    d: usize,
    n_qubits: usize,
    elements: Vec<CMatrix>,
    norm_const: f64,
}

fn qubits_of(d: usize) -> Result<usize> {
    if d < 2 || !d.is_power_of_two() {
        return Err(QptError::config(format!(
            "basis dimension must be a power of two (at least 2), got {d}"
        )));
    }
    Ok(d.trailing_zeros() as usize)
}

fn unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

/// Row-major vectorization, `vec(A)[i·d + j] = A[i][j]`.
pub(crate) fn vec_rows(a: &CMatrix) -> DVector<C64> {
    let (r, c) = a.shape();
    DVector::from_fn(r * c, |k, _| a[(k / c, k % c)])
}

/// Orthonormal completion of `first` to a unitary, by Gram-Schmidt over the
/// standard basis vectors in order.
fn complete_unitary(first: DVector<C64>) -> CMatrix {
    let n = first.len();
    let mut cols: Vec<DVector<C64>> = vec![first];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v = DVector::from_fn(n, |i, _| C64::new(if i == k { 1.0 } else { 0.0 }, 0.0));
        // Two passes keep the completion orthogonal to machine precision.
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            cols.push(v.unscale(norm));
        }
    }
    CMatrix::from_columns(&cols)
}

impl GammaBasis {
    /// Pauli strings in base-4 order `I…I, I…X, I…Y, I…Z, …, Z…Z`.
    pub fn pauli(d: usize) -> Result<Self> {
        let n = qubits_of(d)?;
        let elements = (0..d * d)
            .map(|i| pauli_operator(&PauliLabel::from_index(i, n)).into_matrix())
            .collect();
        Ok(GammaBasis {
            kind: GammaKind::Pauli,
            d,
            n_qubits: n,
            elements,
            norm_const: d as f64,
        })
    }

    /// Matrix units `|i⟩⟨j|` in row-major `(i, j)` order.
    pub fn computational(d: usize) -> Result<Self> {
        let n = qubits_of(d)?;
        let elements = (0..d * d).map(|k| unit(d, k / d, k % d)).collect();
        Ok(GammaBasis {
            kind: GammaKind::Computational,
            d,
            n_qubits: n,
            elements,
            norm_const: 1.0,
        })
    }

    /// Basis adapted to a reference unitary: `Γ_α = Σ_β V_{βα} |β⟩` where the
    /// columns of `V` are singular vectors of the computational-basis process
    /// matrix of `gate`. The leading element is `U/√d`, so the gate's process
    /// matrix has the single nonzero entry `χ₁₁ = d`. The degenerate null
    /// space is completed by Gram-Schmidt over the standard basis.
    pub fn svd(gate: &UnitaryGate) -> Result<Self> {
        let d = gate.dim();
        let n = qubits_of(d)?;
        let mut e = vec_rows(gate.matrix());
        let norm = e.norm();
        // Fix the global phase so the first nonzero coefficient is real
        // positive.
        if let Some(lead) = e.iter().find(|z| z.norm() > 1e-12).copied() {
            e *= lead.conj() / lead.norm();
        }
        let v = complete_unitary(e.unscale(norm));
        let elements = (0..d * d)
            .map(|a| CMatrix::from_fn(d, d, |i, j| v[(i * d + j, a)]))
            .collect();
        Ok(GammaBasis {
            kind: GammaKind::Svd,
            d,
            n_qubits: n,
            elements,
            norm_const: 1.0,
        })
    }

    /// Dispatch on `kind`; the SVD basis needs a reference gate.
    pub fn new(kind: GammaKind, d: usize, reference: Option<&UnitaryGate>) -> Result<Self> {
        match kind {
            GammaKind::Pauli => Self::pauli(d),
            GammaKind::Computational => Self::computational(d),
            GammaKind::Svd => {
                let gate = reference
                    .ok_or_else(|| QptError::config("the SVD basis requires a reference gate"))?;
                if gate.dim() != d {
                    return Err(QptError::config(format!(
                        "reference gate has dimension {}, basis requested {d}",
                        gate.dim()
                    )));
                }
                Self::svd(gate)
            }
        }
    }

    pub fn kind(&self) -> GammaKind {
        self.kind
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, alpha: usize) -> &CMatrix {
        &self.elements[alpha]
    }

    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// Human-readable name of element `alpha`.
    pub fn label(&self, alpha: usize) -> String {
        match self.kind {
            GammaKind::Pauli => PauliLabel::from_index(alpha, self.n_qubits).to_string(),
            GammaKind::Computational => {
                let (i, j) = (alpha / self.d, alpha % self.d);
                format!("|{i:0w$b}><{j:0w$b}|", w = self.n_qubits)
            }
            GammaKind::Svd => format!("G{}", alpha + 1),
        }
    }

    /// `d²×d²` matrix whose column `α` is `vec(Γ_α)`.
    pub fn frame(&self) -> CMatrix {
        let cols: Vec<_> = self.elements.iter().map(vec_rows).collect();
        CMatrix::from_columns(&cols)
    }

    /// Coefficients `e_α = Tr(Γ_α†A)/norm_const` of `A = Σ e_α Γ_α`.
    pub fn expand(&self, a: &CMatrix) -> Result<Vec<C64>> {
        if a.shape() != (self.d, self.d) {
            return Err(QptError::dim(format!(
                "operator is {}x{}, basis elements are {d}x{d}",
                a.nrows(),
                a.ncols(),
                d = self.d
            )));
        }
        Ok(self
            .elements
            .iter()
            .map(|g| g.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum::<C64>() / self.norm_const)
            .collect())
    }

    /// The affine set `Σ χ_{αβ} Γ_β†Γ_α = I`.
    pub fn tp_constraint(&self) -> Result<PartialTraceConstraint> {
        PartialTraceConstraint::new(Some(self.frame()), self.d, CMatrix::identity(self.d, self.d))
    }
}
