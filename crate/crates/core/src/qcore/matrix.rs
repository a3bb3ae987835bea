use std::ops::Deref;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
pub use num_complex::Complex64 as C64;

use crate::error::{QptError, Result};

/// Dense complex matrix, row/column indexed as `m[(row, col)]`.
pub type CMatrix = DMatrix<C64>;

/// Tolerance on `|a_ij - conj(a_ji)|` accepted by [`HermitianMatrix::new`],
/// relative to the largest entry magnitude (floored at 1).
pub const HERMITIAN_TOL: f64 = 1e-12;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_SWEEPS: usize = 10_000;

/// A square complex matrix equal to its conjugate transpose.
///
/// Constructors either verify the symmetry or enforce it by replacing the
/// input with `(A + A†)/2`, so downstream eigendecompositions never see
/// round-off asymmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Checks squareness and conjugate symmetry, then symmetrizes away any
    /// residual round-off.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(QptError::dim(format!(
                "Hermitian matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let n = m.nrows();
        for i in 0..n {
            for j in i..n {
                if (m[(i, j)] - m[(j, i)].conj()).norm() > HERMITIAN_TOL * scale {
                    return Err(QptError::numerical(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::symmetrized(m))
    }

    /// Returns `(m + m†)/2`. Panics if `m` is not square.
    pub fn symmetrized(m: CMatrix) -> Self {
        assert!(m.is_square(), "symmetrized requires a square matrix");
        let adj = m.adjoint();
        HermitianMatrix((m + adj).scale(0.5))
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix(CMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix(CMatrix::identity(dim, dim))
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        HermitianMatrix(m)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn projector(ket: &DVector<C64>) -> Self {
        Self::symmetrized(ket * ket.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianMatrix(self.0.map(|z| z * s))
    }

    /// Eigenvalues (unsorted) and the unitary whose columns are the matching
    /// eigenvectors.
    pub fn eigh(&self) -> Result<(Vec<f64>, CMatrix)> {
        eigh(&self.0)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.0)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }
}

impl Deref for HermitianMatrix {
    type Target = CMatrix;

    fn deref(&self) -> &CMatrix {
        &self.0
    }
}

fn try_eigh(m: CMatrix) -> Option<(Vec<f64>, CMatrix)> {
    let eig = SymmetricEigen::try_new(m, EIG_EPS, EIG_MAX_SWEEPS)?;
    let finite = eig.eigenvalues.iter().all(|v| v.is_finite())
        && eig.eigenvectors.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    finite.then(|| (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// Fixed pseudo-random unitary of dimension `n`, from the QR factor of a
/// xorshift-filled matrix. `attempt` selects the stream.
fn scrambling_unitary(n: usize, attempt: u64) -> CMatrix {
    let mut state: u64 = 0x2545_f491_4f6c_dd1d ^ (attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    CMatrix::from_fn(n, n, |_, _| C64::new(next(), next())).qr().q()
}

/// Hermitian eigendecomposition. The input is assumed Hermitian; only its
/// Hermitian part is meaningful.
///
/// nalgebra's implicit QR can underflow to NaN on very structured inputs
/// (e.g. rank-one Choi states of permutation gates, where tridiagonalization
/// leaves entries near 1e-160). On such a failure the decomposition is
/// retried on `QAQ†` for a fixed pseudo-random unitary `Q`, and the
/// eigenvectors are rotated back.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(QptError::dim("eigendecomposition of a non-square matrix"));
    }
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(QptError::numerical("eigendecomposition of a non-finite matrix"));
    }
    if let Some(r) = try_eigh(m.clone()) {
        return Ok(r);
    }
    for attempt in 0..3 {
        let q = scrambling_unitary(m.nrows(), attempt);
        let b = &q * m * q.adjoint();
        let b = (&b + b.adjoint()).scale(0.5);
        if let Some((values, vectors)) = try_eigh(b) {
            return Ok((values, q.adjoint() * vectors));
        }
    }
    Err(QptError::numerical("Hermitian eigensolver did not converge"))
}

/// `V diag(λ) V†`, symmetrized.
pub fn hermitian_from_eigen(values: &[f64], vectors: &CMatrix) -> HermitianMatrix {
    let mut scaled = vectors.clone();
    for (j, &v) in values.iter().enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    HermitianMatrix::symmetrized(&scaled * vectors.adjoint())
}

/// Kronecker product, `(a⊗b)[i·rb+k][j·cb+l] = a[i][j]·b[k][l]`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `Re Tr(a† b)`, the real inner product on complex matrices.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// Traces out the first tensor factor (dimension `d1`) of a
/// `(d1·d2)×(d1·d2)` matrix, leaving a `d2×d2` matrix.
pub fn partial_trace_first(m: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    debug_assert_eq!(m.nrows(), d1 * d2);
    CMatrix::from_fn(d2, d2, |k, j| (0..d1).map(|l| m[(l * d2 + k, l * d2 + j)]).sum())
}

/// Reduces a state on system ⊗ ancilla to the ancilla by tracing out the
/// system (first) factor.
pub fn partial_trace_system(
    rho: &HermitianMatrix,
    d_sys: usize,
    d_anc: usize,
) -> Result<HermitianMatrix> {
    if d_sys == 0 || d_anc == 0 || rho.dim() != d_sys * d_anc {
        return Err(QptError::dim(format!(
            "partial trace: state of dimension {} does not factor as {d_sys}x{d_anc}",
            rho.dim()
        )));
    }
    Ok(HermitianMatrix::symmetrized(partial_trace_first(
        rho.matrix(),
        d_sys,
        d_anc,
    )))
}

/// Frobenius-nearest positive-semidefinite matrix: negative eigenvalues are
/// clamped to zero.
pub fn project_psd(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let (mut values, vectors) = h.eigh()?;
    if values.iter().all(|&v| v >= 0.0) {
        return Ok(h.clone());
    }
    for v in values.iter_mut() {
        *v = v.max(0.0);
    }
    Ok(hermitian_from_eigen(&values, &vectors))
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    m.singular_values().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn pauli_z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
    }

    fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
    }

    #[test]
    fn eigh_survives_structured_rank_one() {
        // vec(I₈)vec(I₈)†/8 drives the plain QR sweep into NaN.
        let d = 8;
        let v = CMatrix::from_fn(d * d, 1, |k, _| c(if k / d == k % d { 1.0 } else { 0.0 }));
        let a = (&v * v.adjoint()).unscale(d as f64);
        let (values, vectors) = eigh(&a).unwrap();
        let rebuilt = hermitian_from_eigen(&values, &vectors);
        assert!((rebuilt.matrix() - &a).norm() < 1e-12);
        let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!(close(top, 1.0, 1e-12));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = CMatrix::identity(2, 2);
        assert_eq!(tensor(&i2, &i2), CMatrix::identity(4, 4));
    }

    #[test]
    fn tensor_z_z_is_diagonal() {
        let zz = tensor(&pauli_z(), &pauli_z());
        let expected = HermitianMatrix::from_diagonal(&[1.0, -1.0, -1.0, 1.0]);
        assert_eq!(&zz, expected.matrix());
    }

    #[test]
    fn tensor_x_x_flips_both_bits() {
        let xx = tensor(&pauli_x(), &pauli_x());
        let mut ket00 = DVector::zeros(4);
        ket00[0] = c(1.0);
        let out = xx * ket00;
        assert_eq!(out[3], c(1.0));
        assert_eq!(out.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn hermitian_new_rejects_asymmetry() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0), c(2.0), c(0.0), c(1.0)]);
        assert!(matches!(HermitianMatrix::new(m), Err(QptError::Numerical(_))));
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(rect), Err(QptError::Dimension(_))));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let sigma = HermitianMatrix::from_diagonal(&[0.25, 0.75]);
        let tau = HermitianMatrix::new(CMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.5),
                C64::new(0.1, 0.2),
                c(0.0),
                C64::new(0.1, -0.2),
                c(0.3),
                c(0.05),
                c(0.0),
                c(0.05),
                c(0.2),
            ],
        ))
        .unwrap();
        let rho = HermitianMatrix::new(tensor(sigma.matrix(), tau.matrix())).unwrap();
        let reduced = partial_trace_system(&rho, 2, 3).unwrap();
        assert!((reduced.matrix() - tau.matrix()).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_of_maximally_entangled_state() {
        for d in [2usize, 3, 4] {
            let mut psi = DVector::zeros(d * d);
            for j in 0..d {
                psi[j * d + j] = c(1.0 / (d as f64).sqrt());
            }
            let rho = HermitianMatrix::projector(&psi);
            let reduced = partial_trace_system(&rho, d, d).unwrap();
            let expected = HermitianMatrix::identity(d).scale(1.0 / d as f64);
            assert!((reduced.matrix() - expected.matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let rho = HermitianMatrix::identity(6).scale(1.0 / 6.0);
        let reduced = partial_trace_system(&rho, 2, 3).unwrap();
        let expected = HermitianMatrix::identity(3).scale(1.0 / 3.0);
        assert!((reduced.matrix() - expected.matrix()).norm() < 1e-15);
        assert!(close(reduced.trace(), rho.trace(), 1e-15));
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = HermitianMatrix::identity(6);
        assert!(matches!(
            partial_trace_system(&rho, 4, 2),
            Err(QptError::Dimension(_))
        ));
    }

    #[test]
    fn psd_projection_examples() {
        let p = project_psd(&HermitianMatrix::from_diagonal(&[1.0, -1.0])).unwrap();
        assert!((p.matrix() - HermitianMatrix::from_diagonal(&[1.0, 0.0]).matrix()).norm() < 1e-15);

        let z = project_psd(&HermitianMatrix::from_diagonal(&[-2.0, -3.0])).unwrap();
        assert!(z.matrix().norm() < 1e-15);

        let psd = HermitianMatrix::from_diagonal(&[0.3, 0.7]);
        let same = project_psd(&psd).unwrap();
        assert!((same.matrix() - psd.matrix()).norm() < 1e-10);
    }

    #[test]
    fn trace_norm_examples() {
        assert!(close(trace_norm(&CMatrix::identity(5, 5)), 5.0, 1e-12));
        let mut v = DVector::zeros(3);
        v[0] = C64::new(0.6, 0.0);
        v[2] = C64::new(0.0, 0.8);
        assert!(close(trace_norm(HermitianMatrix::projector(&v).matrix()), 1.0, 1e-12));
        let d = HermitianMatrix::from_diagonal(&[3.0, -4.0]);
        assert!(close(trace_norm(d.matrix()), 7.0, 1e-12));
    }
}
