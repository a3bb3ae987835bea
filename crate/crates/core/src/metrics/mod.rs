//! Figures of merit: state fidelity, corruption MSE and Monte Carlo GRIP
//! estimates.

mod grip;

pub use grip::{empirical_grip, GripDraw, GripEstimate, StatePauliMap};

use crate::error::{QptError, Result};
use crate::qcore::{eigh, hermitian_from_eigen, HermitianMatrix};

/// Eigenvalues more negative than this are rejected.
pub const PSD_TOL: f64 = 1e-6;
const TRACE_TOL: f64 = 1e-6;
const OVERSHOOT_TOL: f64 = 1e-9;

fn check_psd(values: &[f64], which: &str) -> Result<()> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(QptError::numerical(format!(
            "{which} argument has eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Square roots of eigenvalues, with round-off sized values (below
/// `n·ε·max|λ|`) set to zero. Taking √ of a 1e-17 eigenvalue would otherwise
/// perturb the result at the 1e-8 level.
fn stable_roots(values: &[f64]) -> Vec<f64> {
    let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = values.len() as f64 * f64::EPSILON * top;
    values.iter().map(|&v| if v > cut { v.sqrt() } else { 0.0 }).collect()
}

/// `(Tr√(√a·b·√a))²`.
pub fn fidelity(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(QptError::dim(format!("fidelity of {}x{0} and {}x{1}", a.dim(), b.dim())));
    }
    if (a.trace() - b.trace()).abs() > TRACE_TOL {
        return Err(QptError::numerical(format!(
            "fidelity arguments have traces {} and {}",
            a.trace(),
            b.trace()
        )));
    }
    let (va, ua) = a.eigh()?;
    check_psd(&va, "first")?;
    let (vb, _) = b.eigh()?;
    check_psd(&vb, "second")?;
    let roots = stable_roots(&va);
    let sqrt_a = hermitian_from_eigen(&roots, &ua);
    let inner = sqrt_a.matrix() * b.matrix() * sqrt_a.matrix();
    let (vi, _) = eigh(&HermitianMatrix::symmetrized(inner))?;
    let f = stable_roots(&vi).iter().sum::<f64>().powi(2);
    if f > 1.0 + OVERSHOOT_TOL {
        return Err(QptError::numerical(format!("fidelity {f} exceeds 1")));
    }
    Ok(f.min(1.0))
}

/// Fidelity of trace-normalized matrices, for process matrices in any basis.
pub fn chi_fidelity(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    let (ta, tb) = (a.trace(), b.trace());
    if !(ta > 0.0 && tb > 0.0) {
        return Err(QptError::numerical("process matrix with nonpositive trace"));
    }
    fidelity(&a.scale(1.0 / ta), &b.scale(1.0 / tb))
}

/// `(1/m) Σ (v_i − v̂_i)²`.
pub fn mse(v_true: &[f64], v_hat: &[f64]) -> Result<f64> {
    if v_true.len() != v_hat.len() {
        return Err(QptError::dim(format!(
            "mse of vectors with {} and {} entries",
            v_true.len(),
            v_hat.len()
        )));
    }
    if v_true.is_empty() {
        return Err(QptError::dim("mse of empty vectors"));
    }
    let sum: f64 = v_true.iter().zip(v_hat).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(sum / v_true.len() as f64)
}
