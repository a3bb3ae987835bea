use crate::error::{QptError, Result};
use crate::qcore::{hermitian_from_eigen, CMatrix, HermitianMatrix, C64};

pub(crate) fn soft(x: f64, t: f64) -> f64 {
    if x > t {
        x - t
    } else if x < -t {
        x + t
    } else {
        0.0
    }
}

fn check_threshold(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(QptError::config(format!("threshold must be finite and nonnegative, got {t}")))
    }
}

/// Entrywise soft-threshold `sign(x)·max(|x| − t, 0)`.
pub fn prox_l1(x: &[f64], threshold: f64) -> Result<Vec<f64>> {
    check_threshold(threshold)?;
    Ok(x.iter().map(|&v| soft(v, threshold)).collect())
}

/// Proximal map of `t·‖X‖_tr` on Hermitian matrices: eigenvalues are
/// soft-thresholded towards zero.
pub fn prox_trace_norm(x: &HermitianMatrix, threshold: f64) -> Result<HermitianMatrix> {
    check_threshold(threshold)?;
    if threshold == 0.0 {
        return Ok(x.clone());
    }
    let (mut values, vectors) = x.eigh()?;
    for v in values.iter_mut() {
        *v = soft(*v, threshold);
    }
    Ok(hermitian_from_eigen(&values, &vectors))
}

/// Proximal map of `t·‖X‖_tr + I_{X⪰0}`: eigenvalues become `max(λ − t, 0)`.
pub(crate) fn prox_trace_norm_psd(x: &CMatrix, threshold: f64) -> Result<CMatrix> {
    let (mut values, vectors) = crate::qcore::eigh(x)?;
    for v in values.iter_mut() {
        *v = (*v - threshold).max(0.0);
    }
    Ok(hermitian_from_eigen(&values, &vectors).into_matrix())
}

/// Proximal map of `t·Σ|X_ij|` (complex moduli): each entry shrinks towards
/// zero along its own phase.
pub(crate) fn soft_entries(x: &CMatrix, t: f64) -> CMatrix {
    x.map(|z| {
        let r = z.norm();
        if r <= t {
            C64::new(0.0, 0.0)
        } else {
            z * ((r - t) / r)
        }
    })
}

/// Entrywise modulus sum `Σ|X_ij|`.
pub(crate) fn entrywise_l1(x: &CMatrix) -> f64 {
    x.iter().map(|z| z.norm()).sum()
}
