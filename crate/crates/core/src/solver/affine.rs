//! Affine constraint sets of the form `Tr₁(G X G†) = T`.
//!
//! With `G = I` this is the partial-trace condition on a Choi state. With
//! `G` holding the row-major vectorized basis elements `vec(Γ_α)` as columns,
//! `Tr₁(G χ G†)` is the transpose of `Σ χ_{αβ} Γ_β†Γ_α`, so the same code
//! expresses trace preservation of a process matrix. `G†G = c·I` makes the
//! Euclidean projection available in closed form.

use crate::error::{QptError, Result};
use crate::qcore::{partial_trace_first, CMatrix, HermitianMatrix};

/// Tolerance on `G†G = c·I`.
const FRAME_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PartialTraceConstraint {
    frame: Option<CMatrix>,
    frame_norm: f64,
    outer_dim: usize,
    inner_dim: usize,
    target: CMatrix,
}

impl PartialTraceConstraint {
    /// `frame` is `G` (or `None` for the identity), `outer_dim` the dimension
    /// of the traced-out first factor and `target` the required reduction.
    pub fn new(frame: Option<CMatrix>, outer_dim: usize, target: CMatrix) -> Result<Self> {
        let inner_dim = target.nrows();
        if !target.is_square() || inner_dim == 0 || outer_dim == 0 {
            return Err(QptError::dim("partial-trace target must be a nonempty square matrix"));
        }
        let total = outer_dim * inner_dim;
        let mut frame_norm = 1.0;
        if let Some(g) = &frame {
            if g.nrows() != total || g.ncols() != total {
                return Err(QptError::dim(format!(
                    "constraint frame is {}x{}, expected {total}x{total}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            let gram = g.adjoint() * g;
            frame_norm = gram[(0, 0)].re;
            let scale = frame_norm.abs().max(1.0);
            let off = (&gram - CMatrix::identity(total, total).scale(frame_norm)).norm();
            if frame_norm <= 0.0 || off > FRAME_TOL * scale * total as f64 {
                return Err(QptError::numerical(
                    "constraint operator is rank deficient: basis frame is not a scaled isometry",
                ));
            }
        }
        Ok(PartialTraceConstraint {
            frame,
            frame_norm,
            outer_dim,
            inner_dim,
            target,
        })
    }

    /// `Tr_S ρ = I/d` for a Choi state on a `d`-dimensional system.
    pub fn choi(d: usize) -> Self {
        let target = CMatrix::identity(d, d).unscale(d as f64);
        PartialTraceConstraint::new(None, d, target).expect("identity frame is always valid")
    }

    /// Dimension of the constrained matrices.
    pub fn dim(&self) -> usize {
        self.outer_dim * self.inner_dim
    }

    fn lift(&self, x: &CMatrix) -> CMatrix {
        match &self.frame {
            None => x.clone(),
            Some(g) => g * x * g.adjoint(),
        }
    }

    fn reduction_error(&self, x: &CMatrix) -> CMatrix {
        partial_trace_first(&self.lift(x), self.outer_dim, self.inner_dim) - &self.target
    }

    /// Frobenius norm of the constraint violation.
    pub fn residual(&self, x: &CMatrix) -> f64 {
        self.reduction_error(x).norm()
    }

    /// Euclidean (Frobenius) projection onto the constraint set.
    pub fn project(&self, x: &CMatrix) -> CMatrix {
        let delta = self.reduction_error(x).unscale(self.outer_dim as f64);
        let correction = CMatrix::identity(self.outer_dim, self.outer_dim).kronecker(&delta);
        let out = match &self.frame {
            None => x - correction,
            Some(g) => {
                let c2 = self.frame_norm * self.frame_norm;
                x - (g.adjoint() * correction * g).unscale(c2)
            }
        };
        // Hermitian inputs stay Hermitian in exact arithmetic.
        (&out + out.adjoint()).scale(0.5)
    }

    pub fn project_hermitian(&self, x: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.project(x.matrix()))
    }
}
