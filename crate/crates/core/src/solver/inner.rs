//! Proximal map of `t·g(X) + I_{X⪰0} + I_{aff}(X)` by consensus ADMM.
//!
//! The affine set is handled in the X-update, where the isotropic quadratic
//! makes the constrained minimizer a plain projection. Each remaining term is
//! a consensus block with its own copy `Z_j` and scaled dual `U_j`. Block
//! state persists between calls, so successive outer iterations warm-start.

use super::affine::PartialTraceConstraint;
use super::prox::{prox_trace_norm_psd, soft_entries};
use super::MatrixPenalty;
use crate::error::Result;
use crate::qcore::{eigh, hermitian_from_eigen, project_psd, CMatrix, HermitianMatrix};

const RHO: f64 = 1.0;

#[derive(Debug, Clone, Copy)]
enum BlockKind {
    /// `w·‖Z‖_tr` together with `Z ⪰ 0`.
    ShrinkPsd(f64),
    /// `w·‖Z‖_tr` on an indefinite variable.
    Shrink(f64),
    /// `w·Σ|Z_ij|`.
    SoftEntries(f64),
    Psd,
}

impl BlockKind {
    /// `prox` of `scale·g`, `scale = t/ρ`.
    fn apply(self, p: &CMatrix, scale: f64) -> Result<CMatrix> {
        Ok(match self {
            BlockKind::ShrinkPsd(w) => prox_trace_norm_psd(p, scale * w)?,
            BlockKind::Shrink(w) => {
                let (mut values, vectors) = eigh(p)?;
                for v in values.iter_mut() {
                    *v = super::prox::soft(*v, scale * w);
                }
                hermitian_from_eigen(&values, &vectors).into_matrix()
            }
            BlockKind::SoftEntries(w) => soft_entries(p, scale * w),
            BlockKind::Psd => project_psd(&HermitianMatrix::symmetrized(p.clone()))?.into_matrix(),
        })
    }
}

struct Block {
    kind: BlockKind,
    z: CMatrix,
    u: CMatrix,
}

pub(crate) struct InnerProx<'a> {
    blocks: Vec<Block>,
    affine: Option<&'a PartialTraceConstraint>,
    alpha: f64,
    max_iters: usize,
    pub(crate) total_iters: usize,
}

impl<'a> InnerProx<'a> {
    pub(crate) fn new(
        penalty: MatrixPenalty,
        psd: bool,
        affine: Option<&'a PartialTraceConstraint>,
        alpha: f64,
        start: &CMatrix,
    ) -> Self {
        let mut kinds = Vec::new();
        match penalty {
            MatrixPenalty::TraceNorm(w) if psd => kinds.push(BlockKind::ShrinkPsd(w)),
            MatrixPenalty::TraceNorm(w) => kinds.push(BlockKind::Shrink(w)),
            MatrixPenalty::EntrywiseL1(w) => {
                kinds.push(BlockKind::SoftEntries(w));
                if psd {
                    kinds.push(BlockKind::Psd);
                }
            }
            MatrixPenalty::None => {
                if psd {
                    kinds.push(BlockKind::Psd);
                }
            }
        }
        let n = start.nrows();
        let blocks = kinds
            .into_iter()
            .map(|kind| Block {
                kind,
                z: start.clone(),
                u: CMatrix::zeros(n, n),
            })
            .collect();
        InnerProx {
            blocks,
            affine,
            alpha,
            max_iters: 2000,
            total_iters: 0,
        }
    }

    fn project_affine(&self, x: CMatrix) -> CMatrix {
        match self.affine {
            Some(a) => a.project(&x),
            None => x,
        }
    }

    /// Approximate `argmin_X ½‖X − w‖² + t·g(X)` over the constraint set.
    /// The returned point satisfies the affine constraint exactly; the
    /// remaining blocks agree with it to within `tol`.
    pub(crate) fn prox(&mut self, w: &CMatrix, t: f64, tol: f64) -> Result<CMatrix> {
        if self.blocks.is_empty() {
            return Ok(self.project_affine(w.clone()));
        }
        if self.blocks.len() == 1 && self.affine.is_none() {
            self.total_iters += 1;
            return self.blocks[0].kind.apply(w, t);
        }
        let k = self.blocks.len() as f64;
        let scale = t / RHO;
        let mut x = w.clone();
        for _ in 0..self.max_iters {
            self.total_iters += 1;
            let mut acc = w.clone();
            for b in &self.blocks {
                acc += (&b.z - &b.u).scale(RHO);
            }
            x = self.project_affine(acc.unscale(1.0 + k * RHO));

            let mut primal: f64 = 0.0;
            let mut dual: f64 = 0.0;
            for b in self.blocks.iter_mut() {
                let relaxed = x.scale(self.alpha) + b.z.scale(1.0 - self.alpha);
                let z_new = b.kind.apply(&(&relaxed + &b.u), scale)?;
                b.u += &relaxed - &z_new;
                dual = dual.max(RHO * (&z_new - &b.z).norm());
                primal = primal.max((&x - &z_new).norm());
                b.z = z_new;
            }
            if primal <= tol && dual <= tol {
                break;
            }
        }
        Ok(x)
    }
}
