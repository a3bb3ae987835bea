//! First-order solver for
//!
//! ```text
//! min_{X, v}  ½‖y − A(X) − v‖² + g(X) + μ‖v‖₁   s.t.  X ⪰ 0,  X ∈ affine set
//! ```
//!
//! For fixed `X` the optimal `v` is `soft(y − A(X), μ)`, so `v` is eliminated
//! exactly and the data term becomes a Huber function of the residual with
//! gradient Lipschitz constant `‖A‖²`. The outer loop is monotone FISTA with
//! restart on the reduced problem; its proximal step (regularizer, cone and
//! affine set together) is a warm-started consensus ADMM, see [`inner`].

mod affine;
mod inner;
mod prox;

pub use affine::PartialTraceConstraint;
pub use prox::{prox_l1, prox_trace_norm};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QptError, Result};
use crate::procmat::GammaBasis;
use crate::qcore::{eigh, project_psd, trace_norm, CMatrix, HermitianMatrix, C64};
use inner::InnerProx;
use prox::{entrywise_l1, soft};

/// A real-valued linear map on Hermitian matrices together with its adjoint
/// with respect to `⟨X, Y⟩ = Re Tr(X†Y)`.
pub trait LinearMeasurement: Send + Sync {
    fn matrix_dim(&self) -> usize;
    fn num_outcomes(&self) -> usize;
    fn apply(&self, x: &CMatrix) -> Vec<f64>;
    /// `Σ c_i A_i`, a Hermitian matrix.
    fn adjoint(&self, coeffs: &[f64]) -> CMatrix;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixPenalty {
    TraceNorm(f64),
    EntrywiseL1(f64),
    None,
}

impl MatrixPenalty {
    fn weight(self) -> Option<f64> {
        match self {
            MatrixPenalty::TraceNorm(w) | MatrixPenalty::EntrywiseL1(w) => Some(w),
            MatrixPenalty::None => None,
        }
    }

    fn value(self, x: &CMatrix) -> f64 {
        match self {
            MatrixPenalty::TraceNorm(w) => w * trace_norm(x),
            MatrixPenalty::EntrywiseL1(w) => w * entrywise_l1(x),
            MatrixPenalty::None => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSize {
    /// `1/L` with `L` from a power-iteration estimate of `‖A‖²`.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub max_iters: usize,
    pub step_size: StepSize,
    pub feas_tol: f64,
    pub obj_tol: f64,
    /// Relaxation factor of the inner splitting, in (0, 2).
    pub over_relaxation: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iters: 50_000,
            step_size: StepSize::Auto,
            feas_tol: 1e-7,
            obj_tol: 1e-9,
            over_relaxation: 1.5,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(QptError::config("max_iters must be at least 1"));
        }
        if !(self.feas_tol > 0.0 && self.obj_tol > 0.0) {
            return Err(QptError::config("solver tolerances must be positive"));
        }
        if !(self.over_relaxation > 0.0 && self.over_relaxation < 2.0) {
            return Err(QptError::config("over_relaxation must lie in (0, 2)"));
        }
        if let StepSize::Fixed(s) = self.step_size {
            if !(s > 0.0 && s.is_finite()) {
                return Err(QptError::config("fixed step size must be positive"));
            }
        }
        Ok(())
    }
}

pub struct RecoveryProblem<'a> {
    pub forward: &'a dyn LinearMeasurement,
    pub data: Vec<f64>,
    pub reg_matrix: MatrixPenalty,
    /// Weight of `‖v‖₁`.
    pub reg_vector: f64,
    pub psd: bool,
    pub affine: Option<&'a PartialTraceConstraint>,
}

impl RecoveryProblem<'_> {
    fn validate(&self) -> Result<()> {
        let m = self.forward.num_outcomes();
        if self.data.len() != m {
            return Err(QptError::dim(format!(
                "data has {} entries, measurement map has {m} outcomes",
                self.data.len()
            )));
        }
        if self.data.iter().any(|y| !y.is_finite()) {
            return Err(QptError::numerical("data contains non-finite values"));
        }
        let positive = |w: f64| w > 0.0 && w.is_finite();
        if !positive(self.reg_vector) {
            return Err(QptError::config("corruption weight must be positive"));
        }
        if let Some(w) = self.reg_matrix.weight() {
            if !positive(w) {
                return Err(QptError::config("matrix regularization weight must be positive"));
            }
        }
        if let Some(a) = self.affine {
            if a.dim() != self.forward.matrix_dim() {
                return Err(QptError::dim("affine constraint and measurement map disagree on dimension"));
            }
        }
        Ok(())
    }

    /// Data term with `v` minimized out, and the weights `r − v` whose
    /// adjoint image is the negative gradient.
    fn data_term(&self, ax: &[f64]) -> (f64, Vec<f64>) {
        let mu = self.reg_vector;
        let mut value = 0.0;
        let coeffs = self
            .data
            .iter()
            .zip(ax)
            .map(|(y, a)| {
                let r = y - a;
                let v = soft(r, mu);
                value += 0.5 * (r - v) * (r - v) + mu * v.abs();
                r - v
            })
            .collect();
        (value, coeffs)
    }

    fn objective(&self, x: &CMatrix, ax: &[f64]) -> f64 {
        self.data_term(ax).0 + self.reg_matrix.value(x)
    }
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub matrix_estimate: HermitianMatrix,
    pub corruption_estimate: Vec<f64>,
    pub iterations: usize,
    pub final_objective: f64,
    /// Largest of the affine residual and the negative part of the minimum
    /// eigenvalue.
    pub feasibility_residual: f64,
    pub converged: bool,
    /// Objective of the accepted iterate after each outer iteration.
    pub objective_history: Vec<f64>,
}

/// Window (in outer iterations) over which relative objective change is
/// measured.
const STOP_WINDOW: usize = 10;
/// Consecutive objective increases treated as divergence.
const DIVERGENCE_RUN: usize = 100;
/// Target of the alternating-projection fallback in [`certify`].
const ALTERNATING_TOL: f64 = 1e-12;

fn power_iteration(a: &dyn LinearMeasurement) -> f64 {
    let n = a.matrix_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let raw = CMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let mut x = &raw + raw.adjoint();
    let mut estimate = 0.0;
    for _ in 0..200 {
        let norm = x.norm();
        if norm == 0.0 {
            return 0.0;
        }
        x.unscale_mut(norm);
        let next = a.adjoint(&a.apply(&x));
        let value = next.norm();
        let done = (value - estimate).abs() <= 1e-6 * value;
        estimate = value;
        x = next;
        if done {
            break;
        }
    }
    estimate
}

fn axpy(a: &[f64], b: &[f64], beta: f64) -> Vec<f64> {
    // a + beta·(a − b)
    a.iter().zip(b).map(|(x, y)| x + beta * (x - y)).collect()
}

fn feasibility(problem: &RecoveryProblem, x: &CMatrix) -> Result<f64> {
    let mut residual: f64 = 0.0;
    if let Some(a) = problem.affine {
        residual = residual.max(a.residual(x));
    }
    if problem.psd {
        let (values, _) = eigh(x)?;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        residual = residual.max(-min);
    }
    Ok(residual)
}

/// Moves `x` onto the feasible set. With an affine constraint whose minimum
/// norm point `c` is positive definite, `x` is mixed with `c` just enough to
/// lift its smallest eigenvalue to zero, which keeps the affine constraint
/// exact. Otherwise it alternates projections.
fn certify(problem: &RecoveryProblem, x: CMatrix, center: Option<&(CMatrix, f64)>) -> Result<CMatrix> {
    if !problem.psd {
        return Ok(match problem.affine {
            Some(a) => a.project(&x),
            None => x,
        });
    }
    let Some(affine) = problem.affine else {
        return Ok(project_psd(&HermitianMatrix::symmetrized(x))?.into_matrix());
    };
    let x = affine.project(&x);
    let (values, _) = eigh(&x)?;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min >= 0.0 {
        return Ok(x);
    }
    if let Some((c, c_min)) = center {
        if *c_min > 0.0 {
            let theta = -min / (-min + c_min);
            return Ok(x.scale(1.0 - theta) + c.scale(theta));
        }
    }
    let mut x = x;
    for _ in 0..1000 {
        x = affine.project(project_psd(&HermitianMatrix::symmetrized(x))?.matrix());
        if feasibility(problem, &x)? <= ALTERNATING_TOL {
            break;
        }
    }
    Ok(x)
}

/// Solves the regularized recovery program. A run that stops at `max_iters`
/// without meeting `obj_tol` returns [`QptError::Convergence`] carrying the
/// last iterate.
pub fn solve(problem: &RecoveryProblem, opts: &SolverOptions) -> Result<RecoveryResult> {
    opts.validate()?;
    problem.validate()?;
    let a = problem.forward;
    let n = a.matrix_dim();

    let step = match opts.step_size {
        StepSize::Fixed(s) => s,
        StepSize::Auto => {
            let l = power_iteration(a) * 1.01;
            if l > 0.0 {
                1.0 / l
            } else {
                1.0
            }
        }
    };

    let center = match problem.affine {
        Some(aff) => {
            let c = aff.project(&CMatrix::zeros(n, n));
            let (values, _) = eigh(&c)?;
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            Some((c, min))
        }
        None => None,
    };
    let x0 = match &center {
        Some((c, min)) if *min >= 0.0 || !problem.psd => c.clone(),
        _ => certify(problem, CMatrix::zeros(n, n), center.as_ref())?,
    };

    let mut inner = InnerProx::new(problem.reg_matrix, problem.psd, problem.affine, opts.over_relaxation, &x0);
    let inner_tol = opts.feas_tol;

    let mut x = x0;
    let mut ax = a.apply(&x);
    let mut fx = problem.objective(&x, &ax);
    if !fx.is_finite() {
        return Err(QptError::numerical("objective is not finite at the starting point"));
    }
    let mut y = x.clone();
    let mut ay = ax.clone();
    let mut theta = 1.0_f64;
    let mut history = Vec::with_capacity(opts.max_iters.min(1 << 16));
    let mut increases = 0usize;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iters {
        iterations += 1;
        let (_, coeffs) = problem.data_term(&ay);
        let grad = a.adjoint(&coeffs);
        let w = &y + grad.scale(step);
        let z = inner.prox(&w, step, inner_tol)?;
        let az = a.apply(&z);
        let fz = problem.objective(&z, &az);
        if !fz.is_finite() {
            return Err(QptError::numerical("objective became non-finite"));
        }
        let theta_next = 0.5 * (1.0 + (1.0 + 4.0 * theta * theta).sqrt());
        if fz <= fx {
            let beta = (theta - 1.0) / theta_next;
            y = &z + (&z - &x).scale(beta);
            ay = axpy(&az, &ax, beta);
            x = z;
            ax = az;
            fx = fz;
            theta = theta_next;
            increases = 0;
        } else {
            // Restart from the accepted point with a plain proximal step.
            if fz - fx > 1e-12 * fx.abs().max(1e-12) {
                increases += 1;
            }
            y = x.clone();
            ay = ax.clone();
            theta = 1.0;
        }
        history.push(fx);
        if increases >= DIVERGENCE_RUN {
            break;
        }
        if history.len() > STOP_WINDOW {
            let old = history[history.len() - 1 - STOP_WINDOW];
            let rel = (old - fx) / fx.abs().max(1e-12);
            if rel <= opts.obj_tol {
                converged = true;
                break;
            }
        }
    }

    let x = certify(problem, x, center.as_ref())?;
    let feasibility_residual = feasibility(problem, &x)?;
    let ax = a.apply(&x);
    let final_objective = problem.objective(&x, &ax);
    let corruption_estimate = problem
        .data
        .iter()
        .zip(&ax)
        .map(|(y, a)| soft(y - a, problem.reg_vector))
        .collect();
    let result = RecoveryResult {
        matrix_estimate: HermitianMatrix::symmetrized(x),
        corruption_estimate,
        iterations,
        final_objective,
        feasibility_residual,
        converged: converged && feasibility_residual <= opts.feas_tol,
        objective_history: history,
    };
    if result.converged {
        Ok(result)
    } else {
        Err(QptError::Convergence(Box::new(result)))
    }
}

/// Euclidean projection of a process matrix onto the trace-preserving set
/// `Σ χ_{αβ} Γ_β†Γ_α = I` of the given basis.
pub fn project_affine_tp(chi: &CMatrix, basis: &GammaBasis) -> Result<CMatrix> {
    let d2 = basis.d() * basis.d();
    if chi.nrows() != d2 || chi.ncols() != d2 {
        return Err(QptError::dim(format!(
            "process matrix is {}x{}, basis expects {d2}x{d2}",
            chi.nrows(),
            chi.ncols()
        )));
    }
    Ok(basis.tp_constraint()?.project(chi))
}
