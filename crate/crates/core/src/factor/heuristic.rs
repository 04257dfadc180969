use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::NonnegFactor;
use crate::numkern::{pivoted_cholesky, polar_orthogonal, Mat, SymMat, Tolerance};

#[derive(Debug, Clone)]
pub struct HeuristicOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
    /// Optional starting factor; its rotation seeds restart 0.
    pub initial: Option<NonnegFactor>,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        HeuristicOptions {
            restarts: 20,
            max_iter: 2000,
            seed: 0,
            initial: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HeuristicOutcome {
    Success {
        factor: NonnegFactor,
        restart: usize,
        iterations: usize,
        residual: f64,
    },
    /// Not a proof that no factor with p columns exists.
    Failed { reason: String, best_residual: f64 },
}

impl HeuristicOutcome {
    pub fn factor(&self) -> Option<&NonnegFactor> {
        match self {
            HeuristicOutcome::Success { factor, .. } => Some(factor),
            HeuristicOutcome::Failed { .. } => None,
        }
    }
}

/// Searches for a nonnegative factor with exactly `p_target` columns.
///
/// Every factor of M with p columns is LQ for a fixed n×p root L and some
/// orthogonal Q. The search alternates B = max(LQ, 0) with the Procrustes
/// update Q = polar(LᵀB), restarting from random rotations. Restarts run in
/// order and the first success wins, so results depend only on the seed.
pub fn heuristic_min_factor(m: &SymMat, p_target: usize, opts: &HeuristicOptions, tol: Tolerance) -> HeuristicOutcome {
    let n = m.n();
    let failed = |reason: String, best_residual: f64| HeuristicOutcome::Failed { reason, best_residual };
    let root = match pivoted_cholesky(m, tol) {
        Ok(r) => r,
        Err(e) => return failed(format!("matrix is not PSD: {e}"), f64::INFINITY),
    };
    let r = root.rank();
    if p_target < r || p_target == 0 {
        return failed(format!("p = {p_target} is below rank {r}"), f64::INFINITY);
    }
    if m.min_entry() < -tol.threshold(m.max_abs()) {
        return failed("matrix has a negative entry".into(), f64::INFINITY);
    }
    let p = p_target;
    let l = Mat::from_fn(n, p, |i, j| if j < r { root.factor[(i, j)] } else { 0.0 });
    let goal = 1e-7 * m.max_abs().max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best_residual = f64::INFINITY;

    for restart in 0..opts.restarts.max(1) {
        let mut q = match (&opts.initial, restart) {
            (Some(v0), 0) if v0.n() == n && v0.p() <= p => {
                let b0 = Mat::from_fn(n, p, |i, j| if j < v0.p() { v0.column(j)[i] } else { 0.0 });
                polar_orthogonal(&l.transpose().matmul(&b0))
            }
            (None, 0) => Mat::identity(p),
            _ => polar_orthogonal(&Mat::from_fn(p, p, |_, _| rng.gen_range(-1.0..1.0))),
        };
        for it in 0..opts.max_iter {
            let mut b = l.matmul(&q);
            for i in 0..n {
                for j in 0..p {
                    b[(i, j)] = b[(i, j)].max(0.0);
                }
            }
            let residual = b.gram_outer().max_abs_diff(m);
            best_residual = best_residual.min(residual);
            if residual <= goal {
                let factor = NonnegFactor::from_mat(&b)
                    .expect("clamped entries are nonnegative")
                    .split_to(p);
                return HeuristicOutcome::Success {
                    factor,
                    restart,
                    iterations: it,
                    residual,
                };
            }
            q = polar_orthogonal(&l.transpose().matmul(&b));
        }
    }
    failed(
        format!("no factor found in {} restarts", opts.restarts.max(1)),
        best_residual,
    )
}
