use serde::Serialize;

use super::{FactorError, NonnegFactor};
use crate::numkern::{svd, Mat, SymMat, Tolerance};

const MAX_ITER: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct Continuation {
    /// [V̄ + ΔV | Ṽ].
    pub factor: NonnegFactor,
    pub delta: Vec<Vec<f64>>,
    /// max |Mhat − V̂V̂ᵀ| before each Newton step, and after the last one.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

/// Moves the square block of a factor [V̄ | Ṽ] so that the product hits a
/// nearby target Mhat, keeping Ṽ fixed.
///
/// Solves F(V) = VVᵀ = T with T = Mhat − ṼṼᵀ by Newton's method. With the
/// SVD V = UΣWᵀ, the step δ = UZWᵀ with Z symmetric turns the linearized
/// equation Vδᵀ + δVᵀ = R into ZΣ + ΣZ = UᵀRU, solved entrywise.
pub fn factor_continuation(
    vbar: &Mat,
    vtilde: &NonnegFactor,
    mhat: &SymMat,
    tol: Tolerance,
) -> Result<Continuation, FactorError> {
    let n = vbar.rows();
    if vbar.cols() != n || mhat.n() != n || vtilde.n() != n {
        return Err(FactorError::Shape(format!(
            "need square V̄ and matching orders, got V̄ {}×{}, Ṽ order {}, Mhat order {}",
            n,
            vbar.cols(),
            vtilde.n(),
            mhat.n()
        )));
    }
    let vmin = vbar.min_entry();
    if vmin <= tol.threshold(vbar.max_abs()) {
        return Err(FactorError::NotPositive { min_entry: vmin });
    }
    let target = mhat.sub(&vtilde.product());
    let goal = 1e-11 * mhat.max_abs();

    let mut v = vbar.clone();
    let mut residuals = Vec::new();
    let mut iterations = 0;
    loop {
        let r = target.sub(&v.gram_outer());
        let res = r.max_abs();
        if let Some(prev) = residuals.last() {
            if res > *prev {
                residuals.push(res);
                return Err(FactorError::NewtonDiverged {
                    iteration: iterations,
                    residual: res,
                });
            }
        }
        residuals.push(res);
        if res <= goal {
            break;
        }
        if iterations == MAX_ITER {
            return Err(FactorError::NewtonDiverged {
                iteration: iterations,
                residual: res,
            });
        }
        let s = svd(&v);
        let smin = s.min_sigma();
        if smin <= tol.threshold(s.sigma[0]) {
            return Err(FactorError::NewtonDiverged {
                iteration: iterations,
                residual: res,
            });
        }
        let rp = r.congruence(&s.u);
        let z = Mat::from_fn(n, n, |i, j| rp.get(i, j) / (s.sigma[i] + s.sigma[j]));
        if z.max_abs() > smin {
            return Err(FactorError::NewtonDiverged {
                iteration: iterations,
                residual: res,
            });
        }
        v = v.add(&s.u.matmul(&z).matmul(&s.v.transpose()));
        iterations += 1;
        for i in 0..n {
            for j in 0..n {
                if v[(i, j)] <= 0.0 {
                    return Err(FactorError::PositivityLost { i, j, value: v[(i, j)] });
                }
            }
        }
    }
    let delta = v.sub(vbar).to_rows();
    let factor = NonnegFactor::from_mat(&v)?.concat(vtilde);
    Ok(Continuation {
        factor,
        delta,
        residuals,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vbar() -> Mat {
        Mat::identity(3).add(&Mat::from_fn(3, 3, |_, _| 0.5))
    }

    #[test]
    fn fixed_point() {
        let t = Tolerance::default();
        let vt = NonnegFactor::new(3, vec![vec![1.0, 0.0, 2.0]]).unwrap();
        let m = vbar().gram_outer().add(&vt.product());
        let c = factor_continuation(&vbar(), &vt, &m, t).unwrap();
        assert_eq!(c.iterations, 0);
        assert_eq!(c.factor.to_mat(), vbar().hcat(&vt.to_mat()));
    }

    #[test]
    fn small_perturbation_converges_quadratically() {
        let t = Tolerance::default();
        let mut m = vbar().gram_outer();
        m.set(0, 0, m.get(0, 0) + 1e-3);
        let c = factor_continuation(&vbar(), &NonnegFactor::empty(3), &m, t).unwrap();
        assert!(c.factor.residual(&m) <= 1e-10 * m.max_abs());
        assert_eq!(c.factor.p(), 3);
        let r = &c.residuals;
        assert!(r.len() >= 3);
        // e_{k+1} ≲ C e_k²
        assert!(r[2] <= 10.0 * r[1] * r[1] / r[0].min(1.0) + 1e-14);
    }

    #[test]
    fn ill_conditioned_block_diverges() {
        let t = Tolerance::default();
        // nearly rank one positive block
        let vb = Mat::from_fn(3, 3, |i, j| 1.0 + 1e-6 * ((i * 3 + j) as f64).sin().abs());
        let mut m = vb.gram_outer();
        m.set(0, 0, m.get(0, 0) + 0.1);
        let e = factor_continuation(&vb, &NonnegFactor::empty(3), &m, t).unwrap_err();
        assert_eq!(e.tag(), "NEWTON_DIVERGED");
    }
}
