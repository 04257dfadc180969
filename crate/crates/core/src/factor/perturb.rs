use serde::Serialize;

use super::{FactorError, NonnegFactor};
use crate::numkern::{dot, eig_sym, Mat, SymMat, Tolerance};

/// Output of [`perturb_positify`].
#[derive(Debug, Clone, Serialize)]
pub struct Positified {
    /// M = M₀ + ε v vᵀ.
    pub matrix: SymMat,
    /// V = V₀(I + δ x xᵀ), entrywise positive.
    pub factor: NonnegFactor,
    /// Unit Perron vector v of M₀.
    pub perron: Vec<f64>,
    pub delta: f64,
}

/// Turns a nonnegative factor of an irreducible M₀ = V₀V₀ᵀ into a positive
/// factor of a nearby matrix with the same column count.
///
/// With v the Perron vector of M₀ (eigenvalue λ) and x = V₀ᵀv/λ > 0,
/// C = I + δxxᵀ satisfies C² = I + εxxᵀ for
/// δ = ε / (√(1 + ε‖x‖²) + 1), and V₀x = v, so
/// (V₀C)(V₀C)ᵀ = M₀ + ε vvᵀ.
pub fn perturb_positify(v0: &NonnegFactor, eps: f64, tol: Tolerance) -> Result<Positified, FactorError> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(FactorError::Shape(format!(
            "eps must be a nonnegative number, got {eps}"
        )));
    }
    let n = v0.n();
    if v0.p() == 0 {
        return Err(FactorError::Shape("factor has no columns".into()));
    }
    let m0 = v0.product();
    let thr = tol.threshold(m0.max_abs());
    let (lambda, v) = perron(&m0, thr);
    // a reducible M₀ has Perron vectors with zero coordinates
    let min_coord = if is_irreducible(&m0, thr) {
        v.iter().copied().fold(f64::INFINITY, f64::min)
    } else {
        0.0
    };
    if min_coord <= tol.threshold(1.0) {
        return Err(FactorError::PerronNotPositive { min_coord });
    }

    let vm = v0.to_mat();
    let x: Vec<f64> = vm.tr_mul_vec(&v).iter().map(|c| c / lambda).collect();
    let xx = dot(&x, &x);
    let delta = eps / ((1.0 + eps * xx).sqrt() + 1.0);
    let vx = vm.mul_vec(&x);
    let p = v0.p();
    let v_new = Mat::from_fn(n, p, |i, j| vm[(i, j)] + delta * vx[i] * x[j]);
    let factor = NonnegFactor::from_mat(&v_new)?;
    let matrix = m0.add(&SymMat::outer(&v).scale(eps));
    Ok(Positified {
        matrix,
        factor,
        perron: v,
        delta,
    })
}

/// Connectivity of the graph with an edge {i, j} whenever M_ij > thr.
fn is_irreducible(m: &SymMat, thr: f64) -> bool {
    let n = m.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && m.get(i, j) > thr {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Dominant eigenpair of a nonnegative symmetric matrix: Jacobi start, then
/// power iteration on M + λI (which has no eigenvalue of modulus 2λ other
/// than the Perron one) until successive iterates agree to 1e-14.
fn perron(m: &SymMat, thr: f64) -> (f64, Vec<f64>) {
    let e = eig_sym(m);
    let shift = e.max_value().max(thr);
    let mut v: Vec<f64> = e.vector(0).iter().map(|c| c.abs()).collect();
    for _ in 0..10_000 {
        let mut w = m.mul_vec(&v);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += shift * vi;
        }
        let nw = dot(&w, &w).sqrt();
        w.iter_mut().for_each(|c| *c /= nw);
        let diff = w.iter().zip(&v).fold(0.0f64, |d, (a, b)| d.max((a - b).abs()));
        v = w;
        if diff <= 1e-14 {
            break;
        }
    }
    let lambda = m.quad_form(&v);
    (lambda, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::dd_factorize;

    #[test]
    fn positifies_dd_factor() {
        let t = Tolerance::default();
        let m = SymMat::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]], 0.0).unwrap();
        let v0 = dd_factorize(&m, t).unwrap();
        let p = perturb_positify(&v0, 0.1, t).unwrap();
        assert_eq!(p.factor.p(), 3);
        assert!(p.factor.min_entry() > 0.0);
        assert!(p.factor.residual(&p.matrix) <= 1e-12);
    }

    #[test]
    fn zero_eps_is_identity() {
        let t = Tolerance::default();
        let v0 = NonnegFactor::new(2, vec![vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = perturb_positify(&v0, 0.0, t).unwrap();
        assert_eq!(p.delta, 0.0);
        assert_eq!(p.factor, v0);
        assert_eq!(p.matrix, v0.product());
    }

    #[test]
    fn single_column() {
        let t = Tolerance::default();
        let v0 = NonnegFactor::new(2, vec![vec![1.0, 1.0]]).unwrap();
        let p = perturb_positify(&v0, 0.5, t).unwrap();
        // v = e/√2, λ = 2, x = 1/√2, δ = ε/(√(1+ε/2)+1), column scaled by 1 + δ/2
        let delta = 0.5 / (1.25f64.sqrt() + 1.0);
        assert!((p.delta - delta).abs() < 1e-15);
        for c in p.factor.column(0) {
            assert!((c - (1.0 + 0.5 * delta)).abs() < 1e-14);
        }
        // J_2 + ε vvᵀ with v = e/√2
        assert!((p.matrix.get(0, 1) - 1.25).abs() < 1e-14);
    }

    #[test]
    fn reducible_rejected() {
        let t = Tolerance::default();
        let e = perturb_positify(&NonnegFactor::identity(2), 0.1, t).unwrap_err();
        assert_eq!(e.tag(), "PERRON_NOT_POSITIVE");
    }
}
