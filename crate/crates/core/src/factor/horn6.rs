use serde::Serialize;

use super::{cp3_factorize, FactorError, NonnegFactor};
use crate::extremal::horn_matrix;
use crate::numkern::{lp_solve, LpOptions, LpOutcome, LpProblem, Mat, SymMat, Tolerance};

/// Generators g_k = e_k + e_{k+1 mod 5} (k < 5) and g_5 = e_5 in R⁶.
pub fn horn_generators() -> [Vec<f64>; 6] {
    std::array::from_fn(|k| {
        let mut g = vec![0.0; 6];
        if k < 5 {
            g[k] = 1.0;
            g[(k + 1) % 5] = 1.0;
        } else {
            g[5] = 1.0;
        }
        g
    })
}

/// W = [g_0 | … | g_5].
pub fn horn_generator_matrix() -> Mat {
    Mat::from_columns(6, &horn_generators())
}

#[derive(Debug, Clone, Serialize)]
pub struct HornFactorization {
    pub factor: NonnegFactor,
    /// Generator cone {g_i, g_{i+1}, g_5} each input column was assigned to.
    pub cone_of_column: Vec<usize>,
    /// Coefficients of each input column in its cone.
    pub coefficients: Vec<[f64; 3]>,
}

fn cone_generators(i: usize) -> [usize; 3] {
    [i, (i + 1) % 5, 5]
}

/// Refactors V (order 6) with VVᵀ orthogonal to H ⊕ 0 into at most 15
/// columns.
///
/// Each column of V lies in one of the cones C_i = cone{g_i, g_{i+1}, g_5}.
/// Grouping columns by cone gives VVᵀ = Σ_i W_i Y_i W_iᵀ with Y_i a 3×3 DNN
/// Gram matrix of coefficients, and each Y_i has a factor with at most
/// three columns.
pub fn horn_orthogonal_factorize(v: &NonnegFactor, tol: Tolerance) -> Result<HornFactorization, FactorError> {
    if v.n() != 6 {
        return Err(FactorError::Shape(format!("order {} given, need 6", v.n())));
    }
    let m = v.product();
    let h0 = horn_matrix().pad_zeros(1);
    let inner = m.inner(&h0);
    if inner.abs() > tol.threshold(h0.frobenius() * m.frobenius()) {
        return Err(FactorError::NotOrthogonalToHorn { inner });
    }

    let gens = horn_generators();
    let mut blocks = vec![SymMat::zeros(3); 5];
    let mut cone_of_column = Vec::with_capacity(v.p());
    let mut coefficients = Vec::with_capacity(v.p());
    for (col, c) in v.columns().iter().enumerate() {
        let scale = c.iter().fold(0.0f64, |s, x| s.max(*x));
        let thr = tol.threshold(scale);
        let mut found = None;
        for i in 0..5 {
            let g: Vec<Vec<f64>> = cone_generators(i).iter().map(|&k| gens[k].clone()).collect();
            let opts = LpOptions {
                feas_tol: tol.rel.max(1e-12),
                ..Default::default()
            };
            if let LpOutcome::Feasible { x, .. } = lp_solve(&LpProblem::cone_membership(&g, c), opts)? {
                let fit = (0..6).fold(0.0f64, |e, r| {
                    let y: f64 = (0..3).map(|t| x[t] * g[t][r]).sum();
                    e.max((y - c[r]).abs())
                });
                if fit <= thr {
                    found = Some((i, [x[0], x[1], x[2]]));
                    break;
                }
            }
        }
        let Some((i, x)) = found else {
            return Err(FactorError::ColumnOutsideCones { column: col });
        };
        let b = &mut blocks[i];
        for p in 0..3 {
            for q in p..3 {
                b.set(p, q, b.get(p, q) + x[p] * x[q]);
            }
        }
        cone_of_column.push(i);
        coefficients.push(x);
    }

    let mut cols = Vec::new();
    for (i, y) in blocks.iter().enumerate() {
        if y.max_abs() == 0.0 {
            continue;
        }
        let idx = cone_generators(i);
        for w in cp3_factorize(y, tol)?.columns() {
            let mut c = vec![0.0; 6];
            for t in 0..3 {
                for r in 0..6 {
                    c[r] += w[t] * gens[idx[t]][r];
                }
            }
            cols.push(c);
        }
    }
    Ok(HornFactorization {
        factor: NonnegFactor::new(6, cols)?,
        cone_of_column,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_matrix_itself() {
        let t = Tolerance::default();
        let w = NonnegFactor::from_mat(&horn_generator_matrix()).unwrap();
        let out = horn_orthogonal_factorize(&w, t).unwrap();
        assert!(out.factor.p() <= 15);
        assert!(out.factor.residual(&w.product()) <= 1e-10);
        assert_eq!(out.cone_of_column, vec![0, 0, 1, 2, 3, 0]);
    }

    #[test]
    fn e6_alone() {
        let mut e6 = vec![0.0; 6];
        e6[5] = 1.0;
        let v = NonnegFactor::new(6, vec![e6.clone()]).unwrap();
        let out = horn_orthogonal_factorize(&v, Tolerance::default()).unwrap();
        assert_eq!(out.factor.columns(), &[e6]);
    }

    #[test]
    fn rejects_non_orthogonal() {
        let e = horn_orthogonal_factorize(&NonnegFactor::identity(6), Tolerance::default()).unwrap_err();
        assert_eq!(e.tag(), "NOT_ORTHOGONAL_TO_HORN");
    }
}
