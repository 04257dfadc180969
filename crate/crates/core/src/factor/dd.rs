use super::{FactorError, NonnegFactor};
use crate::cones::{cp_interior_certificate, InteriorCertificate};
use crate::numkern::{SymMat, Tolerance};

/// Rank-one expansion of a nonnegative diagonally dominant matrix:
///
/// ```text
/// M = Σ_{i<j} M_ij (e_i + e_j)(e_i + e_j)ᵀ + Σ_i (M_ii − Σ_{j≠i} M_ij) e_i e_iᵀ
/// ```
///
/// Pair columns come first in lexicographic (i, j) order, then the diagonal
/// residual columns. Terms with zero weight are omitted.
pub fn dd_factorize(m: &SymMat, tol: Tolerance) -> Result<NonnegFactor, FactorError> {
    let n = m.n();
    let thr = tol.threshold(m.max_abs());
    for i in 0..n {
        for j in (i + 1)..n {
            let v = m.get(i, j);
            if v < -thr {
                return Err(FactorError::NotNonneg { i, j, value: v });
            }
        }
    }
    let off = |i: usize, j: usize| m.get(i, j).max(0.0);
    let mut residual = Vec::with_capacity(n);
    for i in 0..n {
        let r = m.get(i, i) - (0..n).filter(|&j| j != i).map(|j| off(i, j)).sum::<f64>();
        if r < -thr {
            return Err(FactorError::NotDd { row: i, deficit: -r });
        }
        residual.push(r.max(0.0));
    }

    let mut cols = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = off(i, j);
            if w > 0.0 {
                let s = w.sqrt();
                let mut c = vec![0.0; n];
                c[i] = s;
                c[j] = s;
                cols.push(c);
            }
        }
    }
    for (i, r) in residual.iter().enumerate() {
        if *r > 0.0 {
            let mut c = vec![0.0; n];
            c[i] = r.sqrt();
            cols.push(c);
        }
    }
    NonnegFactor::new(n, cols)
}

/// Factorization of a positive diagonally dominant matrix of order n ≥ 3
/// with first column √μ·e, μ = min_ij M_ij, followed by the diagonally
/// dominant factorization of M − μJ. The first column is positive and the
/// factor has full rank, which certifies M ∈ int CS_n.
pub fn positive_dd_factorize(m: &SymMat, tol: Tolerance) -> Result<(NonnegFactor, InteriorCertificate), FactorError> {
    let n = m.n();
    if n < 3 {
        return Err(FactorError::OrderTooSmall { n, min: 3 });
    }
    let thr = tol.threshold(m.max_abs());
    let mu = m.min_entry();
    if mu <= thr {
        return Err(FactorError::NotPositive { min_entry: mu });
    }
    let shifted = m.sub(&SymMat::ones(n).scale(mu));
    let rest = dd_factorize(&shifted, tol)?;
    let first = NonnegFactor::new(n, vec![vec![mu.sqrt(); n]])?;
    let v = first.concat(&rest);
    // M − μJ is strictly diagonally dominant for n ≥ 3; this can only fail
    // when rounding swamps the margin
    let cert = cp_interior_certificate(&v, tol).ok_or(FactorError::InteriorNotCertified)?;
    Ok((v, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[f64]]) -> SymMat {
        SymMat::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 0.0).unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = sym(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let v = dd_factorize(&m, Tolerance::default()).unwrap();
        assert_eq!(v.columns(), &[vec![1.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(v.product(), m);
    }

    #[test]
    fn identity_and_ones() {
        let t = Tolerance::default();
        let v = dd_factorize(&SymMat::identity(3), t).unwrap();
        assert_eq!(v, NonnegFactor::identity(3));
        let j = dd_factorize(&SymMat::ones(2), t).unwrap();
        assert_eq!(j.columns(), &[vec![1.0, 1.0]]);
    }

    #[test]
    fn errors() {
        let t = Tolerance::default();
        let neg = sym(&[&[2.0, -1.0], &[-1.0, 2.0]]);
        assert!(matches!(
            dd_factorize(&neg, t),
            Err(FactorError::NotNonneg { i: 0, j: 1, .. })
        ));
        let weak = sym(&[&[1.0, 2.0], &[2.0, 5.0]]);
        assert!(matches!(dd_factorize(&weak, t), Err(FactorError::NotDd { row: 0, .. })));
    }

    #[test]
    fn positive_dd_examples() {
        let t = Tolerance::default();
        let m = sym(&[&[2.0, 1.0, 1.0], &[1.0, 2.0, 1.0], &[1.0, 1.0, 2.0]]);
        let (v, cert) = positive_dd_factorize(&m, t).unwrap();
        assert_eq!(v.p(), 4);
        assert_eq!(v.column(0), &[1.0, 1.0, 1.0]);
        assert_eq!(
            &v.columns()[1..],
            &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]
        );
        assert_eq!(cert.positive_column, 0);
        assert_eq!(cert.rank, 3);

        let m3 = sym(&[&[3.0, 1.0, 1.0], &[1.0, 3.0, 1.0], &[1.0, 1.0, 3.0]]);
        let (v, _) = positive_dd_factorize(&m3, t).unwrap();
        let r2 = 2f64.sqrt();
        assert_eq!(v.p(), 4);
        for k in 0..3 {
            assert!((v.column(k + 1)[k] - r2).abs() < 1e-15);
        }
        assert!(v.residual(&m3) < 1e-14);

        assert_eq!(
            positive_dd_factorize(&SymMat::ones(2), t).unwrap_err().tag(),
            "ORDER_TOO_SMALL"
        );
        assert_eq!(
            positive_dd_factorize(&SymMat::identity(3), t).unwrap_err().tag(),
            "NOT_POSITIVE"
        );
    }
}
