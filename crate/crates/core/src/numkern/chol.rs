use super::{Mat, NumError, SymMat, Tolerance};

/// Rank-revealing root A ≈ L Lᵀ with L of shape n×r.
#[derive(Debug, Clone)]
pub struct PivotedCholesky {
    pub factor: Mat,
    /// Pivot order: `pivots[k]` is the row eliminated at step k.
    pub pivots: Vec<usize>,
}

impl PivotedCholesky {
    pub fn rank(&self) -> usize {
        self.factor.cols()
    }
}

/// Cholesky with complete (diagonal) pivoting. Stops once the largest
/// remaining Schur diagonal is below the tolerance threshold scaled by the
/// largest diagonal of `a`.
pub fn pivoted_cholesky(a: &SymMat, tol: Tolerance) -> Result<PivotedCholesky, NumError> {
    let n = a.n();
    let scale = a.diagonal().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = tol.threshold(scale);
    let mut s = a.to_dense();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut pivots = Vec::new();
    let mut done = vec![false; n];

    for _ in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let d = s[(i, i)];
            if d < -thr {
                return Err(NumError::NotPsd { min_pivot: d });
            }
            if best.map_or(true, |(_, b)| d > b) {
                best = Some((i, d));
            }
        }
        let Some((p, d)) = best else { break };
        if d <= thr {
            break;
        }
        let root = d.sqrt();
        let mut col = vec![0.0; n];
        for i in 0..n {
            if !done[i] {
                col[i] = s[(i, p)] / root;
            }
        }
        col[p] = root;
        done[p] = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            for j in 0..n {
                if done[j] {
                    continue;
                }
                s[(i, j)] -= col[i] * col[j];
            }
        }
        pivots.push(p);
        cols.push(col);
    }
    Ok(PivotedCholesky {
        factor: Mat::from_columns(n, &cols),
        pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_rank_deficient_psd() {
        let v = Mat::from_fn(4, 2, |i, j| (i + 2 * j + 1) as f64);
        let a = v.gram_outer();
        let c = pivoted_cholesky(&a, Tolerance::default()).unwrap();
        assert_eq!(c.rank(), 2);
        assert!(c.factor.gram_outer().max_abs_diff(&a) < 1e-10);
    }

    #[test]
    fn rejects_indefinite() {
        let a = SymMat::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]], 0.0).unwrap();
        assert!(pivoted_cholesky(&a, Tolerance::default()).is_err());
    }
}
