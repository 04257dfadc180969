use super::{Mat, SymMat, Tolerance};

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition A = Q Λ Qᵀ with eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    /// Column k is the unit eigenvector for `values[k]`.
    pub vectors: Mat,
    /// False only if the sweep cap was hit, which indicates an internal fault.
    pub converged: bool,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }

    pub fn min_value(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    /// Q Λ Qᵀ.
    pub fn reconstruct(&self) -> SymMat {
        let n = self.values.len();
        SymMat::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)])
                .sum()
        })
    }
}

/// Cyclic-by-rows Jacobi eigensolver for symmetric matrices.
pub fn eig_sym(a: &SymMat) -> SymEigen {
    let n = a.n();
    let mut m = a.to_dense();
    let mut q = Mat::identity(n);
    let total = a.frobenius();
    let mut converged = n == 1 || total == 0.0;

    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut off = 0.0;
        for p in 0..n {
            for r in (p + 1)..n {
                off += 2.0 * m[(p, r)] * m[(p, r)];
            }
        }
        if off.sqrt() <= f64::EPSILON * 0.5 * total {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = m[(p, r)];
                if apr == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let arr = m[(r, r)];
                // skip entries already negligible relative to both diagonals
                if apr.abs() <= f64::EPSILON * 1e-3 * (app.abs() * arr.abs()).sqrt() {
                    m[(p, r)] = 0.0;
                    m[(r, p)] = 0.0;
                    continue;
                }
                let theta = (arr - app) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkr = m[(k, r)];
                    m[(k, p)] = c * mkp - s * mkr;
                    m[(k, r)] = s * mkp + c * mkr;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mrk = m[(r, k)];
                    m[(p, k)] = c * mpk - s * mrk;
                    m[(r, k)] = s * mpk + c * mrk;
                }
                m[(p, r)] = 0.0;
                m[(r, p)] = 0.0;
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].partial_cmp(&m[(i, i)]).unwrap().then(i.cmp(&j)));
    let values = order.iter().map(|&k| m[(k, k)]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| q[(i, order[j])]);
    SymEigen {
        values,
        vectors,
        converged,
    }
}

/// Number of eigenvalues with |λ| above the tolerance threshold, scaled by
/// the spectral radius.
pub fn num_rank(a: &SymMat, tol: Tolerance) -> usize {
    let e = eig_sym(a);
    let scale = e.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = tol.threshold(scale);
    e.values.iter().filter(|v| v.abs() > thr).count()
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone)]
pub struct PsdCheck {
    pub is_psd: bool,
    pub min_eigenvalue: f64,
    /// Unit vector w with wᵀ A w < 0 when `is_psd` is false.
    pub witness: Option<Vec<f64>>,
}

pub fn psd_check(a: &SymMat, tol: Tolerance) -> PsdCheck {
    let e = eig_sym(a);
    let lam = e.min_value();
    let thr = tol.threshold(a.max_abs());
    if lam >= -thr {
        return PsdCheck {
            is_psd: true,
            min_eigenvalue: lam,
            witness: None,
        };
    }
    let mut w = e.vector(a.n() - 1);
    // deterministic sign: first nonzero coordinate positive
    if let Some(first) = w.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            w.iter_mut().for_each(|v| *v = -*v);
        }
    }
    PsdCheck {
        is_psd: false,
        min_eigenvalue: lam,
        witness: Some(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horn() -> SymMat {
        let r = [
            [1.0, -1.0, 1.0, 1.0, -1.0],
            [-1.0, 1.0, -1.0, 1.0, 1.0],
            [1.0, -1.0, 1.0, -1.0, 1.0],
            [1.0, 1.0, -1.0, 1.0, -1.0],
            [-1.0, 1.0, 1.0, -1.0, 1.0],
        ];
        SymMat::from_fn(5, |i, j| r[i][j])
    }

    #[test]
    fn identity_spectrum() {
        let e = eig_sym(&SymMat::identity(3));
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        assert!(e.converged);
    }

    #[test]
    fn ones_spectrum() {
        let e = eig_sym(&SymMat::ones(2));
        assert!((e.values[0] - 2.0).abs() < 1e-15);
        assert!(e.values[1].abs() < 1e-15);
    }

    #[test]
    fn horn_spectrum_matches_circulant_formula() {
        // circulant with first row (1,-1,1,1,-1): λ_j = 1 - 2cos(2πj/5) + 2cos(4πj/5)
        let mut expected: Vec<f64> = (0..5)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / 5.0;
                1.0 - 2.0 * t.cos() + 2.0 * (2.0 * t).cos()
            })
            .collect();
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let e = eig_sym(&horn());
        for (a, b) in e.values.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
        assert!((e.values[0] - 3.2360679775).abs() < 1e-9);
        assert!((e.values[4] + 1.2360679775).abs() < 1e-9);
        assert!(e.reconstruct().max_abs_diff(&horn()) < 1e-13);
    }

    #[test]
    fn ranks() {
        let t = Tolerance::default();
        assert_eq!(num_rank(&horn(), t), 5);
        assert_eq!(num_rank(&SymMat::ones(5), t), 1);
        let e12 = SymMat::unit_pair(3, 0, 1);
        assert_eq!(num_rank(&e12, t), 2);
    }

    #[test]
    fn psd_witnesses() {
        let t = Tolerance::default();
        let h = horn();
        let c = psd_check(&h, t);
        assert!(!c.is_psd);
        let w = c.witness.unwrap();
        assert!(h.quad_form(&w) < 0.0);
        assert!((c.min_eigenvalue + 1.2360679775).abs() < 1e-9);

        assert!(psd_check(&SymMat::identity(4), t).is_psd);

        let neg = SymMat::unit_pair(2, 0, 1).scale(-1.0);
        let c = psd_check(&neg, t);
        let w = c.witness.unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((w[0] - r).abs() < 1e-14 && (w[1] - r).abs() < 1e-14);
        assert!((neg.quad_form(&[1.0, 1.0]) + 2.0).abs() < 1e-15);
    }
}
