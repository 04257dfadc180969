use super::dense::{dot, norm2};
use super::Mat;

/// Thin singular value decomposition A = U diag(σ) Vᵀ, σ descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Mat,
    pub sigma: Vec<f64>,
    pub v: Mat,
}

impl Svd {
    pub fn min_sigma(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> Mat {
        let k = self.sigma.len();
        Mat::from_fn(self.u.rows(), self.v.rows(), |i, j| {
            (0..k).map(|t| self.u[(i, t)] * self.sigma[t] * self.v[(j, t)]).sum()
        })
    }
}

/// One-sided (Hestenes) Jacobi SVD. U is completed to orthonormal columns
/// even when A is rank deficient.
pub fn svd(a: &Mat) -> Svd {
    if a.rows() < a.cols() {
        let t = svd(&a.transpose());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let m = a.rows();
    let n = a.cols();
    let mut w = a.columns();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let x = w[p][i];
                    let y = w[q][i];
                    w[p][i] = c * x - s * y;
                    w[q][i] = s * x + c * y;
                }
                for i in 0..n {
                    let x = v[p][i];
                    let y = v[q][i];
                    v[p][i] = c * x - s * y;
                    v[q][i] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sig: Vec<(f64, usize)> = w.iter().enumerate().map(|(j, c)| (norm2(c), j)).collect();
    sig.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let smax = sig.first().map_or(0.0, |s| s.0);

    let mut ucols: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut sigma = Vec::with_capacity(n);
    let mut vcols = Vec::with_capacity(n);
    for &(s, j) in &sig {
        sigma.push(s);
        vcols.push(v[j].clone());
        if s > smax * 1e-14 && s > 0.0 {
            ucols.push(w[j].iter().map(|x| x / s).collect());
        } else {
            ucols.push(vec![0.0; m]);
        }
    }
    // complete degenerate columns of U to an orthonormal set
    for k in 0..n {
        if norm2(&ucols[k]) > 0.5 {
            continue;
        }
        for e in 0..m {
            let mut cand = vec![0.0; m];
            cand[e] = 1.0;
            for _ in 0..2 {
                for (l, u) in ucols.iter().enumerate() {
                    if l == k || norm2(u) < 0.5 {
                        continue;
                    }
                    let d = dot(&cand, u);
                    for i in 0..m {
                        cand[i] -= d * u[i];
                    }
                }
            }
            let nn = norm2(&cand);
            if nn > 1e-6 {
                ucols[k] = cand.iter().map(|x| x / nn).collect();
                break;
            }
        }
    }
    Svd {
        u: Mat::from_columns(m, &ucols),
        sigma,
        v: Mat::from_columns(n, &vcols),
    }
}

/// Orthogonal polar factor U Vᵀ of a square matrix: the orthogonal Q
/// closest to `a` in Frobenius norm.
pub fn polar_orthogonal(a: &Mat) -> Mat {
    assert_eq!(a.rows(), a.cols(), "square matrix required");
    let s = svd(a);
    s.u.matmul(&s.v.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_rectangular() {
        let a = Mat::from_fn(4, 3, |i, j| ((i * 7 + j * 3) % 5) as f64 - 1.5);
        let s = svd(&a);
        assert!(s.reconstruct().sub(&a).max_abs() < 1e-12);
        let utu = s.u.transpose().matmul(&s.u);
        assert!(utu.sub(&Mat::identity(3)).max_abs() < 1e-12);
        for w in s.sigma.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let wide = a.transpose();
        let st = svd(&wide);
        assert!(st.reconstruct().sub(&wide).max_abs() < 1e-12);
    }

    #[test]
    fn polar_of_zero_is_orthogonal() {
        let q = polar_orthogonal(&Mat::zeros(3, 3));
        let qtq = q.transpose().matmul(&q);
        assert!(qtq.sub(&Mat::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_u_is_completed() {
        let a = Mat::from_fn(3, 3, |i, _| (i + 1) as f64);
        let s = svd(&a);
        let utu = s.u.transpose().matmul(&s.u);
        assert!(utu.sub(&Mat::identity(3)).max_abs() < 1e-10);
        assert!(s.reconstruct().sub(&a).max_abs() < 1e-12);
    }
}
