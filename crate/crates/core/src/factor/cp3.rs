use super::{FactorError, NonnegFactor};
use crate::cones::is_dnn;
use crate::numkern::{SymMat, Tolerance};

/// Nonnegative factor with at most n columns of a doubly nonnegative matrix
/// of order n ≤ 3 (where DNN = CP).
///
/// Peels one column u = Y e_k / √Y_kk off the block. The Schur complement
/// on the other two indices is PSD, and for the k maximizing
/// Y_kk·Y_ij − Y_ik·Y_jk its off-diagonal entry is nonnegative, so the
/// remainder is a 2×2 DNN matrix with an explicit triangular factor.
pub fn cp3_factorize(y: &SymMat, tol: Tolerance) -> Result<NonnegFactor, FactorError> {
    let n = y.n();
    if n > 3 {
        return Err(FactorError::Shape(format!("order {n} exceeds 3")));
    }
    if !is_dnn(y, tol).is_in() {
        return Err(FactorError::NotDnn);
    }
    let scale = y.max_abs();
    let thr = tol.threshold(scale);
    // a PSD matrix has zero rows wherever the diagonal vanishes; a tiny but
    // positive diagonal can still carry off-diagonal mass of order √Y_ii, so
    // only rows that are negligible as a whole are dropped
    let row_max = |i: usize| (0..n).fold(0.0f64, |m, j| m.max(y.get(i, j).abs()));
    let active: Vec<usize> = (0..n).filter(|&i| y.get(i, i) > 0.0 && row_max(i) > thr).collect();
    let g = |a: usize, b: usize| y.get(active[a], active[b]).max(0.0);

    let mut local: Vec<Vec<f64>> = Vec::new();
    match active.len() {
        0 => {}
        1 => local.push(vec![g(0, 0).sqrt()]),
        2 => local.extend(two_by_two(g(0, 0), g(0, 1), g(1, 1))),
        _ => {
            let slack = |k: usize| {
                let (i, j) = others(k);
                g(k, k) * g(i, j) - g(i, k) * g(j, k)
            };
            let k = (0..3).fold(0, |b, k| if slack(k) > slack(b) { k } else { b });
            let (i, j) = others(k);
            let d = g(k, k).sqrt();
            let mut u = vec![0.0; 3];
            u[k] = d;
            u[i] = g(i, k) / d;
            u[j] = g(j, k) / d;
            local.push(u);
            let a = g(i, i) - g(i, k) * g(i, k) / g(k, k);
            let c = g(i, j) - g(i, k) * g(j, k) / g(k, k);
            let b = g(j, j) - g(j, k) * g(j, k) / g(k, k);
            for w in two_by_two(a.max(0.0), c.max(0.0), b.max(0.0)) {
                let mut col = vec![0.0; 3];
                col[i] = w[0];
                col[j] = w[1];
                local.push(col);
            }
        }
    }
    let cols = local
        .into_iter()
        .map(|c| {
            let mut full = vec![0.0; n];
            for (a, v) in c.into_iter().enumerate() {
                full[active[a]] = v;
            }
            full
        })
        .collect();
    let v = NonnegFactor::new(n, cols)?;
    debug_assert!(v.residual(y) <= 1e-9 * scale.max(1.0));
    Ok(v)
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// [[a, c], [c, b]] with a, b, c ≥ 0 and ab ≥ c².
fn two_by_two(a: f64, c: f64, b: f64) -> Vec<Vec<f64>> {
    if a <= 0.0 {
        return vec![vec![0.0, b.sqrt()]];
    }
    let r = a.sqrt();
    vec![vec![r, c / r], vec![0.0, (b - c * c / a).max(0.0).sqrt()]]
}
