//! Exact standard quadratic programs by support enumeration.
//!
//! For min xᵀGx over the unit simplex, every minimizer with minimal support S
//! solves the bordered system
//!
//! ```text
//! [ G_SS  -1 ] [x_S]   [0]
//! [ 1ᵀ     0 ] [ λ ] = [1]
//! ```
//!
//! with x_S > 0. Enumerating all supports is 2ⁿ small solves, fine up to
//! n = 12.

use crate::numkern::{solve_dense, Mat, SymMat};

pub const MAX_ENUM_ORDER: usize = 12;

const PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct KktPoint {
    pub mask: u32,
    pub x: Vec<f64>,
    pub value: f64,
}

/// KKT points of xᵀGx on the relative interiors of the simplex faces, in
/// increasing mask order. Only solutions with all support coordinates above
/// `floor` are kept.
pub fn kkt_points(g: &SymMat, floor: f64) -> Vec<KktPoint> {
    let n = g.n();
    assert!(
        n <= MAX_ENUM_ORDER,
        "support enumeration is limited to n <= {MAX_ENUM_ORDER}"
    );
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let s = idx.len();
        let mut a = Mat::zeros(s + 1, s + 1);
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[(r, c)] = g.get(i, j);
            }
            a[(r, s)] = -1.0;
            a[(s, r)] = 1.0;
        }
        let mut b = vec![0.0; s + 1];
        b[s] = 1.0;
        let Some(sol) = solve_dense(&a, &b, PIVOT_TOL) else {
            continue;
        };
        if sol[..s].iter().any(|v| !(*v > floor)) {
            continue;
        }
        let mut x = vec![0.0; n];
        for (r, &i) in idx.iter().enumerate() {
            x[i] = sol[r];
        }
        let total: f64 = x.iter().sum();
        x.iter_mut().for_each(|v| *v /= total);
        let value = g.quad_form(&x);
        out.push(KktPoint { mask, x, value });
    }
    out
}

/// Global minimum of xᵀGx over the simplex and a minimizer.
pub fn stqp_min(g: &SymMat) -> (f64, Vec<f64>) {
    let mut best = (f64::INFINITY, Vec::new());
    for p in kkt_points(g, 0.0) {
        if p.value < best.0 {
            best = (p.value, p.x);
        }
    }
    // vertices always solve their 1×2 bordered system, so best is set
    best
}
