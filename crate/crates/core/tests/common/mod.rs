//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls into the library's numerics.

#![allow(dead_code)]

use copcone::factor::NonnegFactor;
use copcone::SymMat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn horn() -> SymMat {
    let r = [1.0, -1.0, 1.0, 1.0, -1.0];
    SymMat::from_fn(5, |i, j| r[(j + 5 - i) % 5])
}

fn dense(a: &SymMat) -> Vec<Vec<f64>> {
    a.to_rows()
}

fn quad(a: &[Vec<f64>], x: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        if x[i] == 0.0 {
            continue;
        }
        let mut r = 0.0;
        for j in 0..x.len() {
            r += a[i][j] * x[j];
        }
        s += x[i] * r;
    }
    s
}

/// Euclidean projection onto the unit simplex (sort and threshold).
fn project_simplex(y: &[f64]) -> Vec<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut css = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        css += uk;
        let t = (css - 1.0) / (k + 1) as f64;
        if uk - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

fn polish(a: &[Vec<f64>], x0: &[f64]) -> f64 {
    let n = x0.len();
    let lip: f64 = 2.0 * a.iter().flatten().map(|v| v.abs()).sum::<f64>().max(1e-300);
    let step = 1.0 / lip;
    let mut x = x0.to_vec();
    let mut best = quad(a, &x);
    for _ in 0..3000 {
        let g: Vec<f64> = (0..n)
            .map(|i| 2.0 * (0..n).map(|j| a[i][j] * x[j]).sum::<f64>())
            .collect();
        let y: Vec<f64> = (0..n).map(|i| x[i] - step * g[i]).collect();
        x = project_simplex(&y);
        best = best.min(quad(a, &x));
    }
    best
}

fn grid_rec(a: &[Vec<f64>], x: &mut Vec<f64>, left: usize, steps: usize, top: &mut Vec<(f64, Vec<f64>)>) {
    let k = x.len();
    let n = a.len();
    if k == n - 1 {
        x.push(left as f64 / steps as f64);
        let v = quad(a, x);
        if top.len() < 8 || v < top[top.len() - 1].0 {
            let pos = top.iter().position(|(w, _)| v < *w).unwrap_or(top.len());
            top.insert(pos, (v, x.clone()));
            top.truncate(8);
        }
        x.pop();
        return;
    }
    for c in 0..=left {
        x.push(c as f64 / steps as f64);
        grid_rec(a, x, left - c, steps, top);
        x.pop();
    }
}

/// min of xᵀAx over the unit simplex: grid of step 1/60, then projected
/// gradient from the eight best grid points.
pub fn simplex_min_oracle(a: &SymMat) -> f64 {
    let d = dense(a);
    let mut top = Vec::new();
    grid_rec(&d, &mut Vec::new(), 60, 60, &mut top);
    top.iter()
        .map(|(v, x)| v.min(polish(&d, x)))
        .fold(f64::INFINITY, f64::min)
}

/// Numerical rank by Gaussian elimination with full pivoting.
pub fn gauss_rank(rows: &[Vec<f64>], rel: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    let mut rank = 0;
    let mut used_col = vec![false; c];
    let mut used_row = vec![false; r];
    loop {
        let mut best = (0.0, 0, 0);
        for i in 0..r {
            for j in 0..c {
                if !used_row[i] && !used_col[j] && m[i][j].abs() > best.0 {
                    best = (m[i][j].abs(), i, j);
                }
            }
        }
        if best.0 <= rel * scale.max(1e-300) {
            return rank;
        }
        let (_, pi, pj) = best;
        used_row[pi] = true;
        used_col[pj] = true;
        rank += 1;
        for i in 0..r {
            if !used_row[i] {
                let f = m[i][pj] / m[pi][pj];
                for j in 0..c {
                    m[i][j] -= f * m[pi][j];
                }
            }
        }
    }
}

/// max |VVᵀ − M| recomputed from the columns.
pub fn residual(v: &NonnegFactor, m: &SymMat) -> f64 {
    let n = m.n();
    let cols = v.columns();
    let mut r = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let s: f64 = cols.iter().map(|c| c[i] * c[j]).sum();
            r = r.max((s - m.get(i, j)).abs());
        }
    }
    r
}

pub fn min_entry(v: &NonnegFactor) -> f64 {
    v.columns().iter().flatten().copied().fold(f64::INFINITY, f64::min)
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SymMat {
    SymMat::from_fn(n, |_, _| rng.gen_range(lo..hi))
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Nonnegative diagonally dominant matrix; `positive` forces all
/// off-diagonal entries positive, `slack` is the max diagonal excess.
pub fn random_dd(rng: &mut ChaCha8Rng, n: usize, positive: bool, slack: f64) -> SymMat {
    let mut m = SymMat::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = if positive {
                rng.gen_range(0.05..1.0)
            } else if rng.gen_bool(0.3) {
                0.0
            } else {
                rng.gen_range(0.0..1.0)
            };
            m.set(i, j, v);
        }
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j)).sum();
        let extra = if rng.gen_bool(0.2) {
            0.0
        } else {
            rng.gen_range(0.0..slack)
        };
        m.set(i, i, off + extra);
    }
    m
}

/// Connectivity of the graph with edges where M_ij > 0.
pub fn irreducible(m: &SymMat) -> bool {
    let n = m.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && m.get(i, j) > 0.0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|s| *s)
}

/// Generators of the Horn-orthogonal cones in R^6 (0-based).
pub fn horn_gens() -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; 6]; 6];
    for k in 0..5 {
        g[k][k] = 1.0;
        g[k][(k + 1) % 5] = 1.0;
    }
    g[5][5] = 1.0;
    g
}

/// V = WX with each column of X supported on {i, i+1 mod 5, 5}. With
/// `tail_prob` = 1 every column touches index 5.
pub fn random_horn_orth_factor(rng: &mut ChaCha8Rng, tail_prob: f64) -> NonnegFactor {
    let g = horn_gens();
    let p = rng.gen_range(1..=24);
    let cols: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            let i = rng.gen_range(0..5);
            let a = rng.gen_range(0.0..1.0);
            let b = rng.gen_range(0.0..1.0);
            let c = if rng.gen_bool(tail_prob) {
                rng.gen_range(0.1..1.0)
            } else {
                0.0
            };
            (0..6)
                .map(|k| a * g[i][k] + b * g[(i + 1) % 5][k] + c * g[5][k])
                .collect()
        })
        .collect();
    NonnegFactor::new(6, cols).unwrap()
}
