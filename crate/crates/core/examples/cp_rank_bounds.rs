//! The cp-rank bound calculus: the p_n table, and the interval for a matrix
//! with a factor and a copositive witness orthogonal to it.
//!
//!     cargo run --example cp_rank_bounds

use copcone::bounds::{babe, cp_rank_interval, djl_lower, known_pn_interval};
use copcone::extremal::horn_matrix;
use copcone::factor::{horn_generators, NonnegFactor};
use copcone::Tolerance;

fn main() {
    println!(" n   d_n   b_n   p_n");
    for n in 2..=9 {
        let (lo, hi) = known_pn_interval(n);
        let pn = if lo == hi {
            lo.to_string()
        } else {
            format!("[{lo}, {hi}]")
        };
        println!("{n:2}  {:4}  {:4}   {pn}", djl_lower(n), babe(n));
    }

    let tol = Tolerance::default();
    let g = horn_generators();
    // all ten pairs {g_i, g_i+1} + g_5 mixes; positive, rank 6
    let cols: Vec<Vec<f64>> = (0..10)
        .map(|j| {
            let i = j % 5;
            let (a, b) = if j < 5 { (1.0, 0.5) } else { (0.5, 2.0) };
            (0..6)
                .map(|k| a * g[i][k] + b * g[(i + 1) % 5][k] + 0.5 * g[5][k])
                .collect()
        })
        .collect();
    let v = NonnegFactor::new(6, cols).unwrap();
    let m = v.product();
    let w = horn_matrix().pad_zeros(1);

    let r = cp_rank_interval(&m, None, &[w.clone()], tol).unwrap();
    println!("\nwitness only: [{}, {}]", r.best_interval[0], r.best_interval[1]);
    for b in &r.uppers {
        let rule = serde_json::to_value(b.rule).unwrap();
        println!("  {:>2}  {:<9} {}", b.value, rule.as_str().unwrap(), b.witness);
    }
    let r = cp_rank_interval(&m, Some(&v), &[w], tol).unwrap();
    println!("with the factor: [{}, {}]", r.best_interval[0], r.best_interval[1]);
}
