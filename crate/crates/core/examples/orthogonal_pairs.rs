//! Structure of an orthogonal pair (M completely positive, A copositive):
//! the columns of M and A are orthogonal, the rescaled A is anti-diagonally
//! dominant, and Ae_i is annihilated by M when i is in every factor support.
//!
//!     cargo run --example orthogonal_pairs

use copcone::cones::copositive_boundary_zeros;
use copcone::extremal::{anti_dd_check, horn_matrix, orth_column_check, orth_nullspace_check};
use copcone::factor::{horn_generators, NonnegFactor};
use copcone::Tolerance;

fn main() {
    let tol = Tolerance::default();
    let a = horn_matrix();
    // M is assembled from zeros of x'Ax, so <M, A> = 0
    let zeros = copositive_boundary_zeros(&a, tol).unwrap();
    let v = NonnegFactor::new(5, zeros).unwrap();
    let m = v.product();

    let c = orth_column_check(&m, &a, tol).unwrap();
    println!(
        "<M, A> = {:.1e}, max |(MA)_ii| = {:.1e}: {:?}",
        c.inner, c.defect, c.check
    );

    let d = anti_dd_check(&m, &a, tol).unwrap();
    println!("anti-dd rows: {:?}", d.rows);

    // every zero has support of size two, so the nullspace check never applies
    let skipped = (0..5).filter(|&i| orth_nullspace_check(&m, &a, &v, i, tol).unwrap().norm.is_none());
    println!("nullspace check skipped at {} of 5 indices", skipped.count());

    // padded with a zero row, and every column touching index 5
    let a6 = a.pad_zeros(1);
    let g = horn_generators();
    let cols: Vec<Vec<f64>> = (0..5)
        .map(|i| (0..6).map(|k| g[i][k] + g[(i + 1) % 5][k] + g[5][k]).collect())
        .collect();
    let v6 = NonnegFactor::new(6, cols).unwrap();
    let m6 = v6.product();
    for i in 0..6 {
        let r = orth_nullspace_check(&m6, &a6, &v6, i, tol).unwrap();
        println!("order 6, index {i}: {:?} {:?}", r.check, r.norm);
    }
}
