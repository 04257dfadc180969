//! The Horn matrix: copositive, not PSD, not nonnegative, full rank, with a
//! zero of the quadratic form at the midpoint of each cyclic edge.
//!
//!     cargo run --example horn_matrix

use copcone::cones::{copositive_boundary_zeros, is_copositive, is_nonneg, is_psd};
use copcone::extremal::horn_matrix;
use copcone::numkern::num_rank;
use copcone::Tolerance;

fn main() {
    let tol = Tolerance::default();
    let h = horn_matrix();
    println!("{h:?}");

    for v in [is_copositive(&h, tol, 40), is_psd(&h, tol), is_nonneg(&h, tol)] {
        println!("{:<11} {}", v.cone.tag(), v.answer.tag());
    }
    println!("rank        {}", num_rank(&h, tol));

    println!("zeros of x'Hx on the simplex:");
    for x in copositive_boundary_zeros(&h, tol).expect("H is copositive") {
        println!("  {x:?}  value {:.1e}", h.quad_form(&x));
    }
}
