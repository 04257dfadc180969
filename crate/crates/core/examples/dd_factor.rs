//! Factorizations of diagonally dominant nonnegative matrices, and the
//! interior certificate for positive ones.
//!
//!     cargo run --example dd_factor

use copcone::factor::{dd_factorize, positive_dd_factorize};
use copcone::{SymMat, Tolerance};

fn main() {
    let tol = Tolerance::default();
    let m = SymMat::from_rows(&[vec![4.0, 1.0, 2.0], vec![1.0, 3.0, 0.5], vec![2.0, 0.5, 3.0]], 0.0).unwrap();

    let v = dd_factorize(&m, tol).unwrap();
    println!("dd factor: {} columns, residual {:.1e}", v.p(), v.residual(&m));
    for c in v.columns() {
        println!("  {c:?}");
    }

    let (w, cert) = positive_dd_factorize(&m, tol).unwrap();
    println!(
        "positive dd factor: {} columns, residual {:.1e}, column {} positive, rank {}",
        w.p(),
        w.residual(&m),
        cert.positive_column,
        cert.rank
    );

    // order two is excluded: J_2 is on the boundary
    let e = positive_dd_factorize(&SymMat::ones(2), tol).unwrap_err();
    println!("J_2: {}", e.tag());
}
