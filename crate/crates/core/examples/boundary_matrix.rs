//! Stepping from the interior to the boundary along -e_n e_n^T. For n = 3
//! complete positivity is double nonnegativity, so the exit point is the
//! Schur complement, and a factor of the boundary matrix plus one column
//! sqrt(delta) e_n factors the interior one.
//!
//!     cargo run --example boundary_matrix

use copcone::cones::{cp_interior_certificate, is_dnn};
use copcone::factor::{cp3_factorize, NonnegFactor};
use copcone::{SymMat, Tolerance};

fn main() {
    let tol = Tolerance::default();
    let mbar = SymMat::from_rows(&[vec![2.0, 1.0, 1.0], vec![1.0, 2.0, 1.0], vec![1.0, 1.0, 2.0]], 0.0).unwrap();

    // M_33 - m^T B^-1 m with B the leading 2x2 block
    let (b00, b01, b11) = (mbar.get(0, 0), mbar.get(0, 1), mbar.get(1, 1));
    let (m0, m1) = (mbar.get(0, 2), mbar.get(1, 2));
    let det = b00 * b11 - b01 * b01;
    let quad = (b11 * m0 * m0 - 2.0 * b01 * m0 * m1 + b00 * m1 * m1) / det;
    let delta = (mbar.get(2, 2) - quad).min(mbar.get(2, 2));
    let mut m = mbar.clone();
    m.set(2, 2, mbar.get(2, 2) - delta);
    println!("delta = {delta}, boundary M:\n{m:?}");

    let v = cp3_factorize(&m, tol).unwrap();
    println!("cp3 factor of M: {} columns, residual {:.1e}", v.p(), v.residual(&m));
    println!("M on the boundary: min eigenvalue {:?}", is_dnn(&m, tol).certificate);

    let mut cols = v.columns().to_vec();
    cols.push(vec![0.0, 0.0, delta.sqrt()]);
    let w = NonnegFactor::new(3, cols).unwrap();
    println!("factor of Mbar: {} columns, residual {:.1e}", w.p(), w.residual(&mbar));
    println!(
        "interior certificate for Mbar: {}",
        cp_interior_certificate(&w, tol).is_some()
    );
}
