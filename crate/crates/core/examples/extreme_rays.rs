//! Recognizing extreme copositive matrices up to scaling and permutation.
//!
//!     cargo run --example extreme_rays

use copcone::extremal::{classify_rank12, e12_base, horn_matrix, horn_orbit_recognize, OrbitWitness};
use copcone::{SymMat, Tolerance};

fn main() {
    let tol = Tolerance::default();
    let g = OrbitWitness {
        d: vec![2.0, 0.5, 1.0, 3.0, 0.25],
        perm: vec![3, 0, 4, 2, 1],
    };
    let a = g.apply(&horn_matrix());
    let w = horn_orbit_recognize(&a, tol).expect("in the Horn orbit");
    println!("recovered d = {:?}, perm = {:?}", w.d, w.perm);
    println!("round trip error {:.1e}", w.apply(&horn_matrix()).max_abs_diff(&a));

    let e = OrbitWitness {
        d: vec![1.0, 2.0, 1.0, 0.5],
        perm: vec![2, 3, 1, 0],
    }
    .apply(&e12_base(4));
    let x = [1.0, 2.0, 0.0, 3.0];
    for (name, m) in [("E12 orbit", e), ("x x^T", SymMat::outer(&x)), ("Horn orbit", a)] {
        let c = classify_rank12(&m, tol).unwrap();
        println!("{name:<11} -> {:?} (rank {})", c.tag, c.rank);
    }

    // the identity is copositive but not extreme; rank 3 is out of reach
    let c = classify_rank12(&SymMat::identity(3), tol).unwrap();
    println!("{:<11} -> {:?}", "I_3", c.tag);
}
