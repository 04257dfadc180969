//! Copositivity by simplicial partition: certificates for a few matrices
//! near the boundary of the cone.
//!
//!     cargo run --release --example copositivity

use std::time::Instant;

use copcone::cones::{is_copositive, is_copositive_with, Certificate, PartitionOptions};
use copcone::extremal::{horn_matrix, OrbitWitness};
use copcone::{SymMat, Tolerance};

fn show(label: &str, a: &SymMat, tol: Tolerance) {
    let t = Instant::now();
    let v = is_copositive(a, tol, 40);
    let took = t.elapsed();
    let detail = match &v.certificate {
        Certificate::MinimumBound { lower_bound, cells, .. } => format!("min >= {lower_bound:.3e} over {cells} cells"),
        Certificate::ViolationVector { x, value } => format!("x'Ax = {value:.3e} at {x:.4?}"),
        Certificate::NegativeEntry { i, j, value } => format!("A[{i}][{j}] = {value}"),
        Certificate::Unresolved { unresolved_cells, .. } => format!("{unresolved_cells} cells unresolved"),
        c => format!("{c:?}"),
    };
    println!("{label:<26} {:<9} {detail}  ({took:.2?})", v.answer.tag());
}

fn main() {
    let tol = Tolerance::default();
    let h = horn_matrix();
    show("H", &h, tol);

    // the cone is invariant under D P^T . P D
    let g = OrbitWitness {
        d: vec![1.0, 3.0, 0.2, 2.0, 0.7],
        perm: vec![2, 4, 0, 1, 3],
    };
    show("scaled, permuted H", &g.apply(&h), tol);

    // pushing an entry of H down leaves the cone
    let mut bent = h.clone();
    bent.set(0, 2, 1.0 - 1e-3);
    bent.set(0, 1, -1.0 - 1e-3);
    show("H with A01 lowered", &bent, tol);

    show("H + 1e-6 I", &h.add(&SymMat::identity(5).scale(1e-6)), tol);
    show("-E12 (negative entry)", &SymMat::unit_pair(3, 0, 1).scale(-1.0), tol);

    // with exact leaves switched off a shallow depth cap leaves cells open
    let opts = PartitionOptions {
        max_depth: 3,
        exact_leaves: false,
        ..Default::default()
    };
    let v = is_copositive_with(&g.apply(&h), tol, opts);
    println!("{:<26} {}", "same, depth 3, no leaves", v.answer.tag());
}
