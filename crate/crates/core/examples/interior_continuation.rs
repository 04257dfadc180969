//! Pushing a factorization into the interior and following it: positify a
//! nonnegative factor, then track a perturbed target with Newton's method on
//! the square positive block.
//!
//!     cargo run --example interior_continuation

use copcone::factor::{factor_continuation, perturb_positify, NonnegFactor};
use copcone::numkern::Mat;
use copcone::Tolerance;

fn main() {
    let tol = Tolerance::default();
    let v0 = NonnegFactor::new(3, vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 2.0]]).unwrap();
    let p = perturb_positify(&v0, 0.2, tol).unwrap();
    println!(
        "delta = {:.6}, min entry {:.4}, residual {:.1e}",
        p.delta,
        p.factor.min_entry(),
        p.factor.residual(&p.matrix)
    );

    // split as [Vbar | Vtilde] with Vbar the positive square block
    let vbar = p.factor.to_mat();
    let vtilde = NonnegFactor::new(3, vec![vec![0.5, 0.0, 0.25]]).unwrap();
    let mut target = p.matrix.add(&vtilde.product());
    target.set(1, 2, target.get(1, 2) + 1e-3);
    target.set(0, 0, target.get(0, 0) - 1e-3);

    let c = factor_continuation(&vbar, &vtilde, &target, tol).unwrap();
    println!("Newton steps: {}", c.iterations);
    for (k, r) in c.residuals.iter().enumerate() {
        println!("  {k}: {r:.3e}");
    }
    let moved = Mat::from_fn(3, 3, |i, j| c.delta[i][j]);
    let block = vbar.add(&moved);
    println!(
        "|dV| = {:.3e}, min entry of the moved block {:.4}",
        moved.max_abs(),
        block.min_entry()
    );
}
