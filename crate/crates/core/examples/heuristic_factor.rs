//! Searching for a short factor by alternating projections, with seeded
//! restarts.
//!
//!     cargo run --release --example heuristic_factor

use copcone::factor::{heuristic_min_factor, HeuristicOptions, HeuristicOutcome, NonnegFactor};
use copcone::Tolerance;

fn main() {
    let tol = Tolerance::default();
    let v = NonnegFactor::new(
        4,
        vec![
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 1.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![1.0, 1.0, 1.0, 1.0],
            vec![0.5, 0.0, 0.5, 0.0],
        ],
    )
    .unwrap();
    let m = v.product();
    for p in [3, 4, 5, 6] {
        let opts = HeuristicOptions {
            seed: 11,
            ..Default::default()
        };
        match heuristic_min_factor(&m, p, &opts, tol) {
            HeuristicOutcome::Success {
                factor,
                restart,
                iterations,
                residual,
            } => println!(
                "p = {p}: found {} columns after restart {restart}, {iterations} iterations, residual {residual:.1e}",
                factor.p()
            ),
            HeuristicOutcome::Failed { reason, best_residual } => {
                println!("p = {p}: {reason} (best residual {best_residual:.1e})")
            }
        }
    }
}
