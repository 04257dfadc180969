//! Order-six matrices orthogonal to H (+) 0 factor with at most 15 columns:
//! each column of a factor lies in one of five three-generator cones, and
//! each cone contributes at most three columns.
//!
//!     cargo run --example horn6_factor

use copcone::extremal::horn_matrix;
use copcone::factor::{horn_generators, horn_orthogonal_factorize, NonnegFactor};
use copcone::Tolerance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let g = horn_generators();
    let a = horn_matrix().pad_zeros(1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // 24 random columns, each a positive mix of g_i, g_{i+1}, g_5
    let cols: Vec<Vec<f64>> = (0..24)
        .map(|_| {
            let i = rng.gen_range(0..5);
            let c: [f64; 3] = rng.gen();
            (0..6)
                .map(|k| c[0] * g[i][k] + c[1] * g[(i + 1) % 5][k] + c[2] * g[5][k])
                .collect()
        })
        .collect();
    let v = NonnegFactor::new(6, cols).unwrap();
    let m = v.product();
    println!("input factor: {} columns, <M, H+0> = {:.1e}", v.p(), m.inner(&a));

    let h = horn_orthogonal_factorize(&v, tol).unwrap();
    println!(
        "regrouped:    {} columns, residual {:.1e}",
        h.factor.p(),
        h.factor.residual(&m)
    );
    println!("cone of each column: {:?}", h.cone_of_column);
}
