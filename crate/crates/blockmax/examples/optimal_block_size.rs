//! Trade off asymptotic bias against variance to pick the block size for
//! |Cauchy| data, and compare with the AMSE curve over a grid.
//!
//!     cargo run --example optimal_block_size

use blockmax::asymptotics::{amse, cauchy_second_order, optimal_block_size_cauchy};

fn main() -> Result<(), blockmax::Error> {
    let n = 1000;
    let spec = cauchy_second_order();

    println!("{:>3} {:>5} {:>12} {:>12} {:>12}", "r", "k", "abias^2", "avar", "amse");
    for r in [2usize, 4, 6, 8, 12, 20, 40] {
        let a_at_ar = spec.a(spec.norming(r as f64));
        let parts = amse(1.0, -1.0, a_at_ar, r, n)?;
        println!(
            "{r:>3} {:>5} {:>12.5e} {:>12.5e} {:>12.5e}",
            n / r,
            parts.abias2,
            parts.avar,
            parts.amse
        );
    }

    let (r, k) = optimal_block_size_cauchy(n)?;
    println!("\noptimal block size at n = {n}: r = {r} (k = {k})");
    Ok(())
}
