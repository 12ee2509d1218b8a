//! Evaluate the closed-form asymptotic quantities of the block-maxima MLE:
//! Fisher information, sensitivity matrix, score-moment covariance, the
//! sandwich identity and the asymptotic bias vector.
//!
//!     cargo run --example asymptotic_calculator

use blockmax::asymptotics::{
    amse, bias_vector, fisher_info_inverse, sandwich_residual, score_moment_covariance,
    sensitivity_matrix,
};
use blockmax::frechet::FrechetParams;

fn main() -> Result<(), blockmax::Error> {
    let alpha0 = 1.0;
    let theta = FrechetParams::new(alpha0, 1.0)?;

    let inv = fisher_info_inverse(theta)?;
    println!("I^-1(1, 1):");
    for row in inv {
        println!("  [{:10.6} {:10.6}]", row[0], row[1]);
    }

    let m = sensitivity_matrix(alpha0)?;
    println!("M(1):");
    for row in m {
        println!("  [{:10.6} {:10.6} {:10.6}]", row[0], row[1], row[2]);
    }

    let s = score_moment_covariance(alpha0)?;
    println!("Sigma_Y(1):");
    for row in s {
        println!("  [{:10.6} {:10.6} {:10.6}]", row[0], row[1], row[2]);
    }

    // M Sigma_Y M^T recovers the inverse Fisher information exactly
    println!("sandwich residual: {:.2e}", sandwich_residual(alpha0)?);

    let b = bias_vector(alpha0, -1.0)?;
    println!("asymptotic bias direction B(1, -1): [{:.6}, {:.6}]", b[0], b[1]);

    // decompose the asymptotic MSE of alpha_hat at a concrete design point:
    // n = 1000 observations in blocks of r = 6, |Cauchy| second order data
    let a_at_ar = -1.0 / (1.0 + 2.0 * 6.0);
    let parts = amse(alpha0, -1.0, a_at_ar, 6, 1000)?;
    println!(
        "AMSE at r = 6, n = 1000: bias^2 {:.5e} + variance {:.5e} = {:.5e}",
        parts.abias2, parts.avar, parts.amse
    );
    Ok(())
}
