//! The Hill estimator of the tail index, the peaks-over-threshold competitor
//! of the block maxima MLE.

use crate::error::{Error, Result};
use crate::frechet::Sample;

/// Hill estimate together with the threshold it was computed over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillResult {
    pub alpha_hat: f64,
    /// Number of upper order statistics used.
    pub k_used: usize,
    /// The (k+1)-th largest sample value.
    pub threshold: f64,
}

/// Classical Hill estimator on the top-k log-spacings:
/// α̂ = [ (1/k) Σᵢ log(X₍ₙ₋ᵢ₊₁₎ / X₍ₙ₋ₖ₎) ]^{−1}.
///
/// Ties at the threshold are fine; only an all-tied top block is degenerate.
pub fn hill(sample: &Sample, k: usize) -> Result<HillResult> {
    let n = sample.len();
    if k < 1 || k > n - 1 {
        return Err(Error::argument(format!(
            "hill requires 1 <= k <= n-1, got k = {k} with n = {n}"
        )));
    }
    let mut values = sample.values().to_vec();
    // place the (k+1)-th largest at position n-k-1; larger values to its right
    let (_, threshold, upper) =
        values.select_nth_unstable_by(n - k - 1, |a, b| a.partial_cmp(b).unwrap());
    let threshold = *threshold;
    let log_t = threshold.ln();
    let mean_spacing: f64 = upper.iter().map(|x| x.ln() - log_t).sum::<f64>() / k as f64;
    if mean_spacing <= 0.0 {
        return Err(Error::DegenerateSample {
            k,
            value: threshold,
        });
    }
    Ok(HillResult {
        alpha_hat: 1.0 / mean_spacing,
        k_used: k,
        threshold,
    })
}
