//! The two-parameter Fréchet distribution: density, likelihood, scores, the
//! profile estimating function in the shape parameter, and closed-form
//! population moments.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::special;

/// Shape and scale of a Fréchet distribution, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrechetParams {
    alpha: f64,
    sigma: f64,
}

impl FrechetParams {
    pub fn new(alpha: f64, sigma: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain(format!("shape must be positive, got {alpha}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("scale must be positive, got {sigma}")));
        }
        Ok(FrechetParams { alpha, sigma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A sample of strictly positive finite reals (block maxima or raw data).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("sample must be nonempty"));
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!(
                    "sample value at index {i} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Sample { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// The sample with every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Sample::new(self.values.iter().map(|v| c * v).collect())
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("argument must be positive, got {x}")));
    }
    Ok(())
}

/// Cumulative distribution function G(x) = exp{−(x/σ)^{−α}}.
///
/// Returns 0 for x ≤ 0 (support convention).
pub fn cdf(theta: FrechetParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (-(x / theta.sigma).powf(-theta.alpha)).exp()
}

/// Probability density (α/σ)·exp{−(x/σ)^{−α}}·(x/σ)^{−α−1}.
pub fn pdf(theta: FrechetParams, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(log_density(theta, x).exp())
}

fn log_density(theta: FrechetParams, x: f64) -> f64 {
    let z = x / theta.sigma;
    let lz = z.ln();
    (theta.alpha / theta.sigma).ln() - (-theta.alpha * lz).exp() - (theta.alpha + 1.0) * lz
}

/// Log-likelihood L(θ|x) = Σᵢ ℓ_θ(xᵢ).
pub fn log_likelihood(theta: FrechetParams, sample: &Sample) -> f64 {
    sample.values().iter().map(|&x| log_density(theta, x)).sum()
}

/// Score (∂ℓ/∂α, ∂ℓ/∂σ) at a single observation.
pub fn score(theta: FrechetParams, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    let z = x / theta.sigma;
    let lz = z.ln();
    let za = (-theta.alpha * lz).exp(); // (x/σ)^{−α}
    let d_alpha = 1.0 / theta.alpha + (za - 1.0) * lz;
    let d_sigma = (1.0 - za) * theta.alpha / theta.sigma;
    Ok((d_alpha, d_sigma))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("shape must be positive, got {alpha}")));
    }
    Ok(())
}

/// Weights (xᵢ/x_min)^{−α} together with the shifted logs log xᵢ − log x_min.
///
/// All weights lie in (0, 1], so arbitrarily large α never overflows.
fn rescaled_weights(alpha: f64, sample: &Sample) -> (Vec<f64>, Vec<f64>, f64) {
    let lmin = sample.min().ln();
    let shifted: Vec<f64> = sample.values().iter().map(|&x| x.ln() - lmin).collect();
    let weights: Vec<f64> = shifted.iter().map(|&l| (-alpha * l).exp()).collect();
    (weights, shifted, lmin)
}

/// The profile estimating function
/// Ψ_k(α|x) = 1/α + (Σ xᵢ^{−α} log xᵢ)/(Σ xᵢ^{−α}) − (1/k)Σ log xᵢ.
///
/// Its unique zero over α > 0 is the maximum likelihood shape estimate.
pub fn psi_k(alpha: f64, sample: &Sample) -> Result<f64> {
    check_alpha(alpha)?;
    let (weights, shifted, _) = rescaled_weights(alpha, sample);
    let wsum: f64 = weights.iter().sum();
    let wl: f64 = weights.iter().zip(&shifted).map(|(w, l)| w * l).sum();
    let mean_l: f64 = shifted.iter().sum::<f64>() / shifted.len() as f64;
    // the log x_min offset cancels between the ratio and the mean
    Ok(1.0 / alpha + wl / wsum - mean_l)
}

/// Derivative dΨ_k/dα = −1/α² − (weighted variance of log xᵢ), always ≤ −1/α².
pub fn psi_k_slope(alpha: f64, sample: &Sample) -> Result<f64> {
    check_alpha(alpha)?;
    let (weights, shifted, _) = rescaled_weights(alpha, sample);
    let wsum: f64 = weights.iter().sum();
    let mean = weights.iter().zip(&shifted).map(|(w, l)| w * l).sum::<f64>() / wsum;
    let var = weights
        .iter()
        .zip(&shifted)
        .map(|(w, l)| w * (l - mean) * (l - mean))
        .sum::<f64>()
        / wsum;
    Ok(-1.0 / (alpha * alpha) - var)
}

/// Profile scale σ(α|x) = ((1/k)Σ xᵢ^{−α})^{−1/α}, the likelihood-maximizing
/// scale for fixed shape.
pub fn profile_sigma(alpha: f64, sample: &Sample) -> Result<f64> {
    check_alpha(alpha)?;
    let (weights, _, _) = rescaled_weights(alpha, sample);
    let mean_w: f64 = weights.iter().sum::<f64>() / weights.len() as f64;
    Ok(sample.min() * mean_w.powf(-1.0 / alpha))
}

/// E[X^{−α}(log X)^p] for X ~ Fréchet(α₀, 1), p ∈ {0, 1, 2}:
/// Γ(1+α/α₀), −Γ′(1+α/α₀)/α₀ and Γ″(1+α/α₀)/α₀² respectively.
pub fn population_moment(alpha0: f64, alpha: f64, log_power: u8) -> Result<f64> {
    check_alpha(alpha0)?;
    if alpha <= -alpha0 {
        return Err(Error::domain(format!(
            "moment is infinite for alpha = {alpha} <= -alpha0 = {}",
            -alpha0
        )));
    }
    let q = 1.0 + alpha / alpha0;
    match log_power {
        0 => special::gamma(q),
        1 => Ok(-special::gamma_d1(q)? / alpha0),
        2 => Ok(special::gamma_d2(q)? / (alpha0 * alpha0)),
        p => Err(Error::argument(format!("log power must be 0, 1 or 2, got {p}"))),
    }
}

/// Population estimating function Ψ(α) = (ψ(1) − ψ(α/α₀))/α₀, a strictly
/// decreasing bijection with its unique zero at α = α₀.
pub fn population_psi(alpha: f64, alpha0: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_alpha(alpha0)?;
    Ok((special::digamma(1.0)? - special::digamma(alpha / alpha0)?) / alpha0)
}

/// Inverse-cdf draw: σ·(−log U)^{−1/α} for U uniform on (0, 1).
pub fn frechet_quantile(theta: FrechetParams, u: f64) -> f64 {
    theta.sigma * (-u.ln()).powf(-1.0 / theta.alpha)
}

/// n independent Fréchet draws from the given stream.
pub fn sample_frechet(theta: FrechetParams, n: usize, stream: &mut RngStream) -> Result<Sample> {
    if n == 0 {
        return Err(Error::argument("sample size must be at least 1"));
    }
    let values = (0..n)
        .map(|_| frechet_quantile(theta, stream.next_open01()))
        .collect();
    Sample::new(values)
}
