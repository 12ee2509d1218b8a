//! Closed-form asymptotic machinery for the block maxima Fréchet MLE: Fisher
//! information, the sensitivity matrix M(α₀) and score-moment covariance Σ_Y
//! with their sandwich identity, the bias functions b₁/b₂ and B(α₀, ρ), the
//! asymptotic mean squared error, and optimal block-size selection for the
//! worked absolute-Cauchy case.

use crate::error::{Error, Result};
use crate::frechet::FrechetParams;
use crate::special::{self, EULER_GAMMA};
use std::f64::consts::PI;

pub type Matrix2 = [[f64; 2]; 2];
pub type Matrix23 = [[f64; 3]; 2];
pub type Matrix3 = [[f64; 3]; 3];

fn pi2() -> f64 {
    PI * PI
}

/// Γ″(2) = (1−γ)² + π²/6 − 1.
fn gamma_dd2() -> f64 {
    let g = EULER_GAMMA;
    (1.0 - g) * (1.0 - g) + pi2() / 6.0 - 1.0
}

fn check_alpha0(alpha0: f64) -> Result<()> {
    if !(alpha0 > 0.0) || !alpha0.is_finite() {
        return Err(Error::domain(format!("alpha0 must be positive, got {alpha0}")));
    }
    Ok(())
}

/// Fisher information of the Fréchet family at θ.
pub fn fisher_info(theta: FrechetParams) -> Matrix2 {
    let (a, s) = (theta.alpha(), theta.sigma());
    let g = EULER_GAMMA;
    let c = (1.0 - g) * (1.0 - g) + pi2() / 6.0;
    [[c / (a * a), (1.0 - g) / s], [(1.0 - g) / s, a * a / (s * s)]]
}

/// Inverse Fisher information; at σ = 1 this is (6/π²)·[[α², γ−1], [γ−1, ((1−γ)²+π²/6)/α²]].
pub fn fisher_info_inverse(theta: FrechetParams) -> Result<Matrix2> {
    let (a, s) = (theta.alpha(), theta.sigma());
    let g = EULER_GAMMA;
    let c = (1.0 - g) * (1.0 - g) + pi2() / 6.0;
    let f = 6.0 / pi2();
    Ok([
        [f * a * a, f * s * (g - 1.0)],
        [f * s * (g - 1.0), f * s * s * c / (a * a)],
    ])
}

/// Sensitivity matrix M(α₀) mapping limiting score moments to the limiting
/// estimation error of (α̂, σ̂).
pub fn sensitivity_matrix(alpha0: f64) -> Result<Matrix23> {
    check_alpha0(alpha0)?;
    let g = EULER_GAMMA;
    let f = 6.0 / pi2();
    let a = alpha0;
    Ok([
        [f * a * a, f * a * (1.0 - g), -f * a * a],
        [f * (g - 1.0), -f * (gamma_dd2() + 1.0) / a, f * (1.0 - g)],
    ])
}

/// Covariance Σ_Y of (X^{−α₀} log X, X^{−α₀}, log X) for X ~ Fréchet(α₀, 1).
pub fn score_moment_covariance(alpha0: f64) -> Result<Matrix3> {
    check_alpha0(alpha0)?;
    let g = EULER_GAMMA;
    let a = alpha0;
    let inv_a2 = 1.0 / (a * a);
    Ok([
        [
            inv_a2 * (1.0 - 4.0 * g + g * g + pi2() / 3.0),
            inv_a2 * a * (g - 2.0),
            inv_a2 * (pi2() / 6.0 - g),
        ],
        [inv_a2 * a * (g - 2.0), 1.0, inv_a2 * (-a)],
        [inv_a2 * (pi2() / 6.0 - g), inv_a2 * (-a), inv_a2 * pi2() / 6.0],
    ])
}

/// M(α₀) · Σ_Y · M(α₀)ᵀ, which the sandwich identity equates with I⁻¹ at (α₀, 1).
pub fn sandwich(alpha0: f64) -> Result<Matrix2> {
    let m = sensitivity_matrix(alpha0)?;
    let sigma = score_moment_covariance(alpha0)?;
    let mut ms = [[0.0; 3]; 2];
    for i in 0..2 {
        for j in 0..3 {
            ms[i][j] = (0..3).map(|l| m[i][l] * sigma[l][j]).sum();
        }
    }
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (0..3).map(|l| ms[i][l] * m[j][l]).sum();
        }
    }
    Ok(out)
}

/// Largest absolute entry of M Σ Mᵀ − I⁻¹ at (α₀, 1).
pub fn sandwich_residual(alpha0: f64) -> Result<f64> {
    let lhs = sandwich(alpha0)?;
    let rhs = fisher_info_inverse(FrechetParams::new(alpha0, 1.0)?)?;
    let mut max = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            max = max.max((lhs[i][j] - rhs[i][j]).abs());
        }
    }
    Ok(max)
}

fn check_nonnegative(x: f64, op: &str) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("{op} requires x >= 0, got {x}")));
    }
    Ok(())
}

/// First bias function: b₁(x) = (1+x)Γ(x){γ + ψ(1+x)} for x > 0, b₁(0) = π²/6.
///
/// Computed as Γ(2+x){γ + ψ(1+x)}/x, which is stable as x ↓ 0.
pub fn b1(x: f64) -> Result<f64> {
    check_nonnegative(x, "b1")?;
    if x == 0.0 {
        return Ok(pi2() / 6.0);
    }
    Ok(special::gamma(2.0 + x)? * (EULER_GAMMA + special::digamma(1.0 + x)?) / x)
}

/// Second bias function:
/// b₂(x) = −π²/(6x) + (1+x)Γ(x){Γ″(2) + γ + (γ−1)ψ(1+x)} for x > 0, b₂(0) = 0.
pub fn b2(x: f64) -> Result<f64> {
    check_nonnegative(x, "b2")?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let g = EULER_GAMMA;
    let inner = gamma_dd2() + g + (g - 1.0) * special::digamma(1.0 + x)?;
    // (1+x)Γ(x) = Γ(2+x)/x; the π²/6 term cancels against it near 0
    Ok((-pi2() / 6.0 + special::gamma(2.0 + x)? * inner) / x)
}

/// Asymptotic bias direction B(α₀, ρ) = −(6/π²)·(b₁(|ρ|/α₀), b₂(|ρ|/α₀)/α₀²).
pub fn bias_vector(alpha0: f64, rho: f64) -> Result<[f64; 2]> {
    check_alpha0(alpha0)?;
    if !(rho <= 0.0) {
        return Err(Error::domain(format!("rho must be <= 0, got {rho}")));
    }
    let q = rho.abs() / alpha0;
    let f = 6.0 / pi2();
    Ok([-f * b1(q)?, -f * b2(q)? / (alpha0 * alpha0)])
}

/// Limiting mean β of the three empirical score moments under the
/// second-order condition, scaled by λ. Satisfies M(α₀)·β = λ·B(α₀, ρ).
pub fn bias_moment_vector(alpha0: f64, rho: f64, lambda: f64) -> Result<[f64; 3]> {
    check_alpha0(alpha0)?;
    if !(rho <= 0.0) {
        return Err(Error::domain(format!("rho must be <= 0, got {rho}")));
    }
    let g = EULER_GAMMA;
    let a = alpha0;
    if rho == 0.0 {
        let f = lambda / (a * a);
        return Ok([
            f * (g - (1.0 - g) * (1.0 - g) - pi2() / 6.0),
            f * a * (1.0 - g),
            f * g,
        ]);
    }
    let q = rho.abs() / a;
    let f = lambda / (rho.abs() * a);
    Ok([
        f * (2.0 - g - special::gamma(2.0 + q)? - special::gamma_d1(2.0 + q)?),
        f * (a * special::gamma(2.0 + q)? - a),
        f * (1.0 - special::gamma(1.0 + q)?),
    ])
}

/// Box–Cox-type kernel h_τ(x) = (x^τ − 1)/τ for τ ≠ 0, log x for τ = 0.
pub fn h_tau(tau: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("h_tau requires x > 0, got {x}")));
    }
    if tau == 0.0 {
        Ok(x.ln())
    } else {
        Ok((x.powf(tau) - 1.0) / tau)
    }
}

/// Decomposition of the asymptotic mean squared error of α̂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmseParts {
    pub abias2: f64,
    pub avar: f64,
    pub amse: f64,
}

/// ABias² = A(a_r)²·(36/π⁴)·b₁(|ρ|/α₀)² and AVar = (r/n)·(6/π²)·α₀².
pub fn amse(alpha0: f64, rho: f64, a_at_ar: f64, r: usize, n: usize) -> Result<AmseParts> {
    check_alpha0(alpha0)?;
    if r < 1 || r > n {
        return Err(Error::domain(format!(
            "block size r = {r} must satisfy 1 <= r <= n = {n}"
        )));
    }
    let q = rho.abs() / alpha0;
    let b = b1(q)?;
    let abias2 = a_at_ar * a_at_ar * 36.0 / (pi2() * pi2()) * b * b;
    let avar = (r as f64 / n as f64) * 6.0 / pi2() * alpha0 * alpha0;
    Ok(AmseParts {
        abias2,
        avar,
        amse: abias2 + avar,
    })
}

/// A verified second-order condition: index ρ, auxiliary function A(u) and
/// norming sequence a_n, carried as evaluable functions.
pub struct SecondOrderSpec {
    pub alpha0: f64,
    pub rho: f64,
    auxiliary: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    norming: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SecondOrderSpec {
    pub fn new(
        alpha0: f64,
        rho: f64,
        auxiliary: impl Fn(f64) -> f64 + Send + Sync + 'static,
        norming: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        check_alpha0(alpha0)?;
        if !(rho <= 0.0) {
            return Err(Error::domain(format!("rho must be <= 0, got {rho}")));
        }
        Ok(SecondOrderSpec {
            alpha0,
            rho,
            auxiliary: Box::new(auxiliary),
            norming: Box::new(norming),
        })
    }

    /// Auxiliary function A(u).
    pub fn a(&self, u: f64) -> f64 {
        (self.auxiliary)(u)
    }

    /// Norming constant a_n.
    pub fn norming(&self, n: f64) -> f64 {
        (self.norming)(n)
    }
}

/// Second-order data of the absolute-Cauchy distribution:
/// α₀ = 1, ρ = −1, A(u) = −1/(1+πu) and a_n = 2n/π.
pub fn cauchy_second_order() -> SecondOrderSpec {
    SecondOrderSpec::new(1.0, -1.0, |u| -1.0 / (1.0 + PI * u), |n| 2.0 * n / PI).unwrap()
}

/// Theoretical bias of α̂ for absolute-Cauchy block maxima: 12/(π²(1+2r)).
pub fn cauchy_theoretical_bias(r: usize) -> f64 {
    12.0 / (pi2() * (1.0 + 2.0 * r as f64))
}

/// AMSE-optimal block size for absolute-Cauchy data: the integer rounding of
/// the positive root of (864/π⁶)·n = r(1+2r)², paired with k = ⌊n/r⌋.
pub fn optimal_block_size_cauchy(n: usize) -> Result<(usize, usize)> {
    if n < 8 {
        return Err(Error::domain(format!("n must be at least 8, got {n}")));
    }
    let target = 864.0 / PI.powi(6) * n as f64;
    // r(1+2r)^2 is strictly increasing on r > 0; bisect
    let (mut lo, mut hi) = (0.0, target.max(1.0));
    let f = |r: f64| r * (1.0 + 2.0 * r) * (1.0 + 2.0 * r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = (0.5 * (lo + hi)).round().max(1.0) as usize;
    Ok((r, n / r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frechet::{population_moment, sample_frechet};
    use crate::rng::RngStream;

    #[test]
    fn fisher_inverse_at_unit_scale() {
        let g = EULER_GAMMA;
        let inv = fisher_info_inverse(FrechetParams::new(1.0, 1.0).unwrap()).unwrap();
        let f = 6.0 / pi2();
        assert!((inv[0][0] - f).abs() < 1e-14);
        assert!((inv[0][1] - f * (g - 1.0)).abs() < 1e-14);
        assert!((inv[1][1] - f * ((1.0 - g) * (1.0 - g) + pi2() / 6.0)).abs() < 1e-14);
        // asymptotic std of sqrt(k)(α̂−α₀) at α₀ = 1 is √(6)/π ≈ 0.7797
        assert!((inv[0][0].sqrt() - 0.7797).abs() < 1e-4);
    }

    #[test]
    fn fisher_product_is_identity() {
        let theta = FrechetParams::new(2.0, 3.0).unwrap();
        let i = fisher_info(theta);
        let inv = fisher_info_inverse(theta).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let p: f64 = (0..2).map(|l| i[r][l] * inv[l][c]).sum();
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((p - expect).abs() < 1e-12, "entry ({r},{c}) = {p}");
            }
        }
    }

    #[test]
    fn fisher_matches_score_outer_product() {
        // Monte Carlo oracle: I = E[score scoreᵀ]
        let theta = FrechetParams::new(1.5, 2.0).unwrap();
        let mut stream = RngStream::new(71, 0);
        let s = sample_frechet(theta, 300_000, &mut stream).unwrap();
        let mut acc = [[0.0f64; 2]; 2];
        for &x in s.values() {
            let (da, ds) = crate::frechet::score(theta, x).unwrap();
            acc[0][0] += da * da;
            acc[0][1] += da * ds;
            acc[1][1] += ds * ds;
        }
        let n = s.len() as f64;
        let i = fisher_info(theta);
        assert!((acc[0][0] / n - i[0][0]).abs() / i[0][0] < 0.05);
        assert!((acc[0][1] / n - i[0][1]).abs() / i[0][1].abs() < 0.05);
        assert!((acc[1][1] / n - i[1][1]).abs() / i[1][1] < 0.05);
    }

    #[test]
    fn sensitivity_matrix_anchors() {
        let m = sensitivity_matrix(1.0).unwrap();
        assert!((m[0][0] - 6.0 / pi2()).abs() < 1e-14);
        for &a in &[0.3, 1.0, 4.5] {
            let m = sensitivity_matrix(a).unwrap();
            assert!((m[0][0] + m[0][2]).abs() < 1e-14);
        }
    }

    #[test]
    fn sandwich_identity_on_grid() {
        for &a in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let res = sandwich_residual(a).unwrap();
            assert!(res <= 1e-10, "alpha0 = {a}: residual {res:.3e}");
        }
    }

    #[test]
    fn covariance_matrix_properties() {
        let s = score_moment_covariance(1.0).unwrap();
        assert!((s[1][1] - 1.0).abs() < 1e-14);
        for &a in &[0.4, 1.0, 3.0] {
            let s = score_moment_covariance(a).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((s[i][j] - s[j][i]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn covariance_var_y2_matches_moments() {
        // var(X^{-α₀}) = Γ(3) − Γ(2)² = 1 through the moments lemma
        let m1 = population_moment(2.0, 2.0, 0).unwrap();
        let m2 = population_moment(2.0, 4.0, 0).unwrap();
        assert!((m2 - m1 * m1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_fisher_positive_definite() {
        for i in 0..20 {
            let a = 0.1 + 0.5 * i as f64;
            let m = fisher_info_inverse(FrechetParams::new(a, 1.0).unwrap()).unwrap();
            // 2x2 Cholesky
            let l11 = m[0][0].sqrt();
            assert!(l11.is_finite() && l11 > 0.0);
            let l21 = m[0][1] / l11;
            let d = m[1][1] - l21 * l21;
            assert!(d > 0.0, "alpha0 = {a}");
        }
    }

    #[test]
    fn bias_function_anchors() {
        assert!((b1(0.0).unwrap() - pi2() / 6.0).abs() < 1e-14);
        assert_eq!(b2(0.0).unwrap(), 0.0);
        assert!((b1(1.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(b1(-0.1).is_err());
    }

    #[test]
    fn bias_functions_continuous_at_zero() {
        assert!((b1(1e-6).unwrap() - pi2() / 6.0).abs() < 1e-5);
        assert!(b2(1e-6).unwrap().abs() < 1e-5);
        // b1 positive on [0, 5]
        for i in 0..=50 {
            assert!(b1(0.1 * i as f64).unwrap() > 0.0);
        }
    }

    #[test]
    fn bias_vector_anchors() {
        let b = bias_vector(2.7, 0.0).unwrap();
        assert!((b[0] + 1.0).abs() < 1e-13);
        assert!(b[1].abs() < 1e-13);
        let b = bias_vector(1.0, -1.0).unwrap();
        assert!((b[0] + 6.0 / pi2() * 2.0).abs() < 1e-12);
    }

    #[test]
    fn beta_consistent_with_bias_vector() {
        // M(α₀)·β = λ·B(α₀, ρ) across both branches of β
        for &(a, rho) in &[(1.0, -1.0), (2.0, -0.5), (1.0, 0.0), (0.7, -2.0)] {
            let m = sensitivity_matrix(a).unwrap();
            let beta = bias_moment_vector(a, rho, 1.0).unwrap();
            let b = bias_vector(a, rho).unwrap();
            for i in 0..2 {
                let lhs: f64 = (0..3).map(|j| m[i][j] * beta[j]).sum();
                assert!(
                    (lhs - b[i]).abs() < 1e-10,
                    "(alpha0={a}, rho={rho}) row {i}: {lhs} vs {}",
                    b[i]
                );
            }
        }
    }

    #[test]
    fn h_tau_anchors() {
        assert!((h_tau(0.0, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert!((h_tau(-1.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        for &t in &[-2.0, -0.5, 0.0, 1.3] {
            assert_eq!(h_tau(t, 1.0).unwrap(), 0.0);
        }
        // continuity in τ at 0
        let x = 3.7;
        assert!((h_tau(1e-8, x).unwrap() - x.ln()).abs() < 1e-6);
    }

    #[test]
    fn amse_anchors() {
        let parts = amse(1.0, -1.0, 0.0, 6, 1000).unwrap();
        assert_eq!(parts.abias2, 0.0);
        assert!((parts.avar - 6.0 / pi2() * 6.0 / 1000.0).abs() < 1e-15);
        assert_eq!(parts.amse, parts.avar);
        assert!(amse(1.0, -1.0, 0.0, 0, 10).is_err());
    }

    #[test]
    fn cauchy_spec_anchors() {
        let spec = cauchy_second_order();
        assert_eq!(spec.rho, -1.0);
        // A(a_r) at r = 6: a_6 = 12/π, A = −1/13
        let a6 = spec.norming(6.0);
        assert!((a6 - 12.0 / PI).abs() < 1e-14);
        assert!((spec.a(a6) + 1.0 / 13.0).abs() < 1e-14);
        // A vanishes at infinity on a grid
        let mut prev = spec.a(1.0).abs();
        for &u in &[10.0, 100.0, 1e4, 1e8] {
            let cur = spec.a(u).abs();
            assert!(cur < prev);
            prev = cur;
        }
        assert!(prev < 1e-8);
    }

    #[test]
    fn cauchy_bias_matches_amse_machinery() {
        // −A(a_r)·(6/π²)·b₁(1) should equal 12/(π²(1+2r))
        let spec = cauchy_second_order();
        for &r in &[2usize, 6, 25, 100] {
            let bias = -spec.a(spec.norming(r as f64)) * 6.0 / pi2() * b1(1.0).unwrap();
            let theory = cauchy_theoretical_bias(r);
            assert!((bias - theory).abs() < 1e-12, "r = {r}: {bias} vs {theory}");
        }
        // limit r·bias → 6/π²
        let r = 10_000;
        assert!((r as f64 * cauchy_theoretical_bias(r) - 6.0 / pi2()).abs() < 1e-4);
    }

    #[test]
    fn optimal_block_size_anchors() {
        let (r, k) = optimal_block_size_cauchy(1000).unwrap();
        assert_eq!(r, 6);
        assert_eq!(k, 166);
        let mut prev = 0;
        for &n in &[1_000usize, 10_000, 100_000] {
            let (r, _) = optimal_block_size_cauchy(n).unwrap();
            assert!(r >= prev);
            prev = r;
        }
        assert!(optimal_block_size_cauchy(4).is_err());
    }
}
