//! Gamma-family special functions: Γ, log Γ, ψ, ψ′ and the first two
//! derivatives of Γ, for strictly positive arguments.
//!
//! log Γ uses the Lanczos approximation with the coefficient set from Pugh,
//! "An Analysis of the Lanczos Gamma Approximation" (2004), p. 116; ψ and ψ′
//! use upward recurrence into the regime where the asymptotic series
//! converges to machine precision.

use crate::error::{Error, Result};
use std::f64::consts::{E, PI};

/// Euler–Mascheroni constant γ = −Γ′(1).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Lanczos polynomial coefficients, g = 10.900511.
const LANCZOS_DK: &[f64] = &[
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

const LANCZOS_R: f64 = 10.900511;

fn check_positive(x: f64, op: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("{op} requires x > 0, got {x}")));
    }
    Ok(())
}

fn lanczos_sum(shift: impl Fn(usize) -> f64) -> f64 {
    let mut s = LANCZOS_DK[0];
    for (i, d) in LANCZOS_DK.iter().enumerate().skip(1) {
        s += d / shift(i);
    }
    s
}

/// Natural logarithm of the gamma function.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive(x, "ln_gamma")?;
    if x < 0.5 {
        let s = lanczos_sum(|i| i as f64 - x);
        Ok(LN_PI
            - (PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / E).ln())
    } else {
        let s = lanczos_sum(|i| x + i as f64 - 1.0);
        Ok(s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / E).ln())
    }
}

/// Gamma function Γ(x).
pub fn gamma(x: f64) -> Result<f64> {
    check_positive(x, "gamma")?;
    if x < 0.5 {
        let s = lanczos_sum(|i| i as f64 - x);
        Ok(PI / ((PI * x).sin() * s * TWO_SQRT_E_OVER_PI * ((0.5 - x + LANCZOS_R) / E).powf(0.5 - x)))
    } else {
        let s = lanczos_sum(|i| x + i as f64 - 1.0);
        Ok(s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + LANCZOS_R) / E).powf(x - 0.5))
    }
}

/// Digamma function ψ(x) = Γ′(x)/Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    // shift into x >= 10, then the asymptotic series is good to ~1e-15
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // Bernoulli-number series: ln y - 1/(2y) - sum B_{2n}/(2n y^{2n})
    let series = inv2
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 120.0
                    + inv2
                        * (1.0 / 252.0
                            + inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0 + inv2 * (-691.0 / 32760.0))))));
    Ok(acc + y.ln() - 0.5 * inv - series)
}

/// Trigamma function ψ′(x).
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive(x, "trigamma")?;
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv
        * (1.0
            + inv * 0.5
            + inv2
                * (1.0 / 6.0
                    + inv2
                        * (-1.0 / 30.0
                            + inv2
                                * (1.0 / 42.0
                                    + inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0 + inv2 * (-691.0 / 2730.0)))))));
    Ok(acc + series)
}

/// First derivative of the gamma function, Γ′(x) = Γ(x)·ψ(x).
pub fn gamma_d1(x: f64) -> Result<f64> {
    Ok(gamma(x)? * digamma(x)?)
}

/// Second derivative of the gamma function, Γ″(x) = Γ(x)·(ψ(x)² + ψ′(x)).
pub fn gamma_d2(x: f64) -> Result<f64> {
    let psi = digamma(x)?;
    Ok(gamma(x)? * (psi * psi + trigamma(x)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_rel(actual: f64, expected: f64, tol: f64) {
        let err = (actual - expected).abs() / expected.abs().max(1.0);
        assert!(
            err <= tol,
            "expected {expected}, got {actual} (rel err {err:.3e})"
        );
    }

    #[test]
    fn gamma_anchors() {
        assert_rel(gamma(1.0).unwrap(), 1.0, 1e-14);
        assert_rel(gamma(2.0).unwrap(), 1.0, 1e-14);
        assert_rel(gamma(5.0).unwrap(), 24.0, 1e-13);
        // Γ(1/2) = √π, via the reflection branch
        assert_rel(gamma(0.5).unwrap(), PI.sqrt(), 1e-13);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[1e-3, 0.1, 0.7, 1.5, 7.0, 20.0, 50.0] {
            assert_rel(ln_gamma(x).unwrap().exp(), gamma(x).unwrap(), 1e-12);
        }
    }

    #[test]
    fn digamma_anchors() {
        assert_rel(digamma(1.0).unwrap(), -EULER_GAMMA, 1e-13);
        assert_rel(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, 1e-13);
        // ψ(1/2) = −γ − 2 log 2
        assert_rel(
            digamma(0.5).unwrap(),
            -EULER_GAMMA - 2.0 * 2.0_f64.ln(),
            1e-13,
        );
    }

    #[test]
    fn trigamma_anchors() {
        // partial sums of Σ 1/n² as independent oracle for ψ′(1) = π²/6
        let mut zeta2 = 0.0;
        for n in (1..200_000u64).rev() {
            zeta2 += 1.0 / (n as f64 * n as f64);
        }
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((trigamma(1.0).unwrap() - zeta2).abs() < 1e-5);
        assert_rel(trigamma(2.0).unwrap(), PI * PI / 6.0 - 1.0, 1e-12);
        // leading asymptotic term at large x
        assert_rel(trigamma(1e6).unwrap(), 1e-6, 1e-6);
    }

    #[test]
    fn gamma_derivative_anchors() {
        let g = EULER_GAMMA;
        assert_rel(gamma_d1(1.0).unwrap(), -g, 1e-12);
        assert_rel(gamma_d1(2.0).unwrap(), 1.0 - g, 1e-12);
        assert_rel(
            gamma_d2(2.0).unwrap(),
            (1.0 - g) * (1.0 - g) + PI * PI / 6.0 - 1.0,
            1e-12,
        );
    }

    #[test]
    fn recurrences() {
        let mut x = 0.01;
        while x < 40.0 {
            let g = gamma(x).unwrap();
            assert_rel(gamma(x + 1.0).unwrap(), x * g, 1e-10);
            let psi = digamma(x).unwrap();
            assert!((digamma(x + 1.0).unwrap() - (psi + 1.0 / x)).abs() < 1e-10 * psi.abs().max(1.0));
            let tri = trigamma(x).unwrap();
            assert!(
                (trigamma(x + 1.0).unwrap() - (tri - 1.0 / (x * x))).abs()
                    < 1e-10 * tri.abs().max(1.0)
            );
            x += 0.37;
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut x = 0.5;
        while x <= 10.0 {
            let h = 1e-5 * x;
            let d1 = (gamma(x + h).unwrap() - gamma(x - h).unwrap()) / (2.0 * h);
            let d2 = (gamma(x + h).unwrap() - 2.0 * gamma(x).unwrap() + gamma(x - h).unwrap())
                / (h * h);
            assert_rel(gamma_d1(x).unwrap(), d1, 1e-5);
            assert_rel(gamma_d2(x).unwrap(), d2, 1e-4);
            x += 0.5;
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.0).is_err());
        assert!(digamma(f64::NAN).is_err());
        assert!(trigamma(f64::NEG_INFINITY).is_err());
    }
}
