//! Maximum likelihood fitting of the two-parameter Fréchet distribution.
//!
//! The shape estimate is the unique zero of the strictly decreasing profile
//! estimating function Ψ_k; the scale follows from the profile formula. The
//! root is found by safeguarded Newton iteration with a bisection fallback.

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::frechet::{self, FrechetParams, Sample};

/// Tuning knobs of the root solver.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Convergence tolerance on |Ψ_k(α̂)|.
    pub tol: f64,
    /// Iteration cap for the Newton/bisection loop.
    pub max_iterations: usize,
    /// Relative spread below which a sample counts as all-tied.
    pub tie_tolerance: f64,
    /// Attach plug-in standard errors √(I⁻¹ᵢᵢ/k) to the result.
    pub std_errors: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iterations: 200,
            tie_tolerance: 1e-13,
            std_errors: false,
        }
    }
}

/// Outcome of a maximum likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted (α̂, σ̂). For a degenerate (all-tied) sample α̂ is reported as
    /// +∞ and σ̂ as the common value.
    pub alpha: f64,
    pub sigma: f64,
    pub iterations: usize,
    /// |Ψ_k(α̂)| at termination.
    pub residual: f64,
    pub degenerate: bool,
    /// Plug-in standard errors (se(α̂), se(σ̂)) when requested.
    pub std_errors: Option<(f64, f64)>,
}

impl FitResult {
    pub fn params(&self) -> Result<FrechetParams> {
        FrechetParams::new(self.alpha, self.sigma)
    }
}

/// Fit the Fréchet distribution to `sample` by maximum likelihood.
///
/// Requires k ≥ 2. An all-tied sample yields the degenerate convention
/// (α̂ = ∞, σ̂ = common value) rather than an error.
pub fn fit(sample: &Sample, options: &SolverOptions) -> Result<FitResult> {
    let k = sample.len();
    if k < 2 {
        return Err(Error::argument(format!(
            "maximum likelihood fit requires at least 2 observations, got {k}"
        )));
    }
    let (min, max) = (sample.min(), sample.max());
    if (max - min) / max <= options.tie_tolerance {
        return Ok(FitResult {
            alpha: f64::INFINITY,
            sigma: min,
            iterations: 0,
            residual: 0.0,
            degenerate: true,
            std_errors: None,
        });
    }

    let (lo, hi) = initial_bracket(sample)?;
    let (alpha, iterations, residual) = newton_bisect(sample, lo, hi, options)?;
    let sigma = frechet::profile_sigma(alpha, sample)?;
    let std_errors = if options.std_errors {
        let inv = asymptotics::fisher_info_inverse(FrechetParams::new(alpha, sigma)?)?;
        Some(((inv[0][0] / k as f64).sqrt(), (inv[1][1] / k as f64).sqrt()))
    } else {
        None
    };
    Ok(FitResult {
        alpha,
        sigma,
        iterations,
        residual,
        degenerate: false,
        std_errors,
    })
}

/// Locate a bracket [lo, hi] with Ψ_k(lo) > 0 > Ψ_k(hi).
///
/// Ψ_k tends to +∞ as α → 0 and to a negative limit as α → ∞ for any
/// non-tied sample, so geometric expansion must eventually succeed.
fn initial_bracket(sample: &Sample) -> Result<(f64, f64)> {
    let lmin = sample.min().ln();
    let mean_excess =
        sample.values().iter().map(|&x| x.ln() - lmin).sum::<f64>() / sample.len() as f64;
    let m = (1.0 / mean_excess).clamp(1e-4, 1e4);
    let mut lo = 0.5 / m;
    let mut hi = 2.0 * m;

    const MAX_EXPANSIONS: usize = 60;
    let mut expansions = 0;
    while frechet::psi_k(lo, sample)? <= 0.0 {
        lo /= 4.0;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::BracketExhausted { lo, hi, expansions });
        }
    }
    while frechet::psi_k(hi, sample)? >= 0.0 {
        hi *= 4.0;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return Err(Error::BracketExhausted { lo, hi, expansions });
        }
    }
    Ok((lo, hi))
}

/// Solve Ψ_k(α|x) = 0 inside a user-supplied bracket.
///
/// The bracket must satisfy Ψ_k(lo) > 0 > Ψ_k(hi).
pub fn solve_root(sample: &Sample, bracket_lo: f64, bracket_hi: f64, tol: f64) -> Result<f64> {
    if !(0.0 < bracket_lo && bracket_lo < bracket_hi) {
        return Err(Error::argument(format!(
            "invalid bracket [{bracket_lo}, {bracket_hi}]"
        )));
    }
    if frechet::psi_k(bracket_lo, sample)? <= 0.0 || frechet::psi_k(bracket_hi, sample)? >= 0.0 {
        return Err(Error::argument(
            "bracket must satisfy psi_k(lo) > 0 > psi_k(hi)".to_string(),
        ));
    }
    let options = SolverOptions {
        tol,
        ..SolverOptions::default()
    };
    newton_bisect(sample, bracket_lo, bracket_hi, &options).map(|(alpha, _, _)| alpha)
}

fn newton_bisect(
    sample: &Sample,
    mut lo: f64,
    mut hi: f64,
    options: &SolverOptions,
) -> Result<(f64, usize, f64)> {
    let mut alpha = (lo * hi).sqrt();
    let mut value = frechet::psi_k(alpha, sample)?;
    for iter in 1..=options.max_iterations {
        if value.abs() <= options.tol {
            return Ok((alpha, iter - 1, value.abs()));
        }
        // Ψ_k decreases in α: a positive value pushes the lower edge up
        if value > 0.0 {
            lo = alpha;
        } else {
            hi = alpha;
        }
        let slope = frechet::psi_k_slope(alpha, sample)?;
        let newton = alpha - value / slope;
        alpha = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        value = frechet::psi_k(alpha, sample)?;
        if hi - lo <= options.tol * alpha {
            return Ok((alpha, iter, value.abs()));
        }
    }
    // the bracket pins the root; report the midpoint with its residual
    Ok((alpha, options.max_iterations, value.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frechet::sample_frechet;
    use crate::rng::RngStream;

    fn sample(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    /// High-precision bisection oracle, independent of the Newton path.
    fn bisect_oracle(s: &Sample, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if frechet::psi_k(mid, s).unwrap() > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn degenerate_sample_convention() {
        let r = fit(&sample(&[3.5, 3.5, 3.5]), &SolverOptions::default()).unwrap();
        assert!(r.degenerate);
        assert!(r.alpha.is_infinite());
        assert_eq!(r.sigma, 3.5);
    }

    #[test]
    fn two_point_sample_matches_bisection_oracle() {
        // {1, e}: α̂ solves 1/α + e^{−α}/(1+e^{−α}) − 1/2 = 0
        let s = sample(&[1.0, std::f64::consts::E]);
        let oracle = bisect_oracle(&s, 0.1, 50.0);
        assert!((oracle - 2.399_357_280_515_467).abs() < 1e-10);
        let r = fit(&s, &SolverOptions::default()).unwrap();
        assert!((r.alpha - oracle).abs() < 1e-9);
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn rejects_k1() {
        assert!(fit(&sample(&[2.0]), &SolverOptions::default()).is_err());
    }

    #[test]
    fn scale_equivariance() {
        let mut stream = RngStream::new(8, 0);
        let s = sample_frechet(FrechetParams::new(1.2, 0.7).unwrap(), 200, &mut stream).unwrap();
        let cs = s.scaled(7.3).unwrap();
        let a = fit(&s, &SolverOptions::default()).unwrap();
        let b = fit(&cs, &SolverOptions::default()).unwrap();
        assert!((a.alpha - b.alpha).abs() <= 1e-9 * a.alpha);
        assert!((b.sigma - 7.3 * a.sigma).abs() <= 1e-9 * b.sigma);
    }

    #[test]
    fn solve_root_is_bracket_independent() {
        let mut stream = RngStream::new(15, 0);
        let s = sample_frechet(FrechetParams::new(2.0, 1.0).unwrap(), 100, &mut stream).unwrap();
        let a = solve_root(&s, 0.05, 50.0, 1e-12).unwrap();
        let b = solve_root(&s, 0.5, 8.0, 1e-12).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!(solve_root(&s, 8.0, 0.5, 1e-12).is_err());
    }

    #[test]
    fn consistency_on_large_sample() {
        let mut stream = RngStream::new(23, 0);
        let s = sample_frechet(FrechetParams::new(2.0, 1.0).unwrap(), 10_000, &mut stream).unwrap();
        let r = fit(&s, &SolverOptions::default()).unwrap();
        assert!((r.alpha - 2.0).abs() < 0.1, "alpha_hat {}", r.alpha);
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn median_error_decreases_with_k() {
        let theta = FrechetParams::new(1.5, 1.0).unwrap();
        let mut medians = Vec::new();
        for (si, &k) in [100usize, 1_000, 10_000].iter().enumerate() {
            let mut errs: Vec<f64> = (0..21)
                .map(|rep| {
                    let mut stream = RngStream::new(31, (si * 100 + rep) as u64);
                    let s = sample_frechet(theta, k, &mut stream).unwrap();
                    (fit(&s, &SolverOptions::default()).unwrap().alpha - 1.5).abs()
                })
                .collect();
            errs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            medians.push(errs[10]);
        }
        assert!(medians[0] > medians[1] && medians[1] > medians[2], "{medians:?}");
    }

    #[test]
    fn likelihood_maximality_and_determinism() {
        let theta = FrechetParams::new(1.0, 2.0).unwrap();
        for rep in 0..20 {
            let mut stream = RngStream::new(47, rep);
            let s = sample_frechet(theta, 60, &mut stream).unwrap();
            let r = fit(&s, &SolverOptions::default()).unwrap();
            let r2 = fit(&s, &SolverOptions::default()).unwrap();
            assert_eq!(r, r2);
            let best =
                frechet::log_likelihood(FrechetParams::new(r.alpha, r.sigma).unwrap(), &s);
            for &(da, ds) in &[(1e-3, 0.0), (-1e-3, 0.0), (0.0, 1e-3), (0.0, -1e-3)] {
                let perturbed = FrechetParams::new(r.alpha * (1.0 + da), r.sigma * (1.0 + ds))
                    .unwrap();
                assert!(best >= frechet::log_likelihood(perturbed, &s));
            }
        }
    }

    #[test]
    fn plug_in_standard_errors() {
        let mut stream = RngStream::new(3, 0);
        let s = sample_frechet(FrechetParams::new(1.0, 1.0).unwrap(), 1_000, &mut stream).unwrap();
        let opts = SolverOptions {
            std_errors: true,
            ..SolverOptions::default()
        };
        let r = fit(&s, &opts).unwrap();
        let (se_a, se_s) = r.std_errors.unwrap();
        // asymptotic se of α̂ is 0.7797·α₀/√k
        let expect = 0.7797 * 1.0 / (1000.0f64).sqrt();
        assert!((se_a - expect).abs() / expect < 0.2, "se {se_a} vs {expect}");
        assert!(se_s > 0.0);
    }
}
