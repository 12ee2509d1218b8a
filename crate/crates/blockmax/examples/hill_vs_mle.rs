//! Compare the block-maxima MLE with the Hill estimator on the same
//! Pareto series across matched effective sample sizes.
//!
//!     cargo run --release --example hill_vs_mle

use blockmax::blocks::{extract, BlockSpec};
use blockmax::frechet::Sample;
use blockmax::hill::hill;
use blockmax::rng::RngStream;
use blockmax::simulate::{generate, SeriesModel};
use blockmax::solver::{fit, SolverOptions};

fn main() -> Result<(), blockmax::Error> {
    let model: SeriesModel = "iid-pareto".parse()?;
    let n = 20_000;
    let mut stream = RngStream::new(9, 0);
    let series = generate(&model, n, &mut stream)?;
    let sample = Sample::new(series.clone())?;
    let options = SolverOptions::default();

    println!("true tail index: 1");
    println!("{:>6} {:>12} {:>12}", "size", "mle", "hill");
    for effective in [100usize, 400, 1000] {
        let r = n / effective;
        let maxima = extract(&series, BlockSpec::new(r, None)?)?;
        let mle = fit(&maxima, &options)?;
        let h = hill(&sample, effective)?;
        println!("{effective:>6} {:>12.4} {:>12.4}", mle.alpha, h.alpha_hat);
    }
    Ok(())
}
