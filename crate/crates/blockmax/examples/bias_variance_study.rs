//! Small Monte Carlo study of the block-maxima MLE on |Cauchy| data:
//! bias, variance and MSE across a grid of block sizes, with the
//! theoretical bias for comparison.
//!
//!     cargo run --release --example bias_variance_study

use blockmax::asymptotics::cauchy_theoretical_bias;
use blockmax::simulate::{IidFamily, SeriesModel};
use blockmax::study::{run_study, StudyConfig};

fn main() -> Result<(), blockmax::Error> {
    let config = StudyConfig {
        model: SeriesModel::Iid(IidFamily::AbsCauchy),
        n: 1000,
        mle_block_sizes: (2..=12).collect(),
        hill_counts: vec![],
        replications: 1000,
        master_seed: 17,
        alpha0: None,
        truncate: None,
    };
    let result = run_study(&config)?;

    println!("{:>3} {:>5} {:>10} {:>10} {:>10} {:>10}", "r", "k", "bias", "theory", "variance", "mse");
    for row in &result.rows {
        println!(
            "{:>3} {:>5} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            row.r_or_k,
            row.effective_size,
            row.bias,
            cauchy_theoretical_bias(row.r_or_k),
            row.variance,
            row.mse
        );
    }

    let best = result
        .rows
        .iter()
        .min_by(|a, b| a.mse.partial_cmp(&b.mse).unwrap())
        .unwrap();
    println!("\nempirical MSE minimum at r = {}", best.r_or_k);
    Ok(())
}
