//! Generate series from every supported model family and print a few
//! summary statistics for each.
//!
//!     cargo run --example simulate_series

use blockmax::rng::RngStream;
use blockmax::simulate::{generate, moving_max_extremal_index, SeriesModel};

fn main() -> Result<(), blockmax::Error> {
    let specs = [
        "iid-abs-cauchy",
        "iid-pareto",
        "iid-frechet:2,1",
        "movmax:p=2,b=0.5,0.5,innov=iid-abs-cauchy",
        "garch:0.5,0.367,0.367",
    ];
    for spec in specs {
        let model: SeriesModel = spec.parse()?;
        let mut stream = RngStream::new(1, 0);
        let series = generate(&model, 5000, &mut stream)?;
        let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean_abs = series.iter().map(|v| v.abs()).sum::<f64>() / series.len() as f64;
        print!("{spec:42} max {max:12.2}  mean|x| {mean_abs:8.3}");
        match model.tail_index() {
            Some(alpha0) => print!("  tail index {alpha0}"),
            None => print!("  tail index unknown"),
        }
        println!();
    }

    // dependence reduces the effective number of extremes: the moving
    // maximum process with equal weights has extremal index 1/2
    let theta = moving_max_extremal_index(&[0.5, 0.5], 1.0)?;
    println!("\nextremal index of movmax:p=2,b=0.5,0.5 at alpha0 = 1: {theta}");
    Ok(())
}
