//! Command-line interface: fit block maxima, simulate series, run Monte
//! Carlo studies and evaluate the asymptotic calculator.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 degenerate statistical
//! result.

use blockmax::asymptotics;
use blockmax::blocks::{self, BlockSpec};
use blockmax::error::Error;
use blockmax::frechet::{FrechetParams, Sample};
use blockmax::rng::RngStream;
use blockmax::simulate::{self, SeriesModel};
use blockmax::solver::{fit, SolverOptions};
use blockmax::study::{
    self, fmt_sig, run_bias_variance_approx_study, run_study, BvScenario, OutputFormat,
    StudyConfig,
};
use clap::{Args, Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "blockmax", version, about = "Block maxima estimation for heavy-tailed data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a Fréchet distribution by maximum likelihood
    Fit(FitArgs),
    /// Simulate a series from a model and write one value per line
    Simulate(SimulateArgs),
    /// Run a Monte Carlo bias/variance/MSE study
    Study(StudyArgs),
    /// Run the finite-sample bias/variance approximation study (abs-Cauchy)
    BvApprox(BvApproxArgs),
    /// Print the closed-form asymptotic quantities
    Asymptotics(AsymptoticsArgs),
}

#[derive(Args)]
struct FitArgs {
    /// Input file of newline-separated decimal numbers (# comments ignored)
    input: PathBuf,
    /// Extract block maxima of this size before fitting
    #[arg(long)]
    block_size: Option<usize>,
    /// Left-truncation floor applied to each block maximum
    #[arg(long)]
    truncate: Option<f64>,
    /// Also print plug-in standard errors
    #[arg(long = "stderr")]
    std_errors: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Model spec, e.g. iid-abs-cauchy or garch:0.5,0.367,0.367
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StudyArgs {
    /// Flat key = value config file (overrides the individual flags)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Block sizes for the MLE, e.g. 2..24 or 2,4,8
    #[arg(long)]
    r_grid: Option<String>,
    /// Upper order statistic counts for Hill
    #[arg(long)]
    k_grid: Option<String>,
    #[arg(long, default_value_t = 3000)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// True tail index; defaults to the model's known value
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    truncate: Option<f64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Worker threads (0 = all cores); output is identical for any value
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct BvApproxArgs {
    /// fixed-k | fixed-r | balanced
    #[arg(long)]
    scenario: String,
    #[arg(long, default_value_t = 5000)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct AsymptoticsArgs {
    #[arg(long)]
    alpha0: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    rho: f64,
    /// Sample size for the abs-Cauchy optimal block size section
    #[arg(long)]
    n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Study(args) => cmd_study(args),
        Command::BvApprox(args) => cmd_bv_approx(args),
        Command::Asymptotics(args) => cmd_asymptotics(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CmdResult = Result<ExitCode, Error>;

fn read_values(path: &PathBuf) -> Result<Vec<f64>, Error> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            path: path.display().to_string(),
            line: lineno + 1,
            message: format!("cannot parse `{line}` as a number"),
        })?;
        values.push(v);
    }
    Ok(values)
}

fn cmd_fit(args: FitArgs) -> CmdResult {
    let values = read_values(&args.input)?;
    let sample = match args.block_size {
        Some(r) => blocks::extract(&values, BlockSpec::new(r, args.truncate)?)?,
        None => Sample::new(values)?,
    };
    let options = SolverOptions {
        std_errors: args.std_errors,
        ..SolverOptions::default()
    };
    let result = fit(&sample, &options)?;
    if result.degenerate {
        println!("degenerate sample: all {} values equal; by convention alpha_hat = inf, sigma_hat = {}", sample.len(), fmt_sig(result.sigma));
        return Ok(ExitCode::from(2));
    }
    println!("alpha_hat = {}", fmt_sig(result.alpha));
    println!("sigma_hat = {}", fmt_sig(result.sigma));
    println!("k = {}", sample.len());
    println!("residual = {}", fmt_sig(result.residual));
    if let Some((se_a, se_s)) = result.std_errors {
        println!("stderr_alpha = {}", fmt_sig(se_a));
        println!("stderr_sigma = {}", fmt_sig(se_s));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    let model: SeriesModel = args.model.parse()?;
    let mut stream = RngStream::new(args.seed, 0);
    let series = simulate::generate(&model, args.n, &mut stream)?;
    let wrap = |source: std::io::Error| Error::Io {
        path: args.out.display().to_string(),
        source,
    };
    let mut w = BufWriter::new(File::create(&args.out).map_err(wrap)?);
    for v in &series {
        writeln!(w, "{}", fmt_sig(*v)).map_err(wrap)?;
    }
    w.flush().map_err(wrap)?;
    Ok(ExitCode::SUCCESS)
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Argument(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn cmd_study(args: StudyArgs) -> CmdResult {
    let config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            StudyConfig::from_flat(&text, &path.display().to_string())?
        }
        None => {
            let model: SeriesModel = args
                .model
                .as_deref()
                .ok_or_else(|| Error::argument("missing --model (or --config)"))?
                .parse()?;
            StudyConfig {
                model,
                n: args
                    .n
                    .ok_or_else(|| Error::argument("missing --n (or --config)"))?,
                mle_block_sizes: match &args.r_grid {
                    Some(g) => study::parse_grid(g)?,
                    None => vec![],
                },
                hill_counts: match &args.k_grid {
                    Some(g) => study::parse_grid(g)?,
                    None => vec![],
                },
                replications: args.reps,
                master_seed: args.seed,
                alpha0: args.alpha0,
                truncate: args.truncate,
            }
        }
    };
    let format: OutputFormat = args.format.parse()?;
    let result = in_pool(args.jobs, || run_study(&config))??;
    study::write_results(&result, &args.out, format)?;
    println!("wrote {} rows to {}", result.rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bv_approx(args: BvApproxArgs) -> CmdResult {
    let scenario: BvScenario = args.scenario.parse()?;
    let format: OutputFormat = args.format.parse()?;
    let result = in_pool(args.jobs, || {
        run_bias_variance_approx_study(&scenario, args.reps, args.seed)
    })??;
    study::write_results(&result, &args.out, format)?;
    println!("wrote {} rows to {}", result.rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn print_matrix(name: &str, rows: &[&[f64]]) {
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|&v| fmt_sig(v)).collect();
        if i == 0 {
            println!("{name} = [{}]", cells.join(", "));
        } else {
            println!("{:width$}   [{}]", "", cells.join(", "), width = name.len());
        }
    }
}

fn cmd_asymptotics(args: AsymptoticsArgs) -> CmdResult {
    let theta = FrechetParams::new(args.alpha0, args.sigma)?;
    let info = asymptotics::fisher_info(theta);
    let inv = asymptotics::fisher_info_inverse(theta)?;
    let m = asymptotics::sensitivity_matrix(args.alpha0)?;
    let sigma_y = asymptotics::score_moment_covariance(args.alpha0)?;
    let b = asymptotics::bias_vector(args.alpha0, args.rho)?;
    print_matrix("I", &[&info[0], &info[1]]);
    print_matrix("I_inv", &[&inv[0], &inv[1]]);
    print_matrix("M", &[&m[0], &m[1]]);
    print_matrix("Sigma_Y", &[&sigma_y[0], &sigma_y[1], &sigma_y[2]]);
    println!("B(alpha0, rho) = [{}, {}]", fmt_sig(b[0]), fmt_sig(b[1]));
    println!(
        "sandwich_residual = {}",
        fmt_sig(asymptotics::sandwich_residual(args.alpha0)?)
    );
    if let Some(n) = args.n {
        let (r, k) = asymptotics::optimal_block_size_cauchy(n)?;
        println!("cauchy_optimal_r = {r}");
        println!("cauchy_optimal_k = {k}");
    }
    Ok(ExitCode::SUCCESS)
}
