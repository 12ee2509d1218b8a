//! Seeded Monte Carlo engine for the bias/variance/MSE experiments, with
//! CSV and JSON result writers.
//!
//! One series is generated per replication and reused across every grid point
//! and estimator; replication i draws from stream (master_seed, i), so results
//! are identical for any degree of parallelism.

use crate::asymptotics;
use crate::blocks::{self, BlockSpec};
use crate::error::{Error, Result};
use crate::frechet::Sample;
use crate::hill;
use crate::simulate::{self, SeriesModel};
use crate::rng::RngStream;
use crate::solver::{self, SolverOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    BlockMaxMle,
    Hill,
}

impl Estimator {
    fn label(&self) -> &'static str {
        match self {
            Estimator::BlockMaxMle => "mle",
            Estimator::Hill => "hill",
        }
    }
}

/// Full description of a Monte Carlo study.
#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub model: SeriesModel,
    /// Raw series length per replication.
    pub n: usize,
    /// Block sizes r for the block maxima MLE.
    pub mle_block_sizes: Vec<usize>,
    /// Numbers of upper order statistics k for the Hill estimator.
    pub hill_counts: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    /// True tail index; when absent it is filled from the model.
    pub alpha0: Option<f64>,
    /// Left-truncation floor for block maxima; when absent the default policy
    /// applies (1e-6 for GARCH, none otherwise).
    pub truncate: Option<f64>,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if self.replications < 2 {
            return Err(Error::argument(format!(
                "replications must be at least 2, got {}",
                self.replications
            )));
        }
        if self.mle_block_sizes.is_empty() && self.hill_counts.is_empty() {
            return Err(Error::argument("no estimator grid given (r_grid / k_grid)"));
        }
        for &r in &self.mle_block_sizes {
            if r < 1 || r > self.n {
                return Err(Error::argument(format!(
                    "block size r = {r} must satisfy 1 <= r <= n = {}",
                    self.n
                )));
            }
        }
        for &k in &self.hill_counts {
            if k < 1 || k > self.n - 1 {
                return Err(Error::argument(format!(
                    "hill k = {k} must satisfy 1 <= k <= n-1 = {}",
                    self.n - 1
                )));
            }
        }
        self.resolved_alpha0()?;
        Ok(())
    }

    pub fn resolved_alpha0(&self) -> Result<f64> {
        self.alpha0
            .or_else(|| self.model.tail_index())
            .ok_or_else(|| Error::argument("alpha0: no true tail index known for this model"))
    }

    fn resolved_truncate(&self) -> Option<f64> {
        self.truncate.or(match self.model {
            SeriesModel::Garch11 { .. } => Some(1e-6),
            _ => None,
        })
    }

    /// Parse a flat `key = value` config file.
    ///
    /// Keys: model, n, reps, seed, r_grid, k_grid, estimators, alpha0,
    /// truncate. Grids are comma lists or inclusive ranges `lo..hi`.
    pub fn from_flat(text: &str, label: &str) -> Result<StudyConfig> {
        let mut model: Option<SeriesModel> = None;
        let mut n: Option<usize> = None;
        let mut reps: Option<usize> = None;
        let mut seed: u64 = 0;
        let mut r_grid: Vec<usize> = Vec::new();
        let mut k_grid: Vec<usize> = Vec::new();
        let mut alpha0: Option<f64> = None;
        let mut truncate: Option<f64> = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                path: label.to_string(),
                line: lineno + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let parse_err = |message: String| Error::Parse {
                path: label.to_string(),
                line: lineno + 1,
                message,
            };
            match key {
                "model" => model = Some(value.parse()?),
                "n" => {
                    n = Some(value.parse().map_err(|_| parse_err(format!("bad n `{value}`")))?)
                }
                "reps" | "replications" => {
                    reps =
                        Some(value.parse().map_err(|_| parse_err(format!("bad reps `{value}`")))?)
                }
                "seed" => {
                    seed = value.parse().map_err(|_| parse_err(format!("bad seed `{value}`")))?
                }
                "r_grid" => r_grid = parse_grid(value).map_err(|e| parse_err(e.to_string()))?,
                "k_grid" => k_grid = parse_grid(value).map_err(|e| parse_err(e.to_string()))?,
                "alpha0" => {
                    alpha0 = Some(
                        value.parse().map_err(|_| parse_err(format!("bad alpha0 `{value}`")))?,
                    )
                }
                "truncate" => {
                    truncate = Some(
                        value
                            .parse()
                            .map_err(|_| parse_err(format!("bad truncate `{value}`")))?,
                    )
                }
                other => return Err(parse_err(format!("unknown key `{other}`"))),
            }
        }
        let config = StudyConfig {
            model: model.ok_or_else(|| Error::argument("config: missing `model`"))?,
            n: n.ok_or_else(|| Error::argument("config: missing `n`"))?,
            mle_block_sizes: r_grid,
            hill_counts: k_grid,
            replications: reps.ok_or_else(|| Error::argument("config: missing `reps`"))?,
            master_seed: seed,
            alpha0,
            truncate,
        };
        config.validate()?;
        Ok(config)
    }
}

/// `lo..hi` (inclusive) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| Error::argument(format!("bad grid bound `{lo}`")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| Error::argument(format!("bad grid bound `{hi}`")))?;
        if lo > hi {
            return Err(Error::argument(format!("empty grid range `{s}`")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::argument(format!("bad grid value `{t}`")))
        })
        .collect()
}

/// Aggregate over replications for one (model, estimator, grid point) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub model: String,
    pub estimator: String,
    pub r_or_k: usize,
    pub effective_size: usize,
    pub bias: f64,
    pub bias2: f64,
    pub variance: f64,
    pub mse: f64,
    /// Replications included in the aggregates.
    pub n_reps: usize,
    pub seed: u64,
    /// Degenerate (all-tied) fits excluded from the aggregates.
    pub excluded: usize,
    /// r·bias, present in the bias/variance approximation study.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_bias: Option<f64>,
    /// k·variance, present in the bias/variance approximation study.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_variance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub rows: Vec<StudyRow>,
}

#[derive(Debug, Clone, Copy)]
enum CellOutcome {
    Estimate(f64),
    Degenerate,
    Failed,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    estimator: Estimator,
    grid_value: usize,
    effective_size: usize,
}

/// Run a Monte Carlo study over the configured estimator grids.
pub fn run_study(config: &StudyConfig) -> Result<StudyResult> {
    config.validate()?;
    let alpha0 = config.resolved_alpha0()?;
    let truncate = config.resolved_truncate();

    let mut cells: Vec<Cell> = config
        .mle_block_sizes
        .iter()
        .map(|&r| Cell {
            estimator: Estimator::BlockMaxMle,
            grid_value: r,
            effective_size: config.n / r,
        })
        .collect();
    cells.extend(config.hill_counts.iter().map(|&k| Cell {
        estimator: Estimator::Hill,
        grid_value: k,
        effective_size: k,
    }));

    let outcomes: Vec<Vec<CellOutcome>> = (0..config.replications)
        .into_par_iter()
        .map(|rep| {
            let mut stream = RngStream::new(config.master_seed, rep as u64);
            let series = match simulate::generate(&config.model, config.n, &mut stream) {
                Ok(s) => s,
                Err(_) => return vec![CellOutcome::Failed; cells.len()],
            };
            cells
                .iter()
                .map(|cell| estimate_cell(cell, &series, truncate))
                .collect()
        })
        .collect();

    let rows = cells
        .iter()
        .enumerate()
        .map(|(ci, cell)| {
            aggregate_cell(
                cell,
                outcomes.iter().map(|rep| rep[ci]),
                config.replications,
                alpha0,
                &config.model.to_string(),
                config.master_seed,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StudyResult { rows })
}

fn estimate_cell(cell: &Cell, series: &[f64], truncate: Option<f64>) -> CellOutcome {
    match cell.estimator {
        Estimator::BlockMaxMle => {
            let spec = match BlockSpec::new(cell.grid_value, truncate) {
                Ok(s) => s,
                Err(_) => return CellOutcome::Failed,
            };
            match blocks::extract(series, spec).and_then(|s| fit_alpha(&s)) {
                Ok(Some(a)) => CellOutcome::Estimate(a),
                Ok(None) => CellOutcome::Degenerate,
                Err(_) => CellOutcome::Failed,
            }
        }
        Estimator::Hill => {
            let out = Sample::new(series.to_vec())
                .and_then(|s| hill::hill(&s, cell.grid_value).map(|r| r.alpha_hat));
            match out {
                Ok(a) => CellOutcome::Estimate(a),
                Err(Error::DegenerateSample { .. }) => CellOutcome::Degenerate,
                Err(_) => CellOutcome::Failed,
            }
        }
    }
}

fn fit_alpha(sample: &Sample) -> Result<Option<f64>> {
    let r = solver::fit(sample, &SolverOptions::default())?;
    Ok(if r.degenerate { None } else { Some(r.alpha) })
}

fn aggregate_cell(
    cell: &Cell,
    outcomes: impl Iterator<Item = CellOutcome>,
    replications: usize,
    alpha0: f64,
    model_tag: &str,
    seed: u64,
) -> Result<StudyRow> {
    let mut estimates = Vec::with_capacity(replications);
    let mut degenerate = 0usize;
    let mut failures = 0usize;
    for o in outcomes {
        match o {
            CellOutcome::Estimate(a) => estimates.push(a),
            CellOutcome::Degenerate => degenerate += 1,
            CellOutcome::Failed => failures += 1,
        }
    }
    if failures as f64 > 0.01 * replications as f64 {
        return Err(Error::CellInvalid {
            cell: format!("{} {}={}", model_tag, cell.estimator.label(), cell.grid_value),
            failures,
            reps: replications,
        });
    }
    if estimates.len() < 2 {
        return Err(Error::CellInvalid {
            cell: format!("{} {}={}", model_tag, cell.estimator.label(), cell.grid_value),
            failures: replications - estimates.len(),
            reps: replications,
        });
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let variance = estimates.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1.0);
    let bias = mean - alpha0;
    let bias2 = bias * bias;
    Ok(StudyRow {
        model: model_tag.to_string(),
        estimator: cell.estimator.label().to_string(),
        r_or_k: cell.grid_value,
        effective_size: cell.effective_size,
        bias,
        bias2,
        variance,
        mse: bias2 + variance,
        n_reps: estimates.len(),
        seed,
        excluded: degenerate,
        r_bias: None,
        k_variance: None,
    })
}

/// Grid scenarios for the finite-sample bias/variance approximation study on
/// absolute-Cauchy data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BvScenario {
    /// Fixed number of blocks, varying block size.
    FixedK { k: usize, r_grid: Vec<usize> },
    /// Fixed block size, varying number of blocks.
    FixedR { r: usize, k_grid: Vec<usize> },
    /// Balanced growth k = r².
    Balanced { r_grid: Vec<usize> },
}

impl BvScenario {
    /// k = 200, r = 4..50.
    pub fn fixed_k_default() -> Self {
        BvScenario::FixedK {
            k: 200,
            r_grid: (4..=50).collect(),
        }
    }

    /// r = 25, k = 40, 50, …, 400.
    pub fn fixed_r_default() -> Self {
        BvScenario::FixedR {
            r: 25,
            k_grid: (4..=40).map(|i| 10 * i).collect(),
        }
    }

    /// r = 8..32 with k = r².
    pub fn balanced_default() -> Self {
        BvScenario::Balanced {
            r_grid: (8..=32).collect(),
        }
    }

    /// (r, k, grid variable is r?) triples.
    fn pairs(&self) -> Vec<(usize, usize, bool)> {
        match self {
            BvScenario::FixedK { k, r_grid } => r_grid.iter().map(|&r| (r, *k, true)).collect(),
            BvScenario::FixedR { r, k_grid } => k_grid.iter().map(|&k| (*r, k, false)).collect(),
            BvScenario::Balanced { r_grid } => r_grid.iter().map(|&r| (r, r * r, true)).collect(),
        }
    }
}

impl FromStr for BvScenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed-k" => Ok(BvScenario::fixed_k_default()),
            "fixed-r" => Ok(BvScenario::fixed_r_default()),
            "balanced" => Ok(BvScenario::balanced_default()),
            other => Err(Error::argument(format!(
                "unknown scenario `{other}`; expected fixed-k | fixed-r | balanced"
            ))),
        }
    }
}

/// Finite-sample approximation study of the theoretical absolute-Cauchy bias
/// and variance. Rows carry r·bias and k·variance for direct comparison with
/// the theory curves; n = r·k varies per grid point, with each replication's
/// longest series shared across grid points by prefix.
pub fn run_bias_variance_approx_study(
    scenario: &BvScenario,
    replications: usize,
    master_seed: u64,
) -> Result<StudyResult> {
    if replications < 2 {
        return Err(Error::argument(format!(
            "replications must be at least 2, got {replications}"
        )));
    }
    let pairs = scenario.pairs();
    if pairs.is_empty() {
        return Err(Error::argument("scenario grid is empty"));
    }
    let n_max = pairs.iter().map(|&(r, k, _)| r * k).max().unwrap();
    let model = SeriesModel::Iid(crate::simulate::IidFamily::AbsCauchy);
    let alpha0 = 1.0;

    let outcomes: Vec<Vec<CellOutcome>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let mut stream = RngStream::new(master_seed, rep as u64);
            let series = match simulate::generate(&model, n_max, &mut stream) {
                Ok(s) => s,
                Err(_) => return vec![CellOutcome::Failed; pairs.len()],
            };
            pairs
                .iter()
                .map(|&(r, k, _)| {
                    let spec = BlockSpec::new(r, None).unwrap();
                    match blocks::extract(&series[..r * k], spec).and_then(|s| fit_alpha(&s)) {
                        Ok(Some(a)) => CellOutcome::Estimate(a),
                        Ok(None) => CellOutcome::Degenerate,
                        Err(_) => CellOutcome::Failed,
                    }
                })
                .collect()
        })
        .collect();

    let model_tag = model.to_string();
    let rows = pairs
        .iter()
        .enumerate()
        .map(|(ci, &(r, k, grid_is_r))| {
            let cell = Cell {
                estimator: Estimator::BlockMaxMle,
                grid_value: if grid_is_r { r } else { k },
                effective_size: k,
            };
            let mut row = aggregate_cell(
                &cell,
                outcomes.iter().map(|rep| rep[ci]),
                replications,
                alpha0,
                &model_tag,
                master_seed,
            )?;
            row.r_bias = Some(r as f64 * row.bias);
            row.k_variance = Some(k as f64 * row.variance);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StudyResult { rows })
}

/// Theoretical curves to plot against the bv-approx rows.
pub fn cauchy_theory_r_bias(r: usize) -> f64 {
    r as f64 * asymptotics::cauchy_theoretical_bias(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::argument(format!(
                "unknown format `{other}`; expected csv | json"
            ))),
        }
    }
}

/// Format a number in decimal with 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:.11e}")
    }
}

/// Quote a CSV field if it contains a comma (model tags like `garch:0.5,0.367,0.367`).
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv<W: Write>(result: &StudyResult, mut w: W) -> std::io::Result<()> {
    let extras = result.rows.iter().any(|r| r.r_bias.is_some());
    write!(
        w,
        "model,estimator,r_or_k,effective_size,bias,bias2,variance,mse,n_reps,seed"
    )?;
    writeln!(w, "{}", if extras { ",r_bias,k_variance" } else { "" })?;
    for row in &result.rows {
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_field(&row.model),
            row.estimator,
            row.r_or_k,
            row.effective_size,
            fmt_sig(row.bias),
            fmt_sig(row.bias2),
            fmt_sig(row.variance),
            fmt_sig(row.mse),
            row.n_reps,
            row.seed
        )?;
        if extras {
            write!(
                w,
                ",{},{}",
                fmt_sig(row.r_bias.unwrap_or(f64::NAN)),
                fmt_sig(row.k_variance.unwrap_or(f64::NAN))
            )?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn write_json<W: Write>(result: &StudyResult, w: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(w, result).map_err(std::io::Error::other)
}

pub fn write_results(result: &StudyResult, path: &Path, format: OutputFormat) -> Result<()> {
    let wrap = |source: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut w = BufWriter::new(file);
    match format {
        OutputFormat::Csv => write_csv(result, &mut w).map_err(wrap)?,
        OutputFormat::Json => write_json(result, &mut w).map_err(wrap)?,
    }
    w.flush().map_err(wrap)
}
