//! Disjoint block maxima extraction with optional left-truncation.

use crate::error::{Error, Result};
use crate::frechet::Sample;

/// Block size together with an optional truncation floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockSpec {
    /// Block size r ≥ 1.
    pub r: usize,
    /// Left-truncation floor c: each block maximum becomes max(M, c).
    pub truncate: Option<f64>,
}

impl BlockSpec {
    pub fn new(r: usize, truncate: Option<f64>) -> Result<Self> {
        if r < 1 {
            return Err(Error::argument("block size must be at least 1"));
        }
        if let Some(c) = truncate {
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::argument(format!(
                    "truncation floor must be positive, got {c}"
                )));
            }
        }
        Ok(BlockSpec { r, truncate })
    }
}

/// Extract the k = ⌊n/r⌋ maxima of disjoint consecutive blocks; the trailing
/// partial block is discarded.
pub fn extract(series: &[f64], spec: BlockSpec) -> Result<Sample> {
    let n = series.len();
    if n < spec.r {
        return Err(Error::argument(format!(
            "series of length {n} is shorter than block size {}",
            spec.r
        )));
    }
    let k = n / spec.r;
    let mut maxima = Vec::with_capacity(k);
    for i in 0..k {
        let block = &series[i * spec.r..(i + 1) * spec.r];
        let mut m = block.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if let Some(c) = spec.truncate {
            m = m.max(c);
        }
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::domain(format!(
                "block maximum {m} at block {i} is not positive; set a truncation floor"
            )));
        }
        maxima.push(m);
    }
    Sample::new(maxima)
}
