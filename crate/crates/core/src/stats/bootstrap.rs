//! Percentile bootstrap for the difference between two commit aggregates.

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::stats::{aggregate, quantile_sorted, Aggregation};

/// Resampled aggregate deltas and their 95% percentile interval.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapDiff {
    /// aggregate(b*) - aggregate(a*) per resample.
    pub deltas: Vec<f64>,
    pub ci95: (f64, f64),
}

/// Bootstrap the difference of aggregates between samples `a` and `b`.
///
/// Each of the `resamples` rounds draws a full resample with replacement
/// from each side (a first, then b) and records the aggregate difference.
/// Fully deterministic for a given seed.
pub fn bootstrap_diff(
    a: &[f64],
    b: &[f64],
    resamples: usize,
    method: Aggregation,
    seed: u64,
) -> Result<BootstrapDiff> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut rng = Rng::seed_from(seed);
    let mut deltas = Vec::with_capacity(resamples);
    let mut ra = vec![0.0; a.len()];
    let mut rb = vec![0.0; b.len()];
    for _ in 0..resamples {
        for slot in ra.iter_mut() {
            *slot = a[rng.next_index(a.len())];
        }
        for slot in rb.iter_mut() {
            *slot = b[rng.next_index(b.len())];
        }
        deltas.push(aggregate(&rb, method)? - aggregate(&ra, method)?);
    }
    let mut sorted = deltas.clone();
    sorted.sort_by(f64::total_cmp);
    let ci95 = (
        quantile_sorted(&sorted, 0.025),
        quantile_sorted(&sorted, 0.975),
    );
    Ok(BootstrapDiff { deltas, ci95 })
}
