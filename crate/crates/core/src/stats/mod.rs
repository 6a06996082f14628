//! Statistical primitives: normality testing, aggregation, outlier
//! filtering, two-sample tests, effect sizes, and bootstrap resampling.

pub mod bootstrap;
pub mod outliers;
pub mod shapiro;
pub mod special;
pub mod welch;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How per-commit sample lists are collapsed to a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    #[default]
    Median,
    Mean,
}

/// Collapse a sample list with the configured aggregation.
///
/// Median of an even-length list is the mean of the two middle values.
pub fn aggregate(samples: &[f64], method: Aggregation) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(match method {
        Aggregation::Median => median(samples),
        Aggregation::Mean => samples.iter().sum::<f64>() / samples.len() as f64,
    })
}

pub fn median(samples: &[f64]) -> f64 {
    debug_assert!(!samples.is_empty());
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Median absolute deviation from the median.
pub fn mad(samples: &[f64]) -> f64 {
    let m = median(samples);
    let devs: Vec<f64> = samples.iter().map(|x| (x - m).abs()).collect();
    median(&devs)
}

/// Type-7 quantile (linear interpolation between order statistics), the
/// convention pinned for every quartile in this crate. `sorted` must be
/// ascending.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 >= n {
        sorted[n - 1]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

pub fn quantile(samples: &[f64], p: f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, p)
}

pub fn mean(samples: &[f64]) -> f64 {
    debug_assert!(!samples.is_empty());
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Unbiased sample variance (n − 1 denominator).
pub fn sample_variance(samples: &[f64]) -> f64 {
    debug_assert!(samples.len() >= 2);
    let m = mean(samples);
    samples.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (samples.len() - 1) as f64
}
