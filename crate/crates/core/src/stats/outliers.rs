//! Transient-outlier detection over the per-commit aggregate series.
//!
//! Each commit's aggregate is checked against the Tukey fences of a rolling
//! window of its neighbours, then maximal runs of flagged commits longer
//! than the configured maximum are restored: a short excursion is a
//! measurement artifact, a sustained one is a real change.

use serde::{Deserialize, Serialize};

use crate::stats::quantile_sorted;

/// Window placement for the rolling IQR computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum WindowMode {
    /// floor(window/2) commits on each side of the target.
    #[default]
    Centered,
    /// The `window` commits preceding the target.
    Trailing,
}

#[derive(Debug, Clone, Copy)]
pub struct OutlierParams {
    /// Rolling window size in commits.
    pub window: usize,
    pub mode: WindowMode,
    /// Tukey multiplier k for the fences [Q1 - k*IQR, Q3 + k*IQR].
    pub tukey_multiplier: f64,
    /// Maximal flagged-run length still treated as transient.
    pub max_transient_outliers: usize,
}

/// Per-commit verdict. `evaluated` is false when the window held fewer than
/// four usable neighbours and the commit passed unfiltered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutlierVerdict {
    pub flagged: bool,
    pub evaluated: bool,
}

/// Flag transient outliers in a chronological aggregate series.
///
/// The target's own value is excluded from its window. Zero-IQR windows
/// degenerate to the exact fences [Q1, Q3], so any deviation from a
/// constant neighbourhood is flagged (and later restored if sustained).
pub fn filter_transient_outliers(series: &[f64], params: &OutlierParams) -> Vec<OutlierVerdict> {
    let n = series.len();
    let mut verdicts = Vec::with_capacity(n);
    for i in 0..n {
        let window = window_values(series, i, params);
        if window.len() < 4 {
            verdicts.push(OutlierVerdict {
                flagged: false,
                evaluated: false,
            });
            continue;
        }
        let mut sorted = window;
        sorted.sort_by(f64::total_cmp);
        let q1 = quantile_sorted(&sorted, 0.25);
        let q3 = quantile_sorted(&sorted, 0.75);
        let iqr = q3 - q1;
        let lo = q1 - params.tukey_multiplier * iqr;
        let hi = q3 + params.tukey_multiplier * iqr;
        verdicts.push(OutlierVerdict {
            flagged: series[i] < lo || series[i] > hi,
            evaluated: true,
        });
    }
    restore_sustained_runs(&mut verdicts, params.max_transient_outliers);
    verdicts
}

fn window_values(series: &[f64], i: usize, params: &OutlierParams) -> Vec<f64> {
    let n = series.len();
    let (start, end) = match params.mode {
        WindowMode::Centered => {
            let half = params.window / 2;
            (i.saturating_sub(half), (i + half + 1).min(n))
        }
        WindowMode::Trailing => (i.saturating_sub(params.window), i),
    };
    (start..end)
        .filter(|&j| j != i)
        .map(|j| series[j])
        .collect()
}

/// Un-flag every maximal run of consecutive flagged commits longer than
/// `max_run`: a sustained shift is a real change, not a transient.
fn restore_sustained_runs(verdicts: &mut [OutlierVerdict], max_run: usize) {
    let n = verdicts.len();
    let mut i = 0;
    while i < n {
        if !verdicts[i].flagged {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && verdicts[i].flagged {
            i += 1;
        }
        if i - start > max_run {
            for v in &mut verdicts[start..i] {
                v.flagged = false;
            }
        }
    }
}
