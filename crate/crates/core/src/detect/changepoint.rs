//! Mean-shift change-point detection with PELT (Pruned Exact Linear Time).
//!
//! Segment cost is the within-segment sum of squared deviations from the
//! segment mean, computed from prefix sums. The search minimizes
//! total cost + penalty * (#segments - 1) exactly; ties on the objective
//! are broken toward fewer change points, then toward earlier previous
//! boundaries, so results are fully deterministic even on noise-free data
//! where the BIC penalty degenerates to zero.

use crate::config::ChangepointPenalty;
use crate::stats::mad;

/// Scaling constant 1/Phi^-1(3/4), turning a MAD into a normal sigma.
const MAD_TO_SIGMA: f64 = 1.4826022185056018;

/// Detect change points in `series`. Returned indices mark the first point
/// of each new segment (internal boundaries only, strictly inside 0..n).
///
/// Series shorter than 4 points yield no change points.
pub fn detect_change_points(series: &[f64], penalty: ChangepointPenalty) -> Vec<usize> {
    let n = series.len();
    if n < 4 {
        if n > 0 {
            log::warn!("change-point detection skipped: series of {n} points is too short");
        }
        return Vec::new();
    }
    let beta = match penalty {
        ChangepointPenalty::Fixed(v) => v,
        ChangepointPenalty::Bic => bic_penalty(series),
    };
    pelt(series, beta)
}

/// BIC-style penalty 2 * sigma^2 * ln(n), with sigma estimated robustly
/// from first differences: under piecewise-constant mean plus N(0, sigma^2)
/// noise the differences are N(0, 2 sigma^2) away from the (few) change
/// points, and the MAD ignores those.
pub fn bic_penalty(series: &[f64]) -> f64 {
    let diffs: Vec<f64> = series.windows(2).map(|w| w[1] - w[0]).collect();
    let sigma = mad(&diffs) * MAD_TO_SIGMA / std::f64::consts::SQRT_2;
    2.0 * sigma * sigma * (series.len() as f64).ln()
}

#[derive(Clone, Copy)]
struct Best {
    /// Accumulated cost plus penalties up to this boundary.
    total: f64,
    /// Number of change points used.
    cps: u32,
    /// Previous boundary on the optimal path.
    prev: usize,
}

fn pelt(series: &[f64], beta: f64) -> Vec<usize> {
    let n = series.len();
    let mut sum = vec![0.0; n + 1];
    let mut sumsq = vec![0.0; n + 1];
    for (i, &x) in series.iter().enumerate() {
        sum[i + 1] = sum[i] + x;
        sumsq[i + 1] = sumsq[i] + x * x;
    }
    // Sum of squared deviations from the mean on the half-open segment [a, b).
    let seg_cost = |a: usize, b: usize| -> f64 {
        let s = sum[b] - sum[a];
        sumsq[b] - sumsq[a] - s * s / (b - a) as f64
    };

    let mut best = vec![
        Best {
            total: 0.0,
            cps: 0,
            prev: 0
        };
        n + 1
    ];
    // Start below zero so the first segment does not pay a penalty.
    best[0].total = -beta;
    let mut candidates: Vec<usize> = vec![0];

    for t in 1..=n {
        let mut chosen = Best {
            total: f64::INFINITY,
            cps: u32::MAX,
            prev: 0,
        };
        for &tau in &candidates {
            let total = best[tau].total + seg_cost(tau, t) + beta;
            let cps = best[tau].cps + u32::from(tau > 0);
            if total < chosen.total
                || (total == chosen.total
                    && (cps < chosen.cps || (cps == chosen.cps && tau < chosen.prev)))
            {
                chosen = Best {
                    total,
                    cps,
                    prev: tau,
                };
            }
        }
        best[t] = chosen;
        // Prune candidates that can never be optimal again. The small slack
        // guards against floating-point round-off in the subadditivity of
        // the cost, keeping the search exact.
        let limit = chosen.total + 1e-9 * (1.0 + chosen.total.abs());
        candidates.retain(|&tau| best[tau].total + seg_cost(tau, t) <= limit);
        candidates.push(t);
    }

    let mut cps = Vec::new();
    let mut t = n;
    while t > 0 {
        let prev = best[t].prev;
        if prev > 0 {
            cps.push(prev);
        }
        t = prev;
    }
    cps.reverse();
    cps
}

/// Cumulative sum of deviations from the series mean: S_0 = 0,
/// S_i = S_{i-1} + (x_i - mean). The last element telescopes back to 0.
pub fn cusum(series: &[f64]) -> Vec<f64> {
    if series.is_empty() {
        return vec![0.0];
    }
    let mean = series.iter().sum::<f64>() / series.len() as f64;
    let mut out = Vec::with_capacity(series.len() + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for &x in series {
        acc += x - mean;
        out.push(acc);
    }
    out
}

/// Cumulative sum of per-commit values as-is (used for the significant
/// delta-J CUSUM variant).
pub fn cusum_of_values(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for &v in values {
        acc += v;
        out.push(acc);
    }
    out
}
