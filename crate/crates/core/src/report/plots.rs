//! Plot-data computation, kept separate from SVG rendering so the numbers
//! are testable on their own.

use serde::{Deserialize, Serialize};

use crate::analyze::CommitRecord;
use crate::model::{ChangeEvent, Direction};
use crate::stats::bootstrap::bootstrap_diff;
use crate::stats::{quantile_sorted, Aggregation};

/// One measured commit on the evolution plot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionPoint {
    /// Index into the measured-commit series (x position).
    pub index: usize,
    pub commit_id: String,
    pub short_id: String,
    pub date: String,
    pub aggregate: f64,
}

/// Vertical bar for an event of level >= 2, colored by direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionBar {
    pub index: usize,
    pub direction: Direction,
}

/// Ring annotation around a commit, colored and sized by level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionRing {
    pub index: usize,
    pub level: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct EvolutionPlotData {
    pub points: Vec<EvolutionPoint>,
    pub bars: Vec<EvolutionBar>,
    pub rings: Vec<EvolutionRing>,
}

/// Build the evolution plot: one point per measured commit, bars and rings
/// for every event with level >= 2.
pub fn evolution_plot_data(records: &[CommitRecord], events: &[ChangeEvent]) -> EvolutionPlotData {
    let mut data = EvolutionPlotData::default();
    let mut index_of = std::collections::HashMap::new();
    for record in records {
        let Some(aggregate) = record.aggregate else {
            continue;
        };
        let index = data.points.len();
        index_of.insert(record.id.as_str(), index);
        data.points.push(EvolutionPoint {
            index,
            commit_id: record.id.clone(),
            short_id: record.short_id.clone(),
            date: record.date.format("%Y-%m-%d").to_string(),
            aggregate,
        });
    }
    for event in events.iter().filter(|e| e.level >= 2) {
        if let Some(&index) = index_of.get(event.test.as_str()) {
            data.bars.push(EvolutionBar {
                index,
                direction: event.direction,
            });
            data.rings.push(EvolutionRing {
                index,
                level: event.level,
            });
        }
    }
    data
}

/// Five-number summary with type-7 quartiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

pub fn box_stats(samples: &[f64]) -> BoxStats {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    BoxStats {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
    }
}

/// Gaussian-kernel density outline for the violin plot, evaluated on a
/// regular grid. None when the sample is constant (zero bandwidth).
pub fn violin_outline(samples: &[f64], grid_points: usize) -> Option<Vec<(f64, f64)>> {
    let n = samples.len();
    if n < 3 {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let sd = (sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64).sqrt();
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    // Silverman's rule of thumb.
    let spread = if iqr > 0.0 { sd.min(iqr / 1.349) } else { sd };
    let h = 0.9 * spread * (n as f64).powf(-0.2);
    if h.is_nan() || h <= 0.0 {
        return None;
    }
    let lo = sorted[0] - 3.0 * h;
    let hi = sorted[n - 1] + 3.0 * h;
    let step = (hi - lo) / (grid_points - 1) as f64;
    let norm = 1.0 / (n as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    let outline = (0..grid_points)
        .map(|i| {
            let g = lo + step * i as f64;
            let density = norm
                * sorted
                    .iter()
                    .map(|x| {
                        let u = (g - x) / h;
                        (-0.5 * u * u).exp()
                    })
                    .sum::<f64>();
            (g, density)
        })
        .collect();
    Some(outline)
}

/// Paired sorted-quantile Q-Q points, interpolated to the smaller sample.
pub fn qq_points(a: &[f64], b: &[f64]) -> Vec<(f64, f64)> {
    let m = a.len().min(b.len());
    if m < 2 {
        return Vec::new();
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(f64::total_cmp);
    sb.sort_by(f64::total_cmp);
    (0..m)
        .map(|i| {
            let p = i as f64 / (m - 1) as f64;
            (quantile_sorted(&sa, p), quantile_sorted(&sb, p))
        })
        .collect()
}

/// Histogram of bootstrap deltas plus the 95% interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapPanel {
    pub bins: Vec<(f64, f64, usize)>,
    pub ci95: (f64, f64),
    pub resamples: usize,
}

pub fn bootstrap_panel(
    a: &[f64],
    b: &[f64],
    resamples: usize,
    method: Aggregation,
    seed: u64,
    n_bins: usize,
) -> Option<BootstrapPanel> {
    let diff = bootstrap_diff(a, b, resamples, method, seed).ok()?;
    let lo = diff.deltas.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = diff
        .deltas
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo {
        (hi - lo) / n_bins as f64
    } else {
        1.0
    };
    let mut bins = vec![0usize; n_bins];
    for &d in &diff.deltas {
        let idx = (((d - lo) / width) as usize).min(n_bins - 1);
        bins[idx] += 1;
    }
    Some(BootstrapPanel {
        bins: bins
            .into_iter()
            .enumerate()
            .map(|(i, count)| (lo + width * i as f64, lo + width * (i + 1) as f64, count))
            .collect(),
        ci95: diff.ci95,
        resamples,
    })
}

/// All panels comparing two commit distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparePanels {
    pub baseline_id: String,
    pub test_id: String,
    pub box_baseline: BoxStats,
    pub box_test: BoxStats,
    pub violin_baseline: Option<Vec<(f64, f64)>>,
    pub violin_test: Option<Vec<(f64, f64)>>,
    pub qq: Vec<(f64, f64)>,
    pub bootstrap: Option<BootstrapPanel>,
}

/// Violin grid resolution; also used by the normalization test.
pub const VIOLIN_GRID: usize = 128;

pub fn distribution_compare_data(
    baseline_id: &str,
    a: &[f64],
    test_id: &str,
    b: &[f64],
    resamples: usize,
    method: Aggregation,
    seed: u64,
) -> Option<ComparePanels> {
    if a.len() < 3 || b.len() < 3 {
        return None;
    }
    Some(ComparePanels {
        baseline_id: baseline_id.to_string(),
        test_id: test_id.to_string(),
        box_baseline: box_stats(a),
        box_test: box_stats(b),
        violin_baseline: violin_outline(a, VIOLIN_GRID),
        violin_test: violin_outline(b, VIOLIN_GRID),
        qq: qq_points(a, b),
        bootstrap: bootstrap_panel(a, b, resamples, method, seed, 30),
    })
}
