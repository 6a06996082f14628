//! Assembles the statistical primitives into the per-commit classification
//! and the series-level views (change points, CUSUM).

pub mod changepoint;
pub mod classify;

pub use changepoint::{cusum, cusum_of_values, detect_change_points};
pub use classify::{classify_change, match_context_tags};

use serde::{Deserialize, Serialize};

use crate::config::{AnalysisConfig, CusumMode};
use crate::model::{ChangeEvent, CommitDistribution};

/// A commit that produced no change event, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCommit {
    pub commit_id: String,
    pub reason: String,
}

/// Output of the detection pass over a chronological distribution list.
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub events: Vec<ChangeEvent>,
    pub skipped: Vec<SkippedCommit>,
    /// Aggregate energy per input distribution, chronological.
    pub aggregates: Vec<f64>,
    pub cusum: Vec<f64>,
    pub change_points: Vec<usize>,
}

fn eligibility(dist: &CommitDistribution, cfg: &AnalysisConfig) -> Option<String> {
    if dist.samples.len() < 2 {
        return Some(format!(
            "too few usable samples ({} < 2)",
            dist.samples.len()
        ));
    }
    if dist.transient_outlier {
        return Some("transient outlier".into());
    }
    if cfg.exclude_non_normal && dist.is_normal == Some(false) {
        return Some("non-normal distribution".into());
    }
    None
}

/// Classify every eligible commit against its nearest preceding eligible
/// commit. `distributions` must be sorted oldest-first with normality and
/// outlier flags already populated.
pub fn detect_all(distributions: &[CommitDistribution], cfg: &AnalysisConfig) -> Detection {
    let mut events = Vec::new();
    let mut skipped = Vec::new();
    let mut baseline: Option<&CommitDistribution> = None;

    for dist in distributions {
        if let Some(reason) = eligibility(dist, cfg) {
            skipped.push(SkippedCommit {
                commit_id: dist.commit.id.clone(),
                reason,
            });
            continue;
        }
        match baseline {
            None => skipped.push(SkippedCommit {
                commit_id: dist.commit.id.clone(),
                reason: "no eligible baseline".into(),
            }),
            Some(base) => match classify_change(base, dist, cfg) {
                Ok(event) => events.push(event),
                Err(err) => skipped.push(SkippedCommit {
                    commit_id: dist.commit.id.clone(),
                    reason: format!("classification skipped: {err}"),
                }),
            },
        }
        baseline = Some(dist);
    }

    let aggregates: Vec<f64> = distributions.iter().map(|d| d.aggregate).collect();
    let cusum_series = match cfg.cusum_mode {
        CusumMode::MeanDeviations => cusum(&aggregates),
        CusumMode::SignificantDelta => {
            let values: Vec<f64> = distributions
                .iter()
                .map(|d| {
                    events
                        .iter()
                        .find(|e| e.test == d.commit.id && e.level >= 1)
                        .map_or(0.0, |e| e.delta_j)
                })
                .collect();
            cusum_of_values(&values)
        }
    };
    let change_points = detect_change_points(&aggregates, cfg.changepoint_penalty);

    Detection {
        events,
        skipped,
        aggregates,
        cusum: cusum_series,
        change_points,
    }
}
