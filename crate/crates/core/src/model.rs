//! Shared domain types: commits, samples, distributions, change events,
//! stability reports. All are immutable value objects, freely shareable
//! across threads, and serialize to JSON for the report data bundle.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

/// A commit under measurement, from git history or a synthetic manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRef {
    /// Full id: 40-hex sha for git sources, arbitrary key for manifests.
    pub id: String,
    /// 7-character prefix of `id` (the whole id when shorter).
    pub short_id: String,
    pub author_date: DateTime<Utc>,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<String>,
    /// Tags pointing at this commit (used by tag granularity).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

impl CommitRef {
    pub fn new(
        id: impl Into<String>,
        author_date: DateTime<Utc>,
        message: impl Into<String>,
    ) -> Self {
        let id = id.into();
        let short_id = short_id_of(&id);
        CommitRef {
            id,
            short_id,
            author_date,
            message: message.into(),
            parent_id: None,
            tags: Vec::new(),
        }
    }
}

pub fn short_id_of(id: &str) -> String {
    id.chars().take(7).collect()
}

/// One energy reading of one test-suite execution of one commit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSample {
    pub commit_id: String,
    pub run_index: u32,
    pub energy_joules: f64,
    pub duration_seconds: f64,
    pub exit_status: i32,
    pub temp_before_celsius: Option<f64>,
    pub temp_after_celsius: Option<f64>,
    pub wall_clock_start: DateTime<Utc>,
}

impl MeasurementSample {
    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }
}

/// All passing-run energies for one commit plus its quality flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommitDistribution {
    pub commit: CommitRef,
    /// energy_joules of passing runs, ordered by run index.
    pub samples: Vec<f64>,
    pub shapiro_w: Option<f64>,
    pub shapiro_p: Option<f64>,
    /// Defined iff 3 <= |samples| <= 5000; degenerate samples count as
    /// non-normal.
    pub is_normal: Option<bool>,
    pub aggregate: f64,
    pub transient_outlier: bool,
}

/// Effect-size category for Cohen's d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DCategory {
    Negligible,
    Small,
    Medium,
    Large,
}

/// Relative-change category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PcCategory {
    Minor,
    Moderate,
    Major,
}

/// Practical-significance category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DjCategory {
    Info,
    Warning,
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Regression,
    Improvement,
    None,
}

/// The pairwise statistical comparison of a commit against its baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChangeEvent {
    pub baseline: String,
    pub test: String,
    /// Baseline aggregate, joules.
    pub m_b: f64,
    /// Test aggregate, joules.
    pub m_t: f64,
    pub t_statistic: f64,
    pub welch_df: f64,
    pub p_value: f64,
    pub cohens_d: f64,
    pub d_category: DCategory,
    /// |m_t - m_b| / m_b, a non-negative fraction.
    pub percent_change: f64,
    pub pc_category: PcCategory,
    /// m_t - m_b, signed joules.
    pub delta_j: f64,
    pub dj_category: DjCategory,
    pub matched_tags: Vec<String>,
    /// Verdicts for levels 1..5 (index 0 is level 1).
    pub level_satisfied: [bool; 5],
    /// 0 = not significant, otherwise the highest satisfied level.
    pub level: u8,
    pub direction: Direction,
}

impl ChangeEvent {
    /// Check the internal-consistency invariants every emitted event must
    /// satisfy. Returns the first violation found.
    pub fn validate(&self) -> Result<(), String> {
        let rel_ok = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(a.abs()).max(1e-300);
        if !rel_ok(self.percent_change, (self.m_t - self.m_b).abs() / self.m_b) {
            return Err(format!(
                "percent_change {} != |m_t - m_b| / m_b for ({}, {})",
                self.percent_change, self.m_b, self.m_t
            ));
        }
        if !rel_ok(self.delta_j, self.m_t - self.m_b) {
            return Err(format!(
                "delta_j {} != m_t - m_b for ({}, {})",
                self.delta_j, self.m_b, self.m_t
            ));
        }
        let expected_level = if self.level_satisfied[0] {
            (1..=5)
                .filter(|&k| self.level_satisfied[k - 1])
                .max()
                .unwrap_or(0) as u8
        } else {
            0
        };
        if self.level != expected_level {
            return Err(format!(
                "level {} != max satisfied level {}",
                self.level, expected_level
            ));
        }
        let expected_dir = if self.level >= 1 {
            if self.m_t > self.m_b {
                Direction::Regression
            } else if self.m_t < self.m_b {
                Direction::Improvement
            } else {
                Direction::None
            }
        } else {
            Direction::None
        };
        if self.direction != expected_dir {
            return Err(format!(
                "direction {:?} != expected {:?}",
                self.direction, expected_dir
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilityVerdict {
    Stable,
    Unstable,
}

/// Outcome of the pre-campaign stability verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Baseline energy deltas collected during warm-up.
    pub baseline_samples: Vec<f64>,
    /// Modified z-scores of the probe deltas, in probe order. Scores are
    /// +-infinity on the degenerate zero-MAD fallback path.
    pub probe_scores: Vec<f64>,
    pub verdict: StabilityVerdict,
    pub first_violation_index: Option<usize>,
}
