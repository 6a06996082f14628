//! Analysis phase: group raw measurements by commit, attach normality and
//! transient-outlier verdicts, run change detection, and emit the
//! machine-readable bundles the report is rendered from.

use std::collections::HashMap;
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::campaign::CampaignManifest;
use crate::config::AnalysisConfig;
use crate::detect::{detect_all, Detection};
use crate::error::{Error, Result};
use crate::model::{CommitDistribution, MeasurementSample};
use crate::stats::aggregate;
use crate::stats::outliers::{filter_transient_outliers, OutlierParams};
use crate::stats::shapiro::shapiro_wilk;

pub const EVENTS_FILE: &str = "events.json";
pub const SERIES_FILE: &str = "series.json";

/// One row of the per-commit table in `series.json`: every campaign commit
/// appears exactly once, measured or not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub id: String,
    pub short_id: String,
    pub date: DateTime<Utc>,
    pub message: String,
    /// Rows found in raw.csv for this commit.
    pub n_runs: u32,
    /// Rows with exit status 0; these form the sample list.
    pub n_passing: u32,
    /// Passing-run energies ordered by run index.
    pub samples: Vec<f64>,
    pub aggregate: Option<f64>,
    pub shapiro_w: Option<f64>,
    pub shapiro_p: Option<f64>,
    pub is_normal: Option<bool>,
    pub transient_outlier: Option<bool>,
    /// Filled when the commit produced no change event.
    pub exclusion_reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EventsBundle {
    pub schema: u32,
    pub events: Vec<crate::model::ChangeEvent>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesBundle {
    pub schema: u32,
    pub analysis_config: AnalysisConfig,
    pub rng_seed: u64,
    pub commits: Vec<CommitRecord>,
    /// CUSUM over the measured-commit aggregate series (records with an
    /// aggregate, in order); length is that series plus one.
    pub cusum: Vec<f64>,
    /// Change-point indices into the measured-commit aggregate series.
    pub change_points: Vec<usize>,
}

/// Everything the analysis produced, before serialization.
pub struct AnalysisArtifacts {
    pub distributions: Vec<CommitDistribution>,
    pub detection: Detection,
    pub records: Vec<CommitRecord>,
    pub rng_seed: u64,
}

/// Run the full analysis over raw samples.
///
/// Samples arrive in arbitrary (shuffled) order; they are grouped by commit
/// and processed in the campaign's chronological commit order, so shuffled
/// and sorted inputs yield identical bundles.
pub fn analyze_samples(
    manifest: &CampaignManifest,
    samples: &[MeasurementSample],
    cfg: &AnalysisConfig,
) -> Result<AnalysisArtifacts> {
    let known: HashMap<&str, usize> = manifest
        .commits
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();
    let build_failed: HashMap<&str, &str> = manifest
        .build_failures
        .iter()
        .map(|f| (f.commit_id.as_str(), f.reason.as_str()))
        .collect();

    let mut by_commit: Vec<Vec<&MeasurementSample>> = vec![Vec::new(); manifest.commits.len()];
    for sample in samples {
        match known.get(sample.commit_id.as_str()) {
            Some(&idx) => by_commit[idx].push(sample),
            None => log::warn!(
                "raw.csv row for commit {:?} not in campaign manifest, skipped",
                sample.commit_id
            ),
        }
    }

    // Per-commit sample lists ordered by run index, first row wins on
    // duplicate (commit, run) keys.
    let mut records: Vec<CommitRecord> = Vec::with_capacity(manifest.commits.len());
    let mut dists: Vec<Option<CommitDistribution>> = Vec::with_capacity(manifest.commits.len());
    for (commit, mut rows) in manifest.commits.iter().zip(by_commit) {
        rows.sort_by_key(|s| s.run_index);
        rows.dedup_by_key(|s| s.run_index);
        let n_runs = rows.len() as u32;
        let passing: Vec<f64> = rows
            .iter()
            .filter(|s| s.passed())
            .map(|s| s.energy_joules)
            .collect();
        let n_passing = passing.len() as u32;

        let mut record = CommitRecord {
            id: commit.id.clone(),
            short_id: commit.short_id.clone(),
            date: commit.author_date,
            message: commit.message.clone(),
            n_runs,
            n_passing,
            samples: passing.clone(),
            aggregate: None,
            shapiro_w: None,
            shapiro_p: None,
            is_normal: None,
            transient_outlier: None,
            exclusion_reason: None,
        };

        if let Some(reason) = build_failed.get(commit.id.as_str()) {
            record.exclusion_reason = Some(format!("build failed: {reason}"));
            records.push(record);
            dists.push(None);
            continue;
        }
        if passing.is_empty() {
            record.exclusion_reason = Some(if n_runs == 0 {
                "no samples".into()
            } else {
                "no passing samples".into()
            });
            records.push(record);
            dists.push(None);
            continue;
        }

        let agg = aggregate(&passing, cfg.aggregation)?;
        record.aggregate = Some(agg);
        let (w, p, is_normal) = match shapiro_wilk(&passing) {
            Ok(r) => (Some(r.w), Some(r.p), Some(r.p > cfg.normality_alpha)),
            Err(Error::DegenerateSample) => (None, None, Some(false)),
            Err(_) => (None, None, None), // outside the valid n range
        };
        record.shapiro_w = w;
        record.shapiro_p = p;
        record.is_normal = is_normal;
        records.push(record);
        dists.push(Some(CommitDistribution {
            commit: commit.clone(),
            samples: passing,
            shapiro_w: w,
            shapiro_p: p,
            is_normal,
            aggregate: agg,
            transient_outlier: false,
        }));
    }

    // Transient-outlier pass over the measured aggregate series.
    let mut measured: Vec<CommitDistribution> = dists.into_iter().flatten().collect();
    if measured.is_empty() {
        return Err(Error::NoData("no commit produced usable samples".into()));
    }
    let aggregates: Vec<f64> = measured.iter().map(|d| d.aggregate).collect();
    let verdicts = filter_transient_outliers(
        &aggregates,
        &OutlierParams {
            window: cfg.outlier_window as usize,
            mode: cfg.outlier_window_mode,
            tukey_multiplier: cfg.tukey_multiplier,
            max_transient_outliers: cfg.max_transient_outliers as usize,
        },
    );
    let record_of: HashMap<String, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id.clone(), i))
        .collect();
    for (dist, verdict) in measured.iter_mut().zip(&verdicts) {
        dist.transient_outlier = verdict.flagged;
        records[record_of[&dist.commit.id]].transient_outlier = Some(verdict.flagged);
    }

    let detection = detect_all(&measured, cfg);
    for skip in &detection.skipped {
        let rec = &mut records[record_of[&skip.commit_id]];
        rec.exclusion_reason = Some(skip.reason.clone());
    }

    Ok(AnalysisArtifacts {
        distributions: measured,
        detection,
        records,
        rng_seed: manifest.rng_seed,
    })
}

/// Write `events.json` and `series.json` into `dir`.
pub fn write_bundles(
    dir: &Path,
    artifacts: &AnalysisArtifacts,
    cfg: &AnalysisConfig,
) -> Result<()> {
    let events = EventsBundle {
        schema: crate::config::SCHEMA_VERSION,
        events: artifacts.detection.events.clone(),
    };
    let series = SeriesBundle {
        schema: crate::config::SCHEMA_VERSION,
        analysis_config: cfg.clone(),
        rng_seed: artifacts.rng_seed,
        commits: artifacts.records.clone(),
        cusum: artifacts.detection.cusum.clone(),
        change_points: artifacts.detection.change_points.clone(),
    };
    write_json(&dir.join(EVENTS_FILE), &events)?;
    write_json(&dir.join(SERIES_FILE), &series)?;
    Ok(())
}

pub fn read_events(dir: &Path) -> Result<EventsBundle> {
    read_json(&dir.join(EVENTS_FILE))
}

pub fn read_series(dir: &Path) -> Result<SeriesBundle> {
    read_json(&dir.join(SERIES_FILE))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::ReportIo {
        path: path.to_path_buf(),
        source: e,
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::NoData(format!("cannot read {path:?}: {e}")))?;
    Ok(serde_json::from_str(&text)?)
}
