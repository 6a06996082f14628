//! Report generation: summary tallies and the self-contained HTML page.

pub mod html;
pub mod plots;
pub mod svg;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analyze::{read_events, read_series, EventsBundle, SeriesBundle};
use crate::campaign::CampaignManifest;
use crate::error::{Error, Result};
use crate::model::Direction;

pub const SUMMARY_FILE: &str = "summary.json";
pub const INDEX_FILE: &str = "index.html";

/// Campaign-level tallies, recounted from the bundles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryBundle {
    pub schema: u32,
    /// Total commits in the campaign, measured or not.
    pub commits: usize,
    /// Commits whose samples passed the Shapiro-Wilk test.
    pub normal: usize,
    /// normal / commits.
    pub normal_rate: f64,
    /// Events with level >= 1.
    pub significant: usize,
    pub regressions: usize,
    pub improvements: usize,
    pub transient_outliers: usize,
    /// Events per final level, index 0..=5.
    pub by_level: Vec<usize>,
}

/// Recount the summary tallies from the two bundles.
pub fn summarize(series: &SeriesBundle, events: &EventsBundle) -> SummaryBundle {
    let commits = series.commits.len();
    let normal = series
        .commits
        .iter()
        .filter(|r| r.is_normal == Some(true))
        .count();
    let significant = events.events.iter().filter(|e| e.level >= 1).count();
    let regressions = events
        .events
        .iter()
        .filter(|e| e.level >= 1 && e.direction == Direction::Regression)
        .count();
    let improvements = events
        .events
        .iter()
        .filter(|e| e.level >= 1 && e.direction == Direction::Improvement)
        .count();
    let transient_outliers = series
        .commits
        .iter()
        .filter(|r| r.transient_outlier == Some(true))
        .count();
    let mut by_level = vec![0usize; 6];
    for e in &events.events {
        by_level[e.level as usize] += 1;
    }
    SummaryBundle {
        schema: crate::config::SCHEMA_VERSION,
        commits,
        normal,
        normal_rate: if commits == 0 {
            0.0
        } else {
            normal as f64 / commits as f64
        },
        significant,
        regressions,
        improvements,
        transient_outliers,
        by_level,
    }
}

/// Render the report from the bundles in `dir` into the same directory:
/// writes `index.html` and `summary.json`, returns the index path.
///
/// Rendering is deterministic: the same bundles produce byte-identical
/// output.
pub fn render_report(dir: &Path) -> Result<PathBuf> {
    let events = read_events(dir)?;
    let series = read_series(dir)?;
    let manifest = CampaignManifest::load(&dir.join("campaign.json")).ok();
    let summary = summarize(&series, &events);

    let mut summary_text = serde_json::to_string_pretty(&summary)?;
    summary_text.push('\n');
    let summary_path = dir.join(SUMMARY_FILE);
    std::fs::write(&summary_path, summary_text).map_err(|e| Error::ReportIo {
        path: summary_path.clone(),
        source: e,
    })?;

    let page = html::render_page(&series, &events, &summary, manifest.as_ref());
    let index_path = dir.join(INDEX_FILE);
    std::fs::write(&index_path, page).map_err(|e| Error::ReportIo {
        path: index_path.clone(),
        source: e,
    })?;
    Ok(index_path)
}
