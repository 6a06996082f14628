//! Per-commit-pair classification on the 5-level scale.
//!
//! Levels are checked independently and are not cumulative: 1 significance
//! (Welch), 2 effect size (Cohen's d), 3 relative change, 4 practical
//! significance, 5 context tags. The final level is the highest satisfied
//! one, gated on level-1 significance; a commit that fails the t-test stays
//! at level 0 regardless of the other verdicts.

use crate::config::AnalysisConfig;
use crate::error::Result;
use crate::model::{ChangeEvent, CommitDistribution, DCategory, Direction, DjCategory, PcCategory};
use crate::stats::welch::{cohens_d, practical_significance, relative_change, welch_t_test};

/// Case-insensitive whole-word tag matches, returned in tag-list order.
///
/// A tag matches when it appears bounded by non-word characters (word
/// characters are alphanumerics and underscore), so "benchmark" does not
/// fire on "benchmarking".
pub fn match_context_tags(message: &str, tags: &[String]) -> Vec<String> {
    let lowered = message.to_lowercase();
    tags.iter()
        .filter(|tag| !tag.is_empty() && contains_word(&lowered, tag))
        .cloned()
        .collect()
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn contains_word(haystack: &str, needle: &str) -> bool {
    let mut from = 0;
    while let Some(rel) = haystack[from..].find(needle) {
        let start = from + rel;
        let end = start + needle.len();
        let before_ok = haystack[..start]
            .chars()
            .next_back()
            .is_none_or(|c| !is_word_char(c));
        let after_ok = haystack[end..]
            .chars()
            .next()
            .is_none_or(|c| !is_word_char(c));
        if before_ok && after_ok {
            return true;
        }
        from = start + haystack[start..].chars().next().map_or(1, char::len_utf8);
    }
    false
}

/// Compare a test commit against its baseline and classify the change.
///
/// Both distributions need at least 2 usable samples; statistical
/// degeneracies (constant samples on both sides with differing means, zero
/// pooled sd) propagate as errors and the caller records the pair as
/// classification-skipped.
pub fn classify_change(
    baseline: &CommitDistribution,
    test: &CommitDistribution,
    cfg: &AnalysisConfig,
) -> Result<ChangeEvent> {
    let welch = welch_t_test(&baseline.samples, &test.samples)?;
    let (d, d_cat) = cohens_d(&baseline.samples, &test.samples, &cfg.cohens_d_thresholds)?;
    let m_b = baseline.aggregate;
    let m_t = test.aggregate;
    let (pc, pc_cat) = relative_change(m_b, m_t, &cfg.percent_change_thresholds)?;
    let (dj, dj_cat) = practical_significance(m_b, m_t, &cfg.practical_thresholds)?;
    let matched_tags = match_context_tags(&test.commit.message, &cfg.context_tags);

    let level_satisfied = [
        welch.p < cfg.significance_alpha,
        d_cat != DCategory::Negligible,
        pc_cat != PcCategory::Minor,
        dj_cat != DjCategory::Info,
        !matched_tags.is_empty(),
    ];
    let level = if level_satisfied[0] {
        (1..=5).filter(|&k| level_satisfied[k - 1]).max().unwrap() as u8
    } else {
        0
    };
    let direction = if level >= 1 {
        if m_t > m_b {
            Direction::Regression
        } else if m_t < m_b {
            Direction::Improvement
        } else {
            Direction::None
        }
    } else {
        Direction::None
    };

    let event = ChangeEvent {
        baseline: baseline.commit.id.clone(),
        test: test.commit.id.clone(),
        m_b,
        m_t,
        t_statistic: welch.t,
        welch_df: welch.df,
        p_value: welch.p,
        cohens_d: d,
        d_category: d_cat,
        percent_change: pc,
        pc_category: pc_cat,
        delta_j: dj,
        dj_category: dj_cat,
        matched_tags,
        level_satisfied,
        level,
        direction,
    };
    debug_assert_eq!(event.validate(), Ok(()));
    Ok(event)
}
