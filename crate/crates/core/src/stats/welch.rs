//! Two-sample comparison primitives: Welch's unequal-variances t-test,
//! Cohen's d, relative change, and practical significance.

use crate::error::{Error, Result};
use crate::model::{DCategory, DjCategory, PcCategory};
use crate::stats::special::betainc_reg;
use crate::stats::{mean, sample_variance};

/// Result of Welch's t-test. `t` is (mean(a) - mean(b)) / se.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchTest {
    pub t: f64,
    pub df: f64,
    pub p: f64,
}

/// Welch's unequal variances t-test, two-sided.
///
/// Degrees of freedom by Welch-Satterthwaite; p-value through the
/// regularized incomplete beta. When both samples are constant and equal
/// the result is (t = 0, p = 1); constant but different samples are the
/// `SignificantDegenerate` error (an infinitely significant difference,
/// reported as p = 0 by callers that choose to continue).
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<WelchTest> {
    if a.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: a.len(),
            min: 2,
        });
    }
    if b.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: b.len(),
            min: 2,
        });
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a), sample_variance(b));

    if va == 0.0 && vb == 0.0 {
        if ma == mb {
            return Ok(WelchTest {
                t: 0.0,
                df: na + nb - 2.0,
                p: 1.0,
            });
        }
        return Err(Error::SignificantDegenerate);
    }

    let sea = va / na;
    let seb = vb / nb;
    let se = (sea + seb).sqrt();
    let t = (ma - mb) / se;
    let df = (sea + seb) * (sea + seb) / (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    Ok(WelchTest {
        t,
        df,
        p: student_t_two_sided_p(t, df),
    })
}

/// Two-sided tail probability of Student's t with `df` degrees of freedom:
/// P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
pub fn student_t_two_sided_p(t: f64, df: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    betainc_reg(0.5 * df, 0.5, df / (df + t * t)).clamp(0.0, 1.0)
}

/// Cohen's d with its configured category.
///
/// d = (mean(b) - mean(a)) / s_p with the pooled standard deviation
/// s_p = sqrt(((n_a-1)s_a^2 + (n_b-1)s_b^2) / (n_a+n_b-2)). Note the sign
/// convention: positive d means `b` is larger.
pub fn cohens_d(a: &[f64], b: &[f64], cuts: &[f64; 3]) -> Result<(f64, DCategory)> {
    if a.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: a.len(),
            min: 2,
        });
    }
    if b.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: b.len(),
            min: 2,
        });
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let pooled =
        ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / (na + nb - 2.0);
    let sp = pooled.sqrt();
    if sp == 0.0 {
        return Err(Error::DegeneratePooledSd);
    }
    let d = (mean(b) - mean(a)) / sp;
    Ok((d, d_category(d, cuts)))
}

/// Boundary convention: negligible for |d| <= first cut, the upper bound of
/// each band is inclusive.
pub fn d_category(d: f64, cuts: &[f64; 3]) -> DCategory {
    let ad = d.abs();
    if ad <= cuts[0] {
        DCategory::Negligible
    } else if ad <= cuts[1] {
        DCategory::Small
    } else if ad <= cuts[2] {
        DCategory::Medium
    } else {
        DCategory::Large
    }
}

/// Relative change |m_t - m_b| / m_b over commit aggregates.
///
/// Bands: minor below the first cut, moderate from there to the second cut,
/// major at or above it.
pub fn relative_change(m_b: f64, m_t: f64, cuts: &[f64; 2]) -> Result<(f64, PcCategory)> {
    if m_b <= 0.0 {
        return Err(Error::InvalidBaseline(m_b));
    }
    let pc = ((m_t - m_b) / m_b).abs();
    let cat = if pc < cuts[0] {
        PcCategory::Minor
    } else if pc < cuts[1] {
        PcCategory::Moderate
    } else {
        PcCategory::Major
    };
    Ok((pc, cat))
}

/// Practical significance: the signed delta m_t - m_b in joules, banded
/// relative to the baseline aggregate. Improvements (negative delta) are
/// always `info` - they sit below any positive fraction of m_b.
pub fn practical_significance(m_b: f64, m_t: f64, cuts: &[f64; 2]) -> Result<(f64, DjCategory)> {
    if m_b <= 0.0 {
        return Err(Error::InvalidBaseline(m_b));
    }
    let dj = m_t - m_b;
    let cat = if dj < cuts[0] * m_b {
        DjCategory::Info
    } else if dj < cuts[1] * m_b {
        DjCategory::Warning
    } else {
        DjCategory::Critical
    };
    Ok((dj, cat))
}
