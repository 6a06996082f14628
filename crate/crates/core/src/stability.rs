//! Pre-campaign stability verification.
//!
//! The host must be in a steady energy state before measurements begin.
//! The probe yields successive cumulative-energy readings; the deltas
//! between consecutive readings are the analyzed samples (cumulative
//! counters such as RAPL grow monotonically, so only the rate of change is
//! informative). Warm-up deltas form a baseline; each probe delta is then
//! scored individually against that baseline with the modified z-score
//! z = 0.6745 * (x - median) / MAD and the run halts at the first score
//! beyond the configured threshold.

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::model::{StabilityReport, StabilityVerdict};
use crate::stats::{mad, median};

/// Source of successive cumulative-energy readings in joules.
pub trait EnergyProbe {
    fn read_joules(&mut self) -> Result<f64>;
}

/// Modified z-scores of `samples` against the `baseline` distribution.
///
/// The median and MAD come from the baseline only; probe samples are each
/// compared to that fixed reference. Errors with `MadDegenerate` when the
/// baseline has zero spread.
pub fn modified_z_scores(samples: &[f64], baseline: &[f64]) -> Result<Vec<f64>> {
    assert!(!baseline.is_empty(), "baseline must be non-empty");
    let center = median(baseline);
    let spread = mad(baseline);
    if spread == 0.0 {
        return Err(Error::MadDegenerate);
    }
    Ok(samples
        .iter()
        .map(|x| 0.6745 * (x - center) / spread)
        .collect())
}

/// Score one probe delta against the baseline, falling back to the
/// degenerate rule when the baseline MAD is zero: a zero-spread baseline
/// makes any deviation infinitely surprising, so only an exact match of
/// the baseline median scores 0 (stable); anything else scores +-infinity.
fn score_against(baseline_median: f64, baseline_mad: f64, x: f64) -> f64 {
    if baseline_mad == 0.0 {
        if x == baseline_median {
            0.0
        } else {
            (x - baseline_median).signum() * f64::INFINITY
        }
    } else {
        0.6745 * (x - baseline_median) / baseline_mad
    }
}

/// Run the stability protocol against `probe`.
///
/// Collects `stability_warmup_samples` baseline deltas (one more reading
/// than deltas), then scores up to `stability_probe_samples` further deltas,
/// halting at the first |z| above `stability_z_threshold`.
pub fn verify_stability(
    probe: &mut dyn EnergyProbe,
    cfg: &PipelineConfig,
) -> Result<StabilityReport> {
    let mut previous = probe.read_joules()?;
    let mut baseline = Vec::with_capacity(cfg.stability_warmup_samples as usize);
    for _ in 0..cfg.stability_warmup_samples {
        let reading = probe.read_joules()?;
        baseline.push(reading - previous);
        previous = reading;
    }
    let center = median(&baseline);
    let spread = mad(&baseline);

    let mut scores = Vec::with_capacity(cfg.stability_probe_samples as usize);
    let mut first_violation = None;
    for i in 0..cfg.stability_probe_samples as usize {
        let reading = probe.read_joules()?;
        let delta = reading - previous;
        previous = reading;
        let z = score_against(center, spread, delta);
        scores.push(z);
        if z.abs() > cfg.stability_z_threshold {
            first_violation = Some(i);
            break;
        }
    }

    Ok(StabilityReport {
        baseline_samples: baseline,
        probe_scores: scores,
        verdict: if first_violation.is_some() {
            StabilityVerdict::Unstable
        } else {
            StabilityVerdict::Stable
        },
        first_violation_index: first_violation,
    })
}

/// Probe replaying a fixed sequence of deltas as cumulative readings.
pub struct TraceProbe {
    cumulative: f64,
    deltas: Vec<f64>,
    pos: usize,
}

impl TraceProbe {
    pub fn new(deltas: Vec<f64>) -> Self {
        TraceProbe {
            cumulative: 0.0,
            deltas,
            pos: 0,
        }
    }

    /// Constant-delta probe, enough for any warmup/probe configuration.
    pub fn constant(delta: f64, len: usize) -> Self {
        TraceProbe::new(vec![delta; len])
    }
}

impl EnergyProbe for TraceProbe {
    fn read_joules(&mut self) -> Result<f64> {
        // First call returns the initial cumulative level; each later call
        // consumes one delta.
        if self.pos == 0 {
            self.pos = 1;
            return Ok(self.cumulative);
        }
        let idx = self.pos - 1;
        if idx >= self.deltas.len() {
            return Err(Error::BackendUnavailable(
                "stability trace exhausted".into(),
            ));
        }
        self.cumulative += self.deltas[idx];
        self.pos += 1;
        Ok(self.cumulative)
    }
}
