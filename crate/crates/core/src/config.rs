//! The two configuration documents: the pipeline config drives measurement
//! execution, the analysis config drives statistics and reporting. Both are
//! TOML with a `schema = 1` version header; a campaign is reconstructible
//! from the two files plus the seed.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats::outliers::WindowMode;
use crate::stats::Aggregation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    #[default]
    Commit,
    Branch,
    Tag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyBackendKind {
    #[default]
    PerfRapl,
    Trace,
}

/// Where the commit history comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepoSource {
    /// Git URL or local path.
    Git(String),
    /// Synthetic-mode manifest path.
    Manifest(PathBuf),
}

/// Which slice of history to measure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CommitRange {
    #[default]
    All,
    /// `oldest..newest` ref pair, resolved by the repository layer.
    Range(String),
    /// Newest N commits (returned oldest-first).
    MaxCount(u32),
}

/// Measurement-pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPipeline", into = "RawPipeline")]
pub struct PipelineConfig {
    pub repo_source: RepoSource,
    pub commit_range: CommitRange,
    pub granularity: Granularity,
    pub repetitions: u32,
    pub batch_size: u32,
    pub rng_seed: u64,
    pub build_command: String,
    pub test_command: String,
    pub energy_backend: EnergyBackendKind,
    /// Energy/duration manifest for the trace backend.
    pub trace_manifest: Option<PathBuf>,
    pub thermal_limit_celsius: f64,
    pub thermal_poll_seconds: f64,
    pub rest_seconds: f64,
    pub stability_warmup_samples: u32,
    pub stability_probe_samples: u32,
    pub stability_z_threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPipeline {
    #[serde(skip_serializing_if = "Option::is_none")]
    schema: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    repo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    manifest: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    commit_range: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_count: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    granularity: Option<Granularity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    repetitions: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    batch_size: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rng_seed: Option<RawSeed>,
    #[serde(skip_serializing_if = "Option::is_none")]
    build_command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    test_command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy_backend: Option<EnergyBackendKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_manifest: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    thermal_limit_celsius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    thermal_poll_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rest_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability_warmup_samples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability_probe_samples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stability_z_threshold: Option<f64>,
}

impl PipelineConfig {
    /// Load and validate a pipeline config document. Relative manifest
    /// paths are anchored to the config file's directory so the document
    /// works from any working directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigSyntax {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        let raw: RawPipeline = toml::from_str(&text).map_err(|e| Error::ConfigSyntax {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        let mut cfg = Self::from_raw(raw)?;
        if let Some(base) = path.parent() {
            if let RepoSource::Manifest(m) = &cfg.repo_source {
                if m.is_relative() {
                    cfg.repo_source = RepoSource::Manifest(base.join(m));
                }
            }
            if let Some(t) = &cfg.trace_manifest {
                if t.is_relative() {
                    cfg.trace_manifest = Some(base.join(t));
                }
            }
        }
        Ok(cfg)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = toml::to_string_pretty(&self.to_raw())
            .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    fn from_raw(raw: RawPipeline) -> Result<Self> {
        check_schema(raw.schema)?;
        let repo_source = match (raw.repo, raw.manifest) {
            (Some(r), None) => RepoSource::Git(r),
            (None, Some(m)) => RepoSource::Manifest(m),
            (Some(_), Some(_)) => {
                return Err(Error::ConfigInvalid(
                    "repo and manifest are mutually exclusive".into(),
                ))
            }
            (None, None) => {
                return Err(Error::ConfigInvalid(
                    "one of repo or manifest is required".into(),
                ))
            }
        };
        let commit_range = match (raw.commit_range, raw.max_count) {
            (Some(_), Some(_)) => {
                return Err(Error::ConfigInvalid(
                    "commit_range and max_count are mutually exclusive".into(),
                ))
            }
            (Some(r), None) => CommitRange::Range(r),
            (None, Some(n)) => {
                if n == 0 {
                    return Err(Error::ConfigInvalid("max_count must be >= 1".into()));
                }
                CommitRange::MaxCount(n)
            }
            (None, None) => CommitRange::All,
        };
        let energy_backend = raw.energy_backend.unwrap_or_default();
        if matches!(repo_source, RepoSource::Manifest(_))
            && energy_backend != EnergyBackendKind::Trace
        {
            return Err(Error::ConfigInvalid(
                "manifest repositories require energy_backend = \"trace\"".into(),
            ));
        }
        let cfg = PipelineConfig {
            repo_source,
            commit_range,
            granularity: raw.granularity.unwrap_or_default(),
            repetitions: raw.repetitions.unwrap_or(30),
            batch_size: raw.batch_size.unwrap_or(100),
            rng_seed: raw
                .rng_seed
                .as_ref()
                .map(RawSeed::decode)
                .transpose()?
                .unwrap_or(0),
            build_command: raw.build_command.unwrap_or_default(),
            test_command: raw.test_command.unwrap_or_default(),
            trace_manifest: raw.trace_manifest,
            thermal_limit_celsius: raw.thermal_limit_celsius.unwrap_or(80.0),
            thermal_poll_seconds: raw.thermal_poll_seconds.unwrap_or(5.0),
            rest_seconds: raw.rest_seconds.unwrap_or(match energy_backend {
                EnergyBackendKind::PerfRapl => 60.0,
                EnergyBackendKind::Trace => 0.0,
            }),
            stability_warmup_samples: raw.stability_warmup_samples.unwrap_or(5),
            stability_probe_samples: raw.stability_probe_samples.unwrap_or(30),
            stability_z_threshold: raw.stability_z_threshold.unwrap_or(3.5),
            energy_backend,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn to_raw(&self) -> RawPipeline {
        let (repo, manifest) = match &self.repo_source {
            RepoSource::Git(r) => (Some(r.clone()), None),
            RepoSource::Manifest(m) => (None, Some(m.clone())),
        };
        let (commit_range, max_count) = match &self.commit_range {
            CommitRange::All => (None, None),
            CommitRange::Range(r) => (Some(r.clone()), None),
            CommitRange::MaxCount(n) => (None, Some(*n)),
        };
        RawPipeline {
            schema: Some(SCHEMA_VERSION),
            repo,
            manifest,
            commit_range,
            max_count,
            granularity: Some(self.granularity),
            repetitions: Some(self.repetitions),
            batch_size: Some(self.batch_size),
            rng_seed: Some(RawSeed::encode(self.rng_seed)),
            build_command: Some(self.build_command.clone()),
            test_command: Some(self.test_command.clone()),
            energy_backend: Some(self.energy_backend),
            trace_manifest: self.trace_manifest.clone(),
            thermal_limit_celsius: Some(self.thermal_limit_celsius),
            thermal_poll_seconds: Some(self.thermal_poll_seconds),
            rest_seconds: Some(self.rest_seconds),
            stability_warmup_samples: Some(self.stability_warmup_samples),
            stability_probe_samples: Some(self.stability_probe_samples),
            stability_z_threshold: Some(self.stability_z_threshold),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions < 2 {
            return Err(Error::ConfigInvalid(
                "repetitions must be >= 2 (pairwise statistics need variance estimates)".into(),
            ));
        }
        if self.batch_size < 1 {
            return Err(Error::ConfigInvalid("batch_size must be >= 1".into()));
        }
        if self.rest_seconds.is_nan() || self.rest_seconds < 0.0 {
            return Err(Error::ConfigInvalid("rest_seconds must be >= 0".into()));
        }
        if self.thermal_limit_celsius.is_nan() || self.thermal_limit_celsius <= 0.0 {
            return Err(Error::ConfigInvalid(
                "thermal_limit_celsius must be > 0".into(),
            ));
        }
        if self.thermal_poll_seconds.is_nan() || self.thermal_poll_seconds <= 0.0 {
            return Err(Error::ConfigInvalid(
                "thermal_poll_seconds must be > 0".into(),
            ));
        }
        if self.stability_warmup_samples < 1 {
            return Err(Error::ConfigInvalid(
                "stability_warmup_samples must be >= 1".into(),
            ));
        }
        if self.stability_probe_samples < 1 {
            return Err(Error::ConfigInvalid(
                "stability_probe_samples must be >= 1".into(),
            ));
        }
        if self.stability_z_threshold.is_nan() || self.stability_z_threshold <= 0.0 {
            return Err(Error::ConfigInvalid(
                "stability_z_threshold must be > 0".into(),
            ));
        }
        if self.energy_backend == EnergyBackendKind::Trace && self.trace_manifest.is_none() {
            return Err(Error::ConfigInvalid(
                "trace backend requires trace_manifest".into(),
            ));
        }
        Ok(())
    }
}

/// Seeds are 64-bit unsigned, but TOML integers are signed; values beyond
/// the i64 range round-trip as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawSeed {
    Int(u64),
    Str(String),
}

impl RawSeed {
    fn encode(v: u64) -> RawSeed {
        if v <= i64::MAX as u64 {
            RawSeed::Int(v)
        } else {
            RawSeed::Str(v.to_string())
        }
    }

    fn decode(&self) -> Result<u64> {
        match self {
            RawSeed::Int(v) => Ok(*v),
            RawSeed::Str(s) => s
                .parse::<u64>()
                .map_err(|_| Error::ConfigInvalid(format!("rng_seed {s:?} is not a u64"))),
        }
    }
}

impl TryFrom<RawPipeline> for PipelineConfig {
    type Error = Error;

    fn try_from(raw: RawPipeline) -> Result<Self> {
        Self::from_raw(raw)
    }
}

impl From<PipelineConfig> for RawPipeline {
    fn from(cfg: PipelineConfig) -> Self {
        cfg.to_raw()
    }
}

/// Penalty for change-point detection: BIC-style derived from the series,
/// or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChangepointPenalty {
    Bic,
    Fixed(f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawPenalty {
    Fixed(f64),
    Name(String),
}

/// How the CUSUM series is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CusumMode {
    /// Cumulative sum of deviations from the series mean.
    #[default]
    MeanDeviations,
    /// Cumulative sum of the delta-J of significant events only.
    SignificantDelta,
}

/// Analysis and reporting configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAnalysis", into = "RawAnalysis")]
pub struct AnalysisConfig {
    pub significance_alpha: f64,
    pub cohens_d_thresholds: [f64; 3],
    pub percent_change_thresholds: [f64; 2],
    pub practical_thresholds: [f64; 2],
    pub context_tags: Vec<String>,
    pub outlier_window: u32,
    pub outlier_window_mode: WindowMode,
    pub tukey_multiplier: f64,
    pub max_transient_outliers: u32,
    pub aggregation: Aggregation,
    pub normality_alpha: f64,
    pub exclude_non_normal: bool,
    pub bootstrap_resamples: u32,
    pub changepoint_penalty: ChangepointPenalty,
    pub cusum_mode: CusumMode,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            significance_alpha: 0.05,
            cohens_d_thresholds: [0.2, 0.5, 0.8],
            percent_change_thresholds: [0.05, 0.10],
            practical_thresholds: [0.05, 0.10],
            context_tags: vec!["performance".into(), "memory".into(), "benchmark".into()],
            outlier_window: 20,
            outlier_window_mode: WindowMode::Centered,
            tukey_multiplier: 1.5,
            max_transient_outliers: 2,
            aggregation: Aggregation::Median,
            normality_alpha: 0.05,
            exclude_non_normal: true,
            bootstrap_resamples: 10_000,
            changepoint_penalty: ChangepointPenalty::Bic,
            cusum_mode: CusumMode::MeanDeviations,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawAnalysis {
    #[serde(skip_serializing_if = "Option::is_none")]
    schema: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    significance_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohens_d_thresholds: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    percent_change_thresholds: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    practical_thresholds: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    context_tags: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outlier_window: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    outlier_window_mode: Option<WindowMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tukey_multiplier: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_transient_outliers: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aggregation: Option<Aggregation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normality_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exclude_non_normal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bootstrap_resamples: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    changepoint_penalty: Option<RawPenalty>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cusum_mode: Option<CusumMode>,
}

impl AnalysisConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigSyntax {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        let raw: RawAnalysis = toml::from_str(&text).map_err(|e| Error::ConfigSyntax {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        Self::from_raw(raw)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = toml::to_string_pretty(&self.to_raw())
            .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    fn from_raw(raw: RawAnalysis) -> Result<Self> {
        check_schema(raw.schema)?;
        let d = AnalysisConfig::default();
        let cfg = AnalysisConfig {
            significance_alpha: raw.significance_alpha.unwrap_or(d.significance_alpha),
            cohens_d_thresholds: match raw.cohens_d_thresholds {
                Some(v) => to_array3("cohens_d_thresholds", &v)?,
                None => d.cohens_d_thresholds,
            },
            percent_change_thresholds: match raw.percent_change_thresholds {
                Some(v) => to_array2("percent_change_thresholds", &v)?,
                None => d.percent_change_thresholds,
            },
            practical_thresholds: match raw.practical_thresholds {
                Some(v) => to_array2("practical_thresholds", &v)?,
                None => d.practical_thresholds,
            },
            context_tags: raw.context_tags.unwrap_or(d.context_tags),
            outlier_window: raw.outlier_window.unwrap_or(d.outlier_window),
            outlier_window_mode: raw.outlier_window_mode.unwrap_or(d.outlier_window_mode),
            tukey_multiplier: raw.tukey_multiplier.unwrap_or(d.tukey_multiplier),
            max_transient_outliers: raw
                .max_transient_outliers
                .unwrap_or(d.max_transient_outliers),
            aggregation: raw.aggregation.unwrap_or(d.aggregation),
            normality_alpha: raw.normality_alpha.unwrap_or(d.normality_alpha),
            exclude_non_normal: raw.exclude_non_normal.unwrap_or(d.exclude_non_normal),
            bootstrap_resamples: raw.bootstrap_resamples.unwrap_or(d.bootstrap_resamples),
            changepoint_penalty: match raw.changepoint_penalty {
                None => d.changepoint_penalty,
                Some(RawPenalty::Fixed(v)) => ChangepointPenalty::Fixed(v),
                Some(RawPenalty::Name(name)) if name == "bic" => ChangepointPenalty::Bic,
                Some(RawPenalty::Name(name)) => {
                    return Err(Error::ConfigInvalid(format!(
                        "changepoint_penalty must be \"bic\" or a number, got {name:?}"
                    )))
                }
            },
            cusum_mode: raw.cusum_mode.unwrap_or(d.cusum_mode),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn to_raw(&self) -> RawAnalysis {
        RawAnalysis {
            schema: Some(SCHEMA_VERSION),
            significance_alpha: Some(self.significance_alpha),
            cohens_d_thresholds: Some(self.cohens_d_thresholds.to_vec()),
            percent_change_thresholds: Some(self.percent_change_thresholds.to_vec()),
            practical_thresholds: Some(self.practical_thresholds.to_vec()),
            context_tags: Some(self.context_tags.clone()),
            outlier_window: Some(self.outlier_window),
            outlier_window_mode: Some(self.outlier_window_mode),
            tukey_multiplier: Some(self.tukey_multiplier),
            max_transient_outliers: Some(self.max_transient_outliers),
            aggregation: Some(self.aggregation),
            normality_alpha: Some(self.normality_alpha),
            exclude_non_normal: Some(self.exclude_non_normal),
            bootstrap_resamples: Some(self.bootstrap_resamples),
            changepoint_penalty: Some(match self.changepoint_penalty {
                ChangepointPenalty::Bic => RawPenalty::Name("bic".into()),
                ChangepointPenalty::Fixed(v) => RawPenalty::Fixed(v),
            }),
            cusum_mode: Some(self.cusum_mode),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_open_unit("significance_alpha", self.significance_alpha)?;
        check_open_unit("normality_alpha", self.normality_alpha)?;
        check_increasing("cohens_d_thresholds", &self.cohens_d_thresholds)?;
        check_increasing("percent_change_thresholds", &self.percent_change_thresholds)?;
        check_increasing("practical_thresholds", &self.practical_thresholds)?;
        for (name, cuts) in [
            (
                "percent_change_thresholds",
                &self.percent_change_thresholds[..],
            ),
            ("practical_thresholds", &self.practical_thresholds[..]),
        ] {
            for &c in cuts {
                check_open_unit(name, c)?;
            }
        }
        if self.cohens_d_thresholds[0] <= 0.0 {
            return Err(Error::ConfigInvalid(
                "cohens_d_thresholds must be positive".into(),
            ));
        }
        for tag in &self.context_tags {
            if tag.chars().any(|c| c.is_uppercase()) {
                return Err(Error::ConfigInvalid(format!(
                    "context_tags must be lowercase, got {tag:?}"
                )));
            }
        }
        if self.outlier_window < 1 {
            return Err(Error::ConfigInvalid("outlier_window must be >= 1".into()));
        }
        if self.tukey_multiplier.is_nan() || self.tukey_multiplier <= 0.0 {
            return Err(Error::ConfigInvalid("tukey_multiplier must be > 0".into()));
        }
        if self.bootstrap_resamples < 1 {
            return Err(Error::ConfigInvalid(
                "bootstrap_resamples must be >= 1".into(),
            ));
        }
        if let ChangepointPenalty::Fixed(v) = self.changepoint_penalty {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::ConfigInvalid(
                    "fixed changepoint_penalty must be > 0".into(),
                ));
            }
        }
        Ok(())
    }
}

impl TryFrom<RawAnalysis> for AnalysisConfig {
    type Error = Error;

    fn try_from(raw: RawAnalysis) -> Result<Self> {
        Self::from_raw(raw)
    }
}

impl From<AnalysisConfig> for RawAnalysis {
    fn from(cfg: AnalysisConfig) -> Self {
        cfg.to_raw()
    }
}

fn check_schema(schema: Option<u32>) -> Result<()> {
    match schema {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::ConfigInvalid(format!(
            "unsupported schema version {v}, expected {SCHEMA_VERSION}"
        ))),
    }
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::ConfigInvalid(format!(
            "{name} must lie strictly inside (0, 1), got {v}"
        )))
    }
}

fn check_increasing(name: &str, cuts: &[f64]) -> Result<()> {
    if cuts.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::ConfigInvalid(format!(
            "{name} must be strictly increasing, got {cuts:?}"
        )))
    }
}

fn to_array2(name: &str, v: &[f64]) -> Result<[f64; 2]> {
    v.try_into().map_err(|_| {
        Error::ConfigInvalid(format!("{name} needs exactly 2 entries, got {}", v.len()))
    })
}

fn to_array3(name: &str, v: &[f64]) -> Result<[f64; 3]> {
    v.try_into().map_err(|_| {
        Error::ConfigInvalid(format!("{name} needs exactly 3 entries, got {}", v.len()))
    })
}
