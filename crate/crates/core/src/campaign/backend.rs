//! Energy measurement backends.
//!
//! `perf-rapl` wraps the test-suite execution with `perf stat` reading the
//! RAPL package-energy counter; `trace` replays a JSON manifest of
//! per-(commit, run) values so the whole pipeline runs deterministically on
//! any machine. Missing trace runs are drawn from a seeded normal around
//! the commit's listed mean/sd, keyed by (seed, commit, run) so draws never
//! depend on execution order or resume points.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::{EnergyBackendKind, PipelineConfig};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, Rng};
use crate::stability::{EnergyProbe, TraceProbe};

/// Raw outcome of one measured test execution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawMeasurement {
    pub energy_joules: f64,
    pub duration_seconds: f64,
    pub exit_status: i32,
}

/// Per-task context handed to the backend.
pub struct MeasureCtx<'a> {
    pub commit_id: &'a str,
    pub run_index: u32,
    pub test_command: &'a str,
    /// Checkout directory for real executions; None in synthetic mode.
    pub workdir: Option<&'a Path>,
    /// Exit status the synthetic repository prescribes for this commit.
    pub simulated_exit: i32,
}

pub trait EnergyBackend {
    fn kind(&self) -> EnergyBackendKind;
    /// Fail fast when the backend cannot run on this host.
    fn check_available(&self) -> Result<()>;
    fn measure(&mut self, ctx: &MeasureCtx<'_>) -> Result<RawMeasurement>;
    /// Probe for the stability protocol, able to serve `readings` reads.
    fn stability_probe(&self, readings: usize) -> Result<Box<dyn EnergyProbe>>;
    /// Ambient temperature reported alongside synthetic measurements.
    fn synthetic_temperature(&self) -> Option<f64>;
}

pub fn open_backend(cfg: &PipelineConfig) -> Result<Box<dyn EnergyBackend>> {
    match cfg.energy_backend {
        EnergyBackendKind::Trace => {
            let path = cfg.trace_manifest.as_ref().ok_or_else(|| {
                Error::ConfigInvalid("trace backend requires trace_manifest".into())
            })?;
            Ok(Box::new(TraceBackend::load(path, cfg.rng_seed)?))
        }
        EnergyBackendKind::PerfRapl => Ok(Box::new(PerfRaplBackend::new())),
    }
}

// ---------------------------------------------------------------------------
// trace backend
// ---------------------------------------------------------------------------

/// One explicit trace run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TraceRun {
    pub energy_joules: f64,
    pub duration_seconds: f64,
}

/// Per-commit trace data: explicit runs and/or a normal model for the rest.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct TraceCommit {
    #[serde(default)]
    pub runs: Vec<TraceRun>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sd: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_seconds: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum TraceCommitRaw {
    Runs(Vec<TraceRun>),
    Full(TraceCommit),
}

/// Structured form of the trace manifest. The plain form is a bare JSON
/// object mapping commit_id to a run list.
#[derive(Debug, Clone, Deserialize)]
struct TraceManifestRaw {
    #[serde(default)]
    schema: Option<u32>,
    commits: BTreeMap<String, TraceCommitRaw>,
    #[serde(default)]
    stability_deltas: Option<Vec<f64>>,
    #[serde(default)]
    temperature_c: Option<f64>,
}

pub struct TraceBackend {
    commits: BTreeMap<String, TraceCommit>,
    stability_deltas: Option<Vec<f64>>,
    temperature_c: f64,
    seed: u64,
}

impl TraceBackend {
    pub fn load(path: &PathBuf, seed: u64) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Backend(format!("cannot read trace manifest {path:?}: {e}")))?;
        let raw: TraceManifestRaw = serde_json::from_str(&text)
            .or_else(|_| {
                // Plain form: the whole document is the commit mapping.
                serde_json::from_str::<BTreeMap<String, TraceCommitRaw>>(&text).map(|commits| {
                    TraceManifestRaw {
                        schema: None,
                        commits,
                        stability_deltas: None,
                        temperature_c: None,
                    }
                })
            })
            .map_err(|e| Error::Backend(format!("trace manifest {path:?}: {e}")))?;
        if let Some(v) = raw.schema {
            if v != crate::config::SCHEMA_VERSION {
                return Err(Error::Backend(format!(
                    "trace manifest schema {v} unsupported"
                )));
            }
        }
        let commits = raw
            .commits
            .into_iter()
            .map(|(id, c)| {
                let c = match c {
                    TraceCommitRaw::Runs(runs) => TraceCommit {
                        runs,
                        ..TraceCommit::default()
                    },
                    TraceCommitRaw::Full(full) => full,
                };
                (id, c)
            })
            .collect();
        Ok(TraceBackend {
            commits,
            stability_deltas: raw.stability_deltas,
            temperature_c: raw.temperature_c.unwrap_or(40.0),
            seed,
        })
    }

    /// Deterministic value for (commit, run): the explicit run when listed,
    /// otherwise a draw from the commit's normal model.
    pub fn value_for(&self, commit_id: &str, run_index: u32) -> Result<TraceRun> {
        let entry = self
            .commits
            .get(commit_id)
            .ok_or_else(|| Error::Backend(format!("no trace data for commit {commit_id:?}")))?;
        if let Some(run) = entry.runs.get(run_index as usize) {
            return Ok(*run);
        }
        let mean = entry.mean.ok_or_else(|| {
            Error::Backend(format!(
                "trace manifest lists no run {run_index} and no mean for {commit_id:?}"
            ))
        })?;
        let sd = entry.sd.unwrap_or(0.0);
        let seed = derive_seed(
            self.seed,
            &[
                b"trace-energy",
                commit_id.as_bytes(),
                &run_index.to_le_bytes(),
            ],
        );
        let mut rng = Rng::seed_from(seed);
        Ok(TraceRun {
            energy_joules: rng.next_normal(mean, sd),
            duration_seconds: entry.duration_seconds.unwrap_or(1.0),
        })
    }
}

impl EnergyBackend for TraceBackend {
    fn kind(&self) -> EnergyBackendKind {
        EnergyBackendKind::Trace
    }

    fn check_available(&self) -> Result<()> {
        Ok(())
    }

    fn measure(&mut self, ctx: &MeasureCtx<'_>) -> Result<RawMeasurement> {
        let run = self.value_for(ctx.commit_id, ctx.run_index)?;
        Ok(RawMeasurement {
            energy_joules: run.energy_joules,
            duration_seconds: run.duration_seconds,
            exit_status: ctx.simulated_exit,
        })
    }

    fn stability_probe(&self, readings: usize) -> Result<Box<dyn EnergyProbe>> {
        Ok(match &self.stability_deltas {
            Some(deltas) => {
                if deltas.len() + 1 < readings {
                    return Err(Error::BackendUnavailable(format!(
                        "trace manifest has {} stability deltas, {} needed",
                        deltas.len(),
                        readings - 1
                    )));
                }
                Box::new(TraceProbe::new(deltas.clone()))
            }
            None => Box::new(TraceProbe::constant(1.0, readings)),
        })
    }

    fn synthetic_temperature(&self) -> Option<f64> {
        Some(self.temperature_c)
    }
}

// ---------------------------------------------------------------------------
// perf-rapl backend
// ---------------------------------------------------------------------------

const RAPL_DIR: &str = "/sys/class/powercap/intel-rapl:0";

pub struct PerfRaplBackend;

impl PerfRaplBackend {
    pub fn new() -> Self {
        PerfRaplBackend
    }
}

impl Default for PerfRaplBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl EnergyBackend for PerfRaplBackend {
    fn kind(&self) -> EnergyBackendKind {
        EnergyBackendKind::PerfRapl
    }

    fn check_available(&self) -> Result<()> {
        if !cfg!(target_os = "linux") {
            return Err(Error::BackendUnavailable("perf-rapl requires Linux".into()));
        }
        let perf_ok = Command::new("perf")
            .arg("--version")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false);
        if !perf_ok {
            return Err(Error::BackendUnavailable("perf is not runnable".into()));
        }
        if !Path::new(RAPL_DIR).exists() {
            return Err(Error::BackendUnavailable(format!(
                "RAPL interface not exposed at {RAPL_DIR}"
            )));
        }
        Ok(())
    }

    fn measure(&mut self, ctx: &MeasureCtx<'_>) -> Result<RawMeasurement> {
        if ctx.test_command.is_empty() {
            return Err(Error::ConfigInvalid(
                "perf-rapl backend requires test_command".into(),
            ));
        }
        let outfile = tempfile_path(ctx.commit_id, ctx.run_index);
        let mut cmd = Command::new("perf");
        cmd.args(["stat", "-e", "power/energy-pkg/", "-x", ";", "--output"])
            .arg(&outfile)
            .args(["--", "sh", "-c", ctx.test_command])
            .env("LC_ALL", "C");
        if let Some(dir) = ctx.workdir {
            cmd.current_dir(dir);
        }
        let started = Instant::now();
        let status = cmd
            .status()
            .map_err(|e| Error::Backend(format!("cannot run perf: {e}")))?;
        let duration = started.elapsed().as_secs_f64();
        let text = std::fs::read_to_string(&outfile)
            .map_err(|e| Error::Backend(format!("cannot read perf output: {e}")))?;
        let _ = std::fs::remove_file(&outfile);
        let energy = parse_perf_energy(&text)?;
        Ok(RawMeasurement {
            energy_joules: energy,
            duration_seconds: duration,
            exit_status: status.code().unwrap_or(-1),
        })
    }

    fn stability_probe(&self, _readings: usize) -> Result<Box<dyn EnergyProbe>> {
        self.check_available()?;
        Ok(Box::new(RaplProbe::new()?))
    }

    fn synthetic_temperature(&self) -> Option<f64> {
        None
    }
}

fn tempfile_path(commit_id: &str, run: u32) -> PathBuf {
    let sanitized: String = commit_id
        .chars()
        .filter(char::is_ascii_alphanumeric)
        .collect();
    std::env::temp_dir().join(format!(
        "perf-energy-{sanitized}-{run}-{}.csv",
        std::process::id()
    ))
}

/// Parse the joules field from `perf stat -x ';'` output. Lines look like
/// `2.48;Joules;power/energy-pkg/;...`; `#` lines are comments.
pub fn parse_perf_energy(text: &str) -> Result<f64> {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() < 3 || !fields[2].contains("power/energy-pkg/") {
            continue;
        }
        return fields[0]
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Backend(format!("unreadable energy value {:?}", fields[0])));
    }
    Err(Error::Backend(
        "perf output contains no power/energy-pkg/ line".into(),
    ))
}

/// Cumulative RAPL reader: burns a fixed ~1 s busy-loop workload before
/// each reading so consecutive deltas are comparable.
struct RaplProbe {
    energy_path: PathBuf,
    max_range_uj: Option<u64>,
    last_raw: Option<u64>,
    accumulated_uj: u128,
}

impl RaplProbe {
    fn new() -> Result<Self> {
        let dir = Path::new(RAPL_DIR);
        let max_range_uj = std::fs::read_to_string(dir.join("max_energy_range_uj"))
            .ok()
            .and_then(|s| s.trim().parse().ok());
        Ok(RaplProbe {
            energy_path: dir.join("energy_uj"),
            max_range_uj,
            last_raw: None,
            accumulated_uj: 0,
        })
    }

    fn read_raw(&self) -> Result<u64> {
        std::fs::read_to_string(&self.energy_path)
            .map_err(|e| Error::Backend(format!("cannot read RAPL counter: {e}")))?
            .trim()
            .parse()
            .map_err(|e| Error::Backend(format!("bad RAPL counter value: {e}")))
    }
}

impl EnergyProbe for RaplProbe {
    fn read_joules(&mut self) -> Result<f64> {
        busy_loop_seconds(1.0);
        let raw = self.read_raw()?;
        if let Some(last) = self.last_raw {
            let delta = if raw >= last {
                u128::from(raw - last)
            } else {
                // Counter wrapped at max_energy_range_uj.
                let range = self.max_range_uj.unwrap_or(u64::MAX);
                u128::from(range - last) + u128::from(raw)
            };
            self.accumulated_uj += delta;
        }
        self.last_raw = Some(raw);
        Ok(self.accumulated_uj as f64 / 1e6)
    }
}

/// Fixed CPU-bound workload so stability deltas measure a comparable load.
fn busy_loop_seconds(seconds: f64) {
    let start = Instant::now();
    let mut x = 1.000000001f64;
    while start.elapsed().as_secs_f64() < seconds {
        for _ in 0..10_000 {
            x = x.sqrt() * x;
        }
        std::hint::black_box(x);
    }
}
