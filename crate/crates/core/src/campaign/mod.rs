//! Campaign planning and execution: commit collection, seeded batch
//! shuffling, per-commit builds, measured test runs under the thermal
//! guard, and append-only CSV emission with crash resume.

pub mod backend;
pub mod rawcsv;
pub mod repo;
pub mod thermal;

pub use repo::Repository;

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use chrono::{DateTime, Duration, TimeZone, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{EnergyBackendKind, PipelineConfig};
use crate::error::{Error, Result};
use crate::model::{CommitRef, MeasurementSample, StabilityVerdict};
use crate::rng::Rng;
use crate::stability::verify_stability;
use backend::{EnergyBackend, MeasureCtx};
use repo::Repository;
use thermal::{ConstantSensor, SysfsTempSensor, TemperatureSensor};

/// The shuffled, seeded schedule of (commit, repetition) tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignPlan {
    /// (commit_id, run_index) in execution order.
    pub tasks: Vec<(String, u32)>,
    pub rng_seed: u64,
    /// Task index where each batch starts.
    pub batch_boundaries: Vec<usize>,
}

/// Partition commits into consecutive batches of `batch_size` and shuffle
/// each batch's (commit x repetition) task list with the seeded generator.
/// The plan is a pure function of (commits, repetitions, batch_size, seed).
pub fn plan_batches(commits: &[CommitRef], cfg: &PipelineConfig) -> CampaignPlan {
    assert!(!commits.is_empty(), "plan_batches requires commits");
    let mut rng = Rng::seed_from(cfg.rng_seed);
    let mut tasks = Vec::with_capacity(commits.len() * cfg.repetitions as usize);
    let mut batch_boundaries = Vec::new();
    for batch in commits.chunks(cfg.batch_size as usize) {
        batch_boundaries.push(tasks.len());
        let mut batch_tasks: Vec<(String, u32)> = batch
            .iter()
            .flat_map(|c| (0..cfg.repetitions).map(move |r| (c.id.clone(), r)))
            .collect();
        rng.shuffle(&mut batch_tasks);
        tasks.append(&mut batch_tasks);
    }
    CampaignPlan {
        tasks,
        rng_seed: cfg.rng_seed,
        batch_boundaries,
    }
}

/// Hash of the task schedule, recorded in the campaign manifest.
pub fn plan_sha256(plan: &CampaignPlan) -> String {
    let mut hasher = Sha256::new();
    for (commit, run) in &plan.tasks {
        hasher.update(commit.as_bytes());
        hasher.update([0x1f]);
        hasher.update(run.to_le_bytes());
        hasher.update([0x0a]);
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// A commit excluded from measurement because its build failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildFailure {
    pub commit_id: String,
    pub reason: String,
}

/// Everything needed to reproduce and analyze a campaign, written next to
/// the raw CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignManifest {
    pub schema: u32,
    pub rng_seed: u64,
    pub plan_sha256: String,
    pub pipeline: PipelineConfig,
    pub commits: Vec<CommitRef>,
    pub build_failures: Vec<BuildFailure>,
}

impl CampaignManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::NoData(format!("cannot read campaign manifest {path:?}: {e}")))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Outcome summary of one `run_campaign` invocation.
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
    pub new_rows: usize,
    pub total_rows: usize,
    pub build_failures: Vec<BuildFailure>,
    pub task_errors: Vec<String>,
}

/// Build one commit in its checkout directory by running `build_command`.
///
/// The trace backend never calls this (builds are a no-op there). Build
/// results are cached with marker files so resumed campaigns reuse
/// artifacts.
pub fn build_commit(commit_id: &str, cfg: &PipelineConfig, workdir: &Path) -> Result<()> {
    if cfg.build_command.is_empty() {
        return Ok(());
    }
    let ok_marker = workdir.join(".build-ok");
    let fail_marker = workdir.join(".build-failed");
    if ok_marker.exists() {
        return Ok(());
    }
    if fail_marker.exists() {
        return Err(Error::BuildFailed {
            commit: commit_id.to_string(),
            detail: "cached failure".into(),
        });
    }
    let out = Command::new("sh")
        .args(["-c", &cfg.build_command])
        .current_dir(workdir)
        .output()
        .map_err(|e| Error::BuildFailed {
            commit: commit_id.to_string(),
            detail: format!("cannot spawn build: {e}"),
        })?;
    let log = workdir.join("build.log");
    let _ = std::fs::write(&log, [&out.stdout[..], &out.stderr[..]].concat());
    if out.status.success() {
        let _ = std::fs::write(ok_marker, "ok\n");
        Ok(())
    } else {
        let _ = std::fs::write(fail_marker, "failed\n");
        Err(Error::BuildFailed {
            commit: commit_id.to_string(),
            detail: format!("exit {:?}; log at {}", out.status.code(), log.display()),
        })
    }
}

/// Measure one (commit, run) task: thermal-guarded, wrapped by the backend,
/// temperatures recorded at both ends.
#[allow(clippy::too_many_arguments)]
pub fn measure_task(
    commit: &CommitRef,
    run_index: u32,
    backend: &mut dyn EnergyBackend,
    cfg: &PipelineConfig,
    workdir: Option<&Path>,
    simulated_exit: i32,
    sensor: &mut Option<Box<dyn TemperatureSensor>>,
    wall_clock_start: DateTime<Utc>,
) -> Result<MeasurementSample> {
    let temp_before = sensor.as_deref_mut().and_then(|s| s.read_celsius().ok());
    let raw = backend.measure(&MeasureCtx {
        commit_id: &commit.id,
        run_index,
        test_command: &cfg.test_command,
        workdir,
        simulated_exit,
    })?;
    let temp_after = sensor.as_deref_mut().and_then(|s| s.read_celsius().ok());
    Ok(MeasurementSample {
        commit_id: commit.id.clone(),
        run_index,
        energy_joules: raw.energy_joules,
        duration_seconds: raw.duration_seconds,
        exit_status: raw.exit_status,
        temp_before_celsius: temp_before,
        temp_after_celsius: temp_after,
        wall_clock_start,
    })
}

/// Campaign clock. Synthetic runs advance a simulated clock from a fixed
/// epoch by each task's duration plus rest, keyed only to plan position,
/// so resumed and fresh runs emit identical timestamps.
enum Clock {
    Real,
    Sim(DateTime<Utc>),
}

impl Clock {
    fn for_backend(kind: EnergyBackendKind) -> Clock {
        match kind {
            EnergyBackendKind::PerfRapl => Clock::Real,
            EnergyBackendKind::Trace => {
                Clock::Sim(Utc.with_ymd_and_hms(2000, 1, 1, 0, 0, 0).unwrap())
            }
        }
    }

    fn now(&self) -> DateTime<Utc> {
        match self {
            Clock::Real => Utc::now(),
            Clock::Sim(t) => *t,
        }
    }

    fn advance(&mut self, seconds: f64) {
        if let Clock::Sim(t) = self {
            *t += Duration::milliseconds((seconds * 1000.0).round() as i64);
        }
    }
}

/// Execute the full measurement campaign into `out_dir`.
///
/// Always resumes: completed tasks found in an existing raw.csv are skipped,
/// so interrupted campaigns continue where they stopped. Individual build
/// and test failures are recorded and the campaign continues.
pub fn run_campaign(
    cfg: &PipelineConfig,
    out_dir: &Path,
    recheck_stability: bool,
) -> Result<CampaignOutcome> {
    std::fs::create_dir_all(out_dir)?;
    let mut backend = backend::open_backend(cfg)?;
    backend.check_available()?;

    let work = out_dir.join("work");
    let repo = Repository::open(cfg, &work)?;
    let commits = repo.collect_commits(cfg)?;
    let plan = plan_batches(&commits, cfg);

    let manifest_path = out_dir.join("campaign.json");
    let mut manifest = CampaignManifest {
        schema: crate::config::SCHEMA_VERSION,
        rng_seed: cfg.rng_seed,
        plan_sha256: plan_sha256(&plan),
        pipeline: cfg.clone(),
        commits: commits.clone(),
        build_failures: Vec::new(),
    };
    manifest.save(&manifest_path)?;

    let csv_path = out_dir.join("raw.csv");
    let done = if csv_path.exists() {
        rawcsv::read_completed(&csv_path)?
    } else {
        Default::default()
    };
    let mut writer = rawcsv::RawCsvWriter::append_to(&csv_path)?;

    let mut sensor: Option<Box<dyn TemperatureSensor>> = match cfg.energy_backend {
        EnergyBackendKind::Trace => backend
            .synthetic_temperature()
            .map(|t| Box::new(ConstantSensor(t)) as Box<dyn TemperatureSensor>),
        EnergyBackendKind::PerfRapl => match SysfsTempSensor::discover() {
            Ok(s) => Some(Box::new(s)),
            Err(e) => {
                log::warn!("temperature sensor unavailable, thermal guard disabled: {e}");
                None
            }
        },
    };
    let real_time = matches!(cfg.energy_backend, EnergyBackendKind::PerfRapl);
    let mut clock = Clock::for_backend(cfg.energy_backend);

    let commit_of: std::collections::HashMap<&str, &CommitRef> =
        commits.iter().map(|c| (c.id.as_str(), c)).collect();
    let mut build_failed: HashSet<String> = HashSet::new();
    let mut task_errors = Vec::new();
    let mut new_rows = 0usize;

    let boundaries = {
        let mut b = plan.batch_boundaries.clone();
        b.push(plan.tasks.len());
        b
    };
    for (batch_idx, window) in boundaries.windows(2).enumerate() {
        let (start, end) = (window[0], window[1]);
        if recheck_stability && batch_idx > 0 {
            let readings =
                (cfg.stability_warmup_samples + cfg.stability_probe_samples + 1) as usize;
            let mut probe = backend.stability_probe(readings)?;
            let report = verify_stability(probe.as_mut(), cfg)?;
            if report.verdict == StabilityVerdict::Unstable {
                return Err(Error::Unstable(report.first_violation_index.unwrap_or(0)));
            }
        }

        // Build every distinct commit of the batch before measuring it.
        let mut batch_commits: Vec<&str> = Vec::new();
        for (id, _) in &plan.tasks[start..end] {
            if !batch_commits.contains(&id.as_str()) {
                batch_commits.push(id);
            }
        }
        for id in batch_commits {
            if build_failed.contains(id) {
                continue;
            }
            let failure = match cfg.energy_backend {
                EnergyBackendKind::Trace => {
                    if repo.manifest_build_ok(id) {
                        None
                    } else {
                        Some("manifest marks build as failing".to_string())
                    }
                }
                EnergyBackendKind::PerfRapl => match repo.as_git() {
                    Some(git) => {
                        let result = git
                            .checkout(id, &work.join("checkouts"))
                            .and_then(|dir| build_commit(id, cfg, &dir));
                        match result {
                            Ok(()) => None,
                            Err(e) => Some(e.to_string()),
                        }
                    }
                    None => None,
                },
            };
            if let Some(reason) = failure {
                log::warn!("excluding commit {id}: {reason}");
                build_failed.insert(id.to_string());
                manifest.build_failures.push(BuildFailure {
                    commit_id: id.to_string(),
                    reason,
                });
            }
        }

        for (id, run) in &plan.tasks[start..end] {
            if build_failed.contains(id) {
                continue;
            }
            if let Some(duration) = done.get(&(id.clone(), *run)) {
                clock.advance(duration + cfg.rest_seconds);
                continue;
            }
            let commit = commit_of[id.as_str()];
            let mut guard_lost = false;
            if let Some(s) = sensor.as_deref_mut() {
                let waited = thermal::thermal_guard_wait(cfg, s, &mut |secs| {
                    if real_time {
                        std::thread::sleep(std::time::Duration::from_secs_f64(secs));
                    }
                });
                match waited {
                    Ok(w) if w > 0.0 => log::info!("thermal guard waited {w:.1} s"),
                    Ok(_) => {}
                    Err(_) => guard_lost = true,
                }
            }
            if guard_lost {
                sensor = None;
            }
            let workdir = match (cfg.energy_backend, repo.as_git()) {
                (EnergyBackendKind::PerfRapl, Some(_)) => Some(work.join("checkouts").join(id)),
                _ => None,
            };
            let sample = measure_task(
                commit,
                *run,
                backend.as_mut(),
                cfg,
                workdir.as_deref(),
                repo.manifest_test_exit(id),
                &mut sensor,
                clock.now(),
            );
            match sample {
                Ok(sample) => {
                    clock.advance(sample.duration_seconds + cfg.rest_seconds);
                    writer.write_sample(&sample)?;
                    new_rows += 1;
                    if sample.exit_status != 0 {
                        log::warn!(
                            "tests failed for {} run {} (exit {})",
                            sample.commit_id,
                            sample.run_index,
                            sample.exit_status
                        );
                    }
                }
                Err(e) => {
                    log::warn!("task ({id}, {run}) failed: {e}");
                    task_errors.push(format!("({id}, {run}): {e}"));
                }
            }
            if real_time && cfg.rest_seconds > 0.0 {
                std::thread::sleep(std::time::Duration::from_secs_f64(cfg.rest_seconds));
            }
        }
    }

    manifest.save(&manifest_path)?;
    Ok(CampaignOutcome {
        csv_path: csv_path.clone(),
        manifest_path,
        new_rows,
        total_rows: rawcsv::read_samples(&csv_path)?.len(),
        build_failures: manifest.build_failures,
        task_errors,
    })
}

/// Convenience for CLI dry runs: the plan and the commits it covers.
pub fn plan_only(cfg: &PipelineConfig, out_dir: &Path) -> Result<(Vec<CommitRef>, CampaignPlan)> {
    let repo = Repository::open(cfg, &out_dir.join("work"))?;
    let commits = repo.collect_commits(cfg)?;
    let plan = plan_batches(&commits, cfg);
    Ok((commits, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RepoSource;
    use chrono::TimeZone;

    fn commit(id: &str, day: u32) -> CommitRef {
        CommitRef::new(
            id,
            Utc.with_ymd_and_hms(2024, 1, day, 0, 0, 0).unwrap(),
            format!("message {id}"),
        )
    }

    fn cfg(repetitions: u32, batch_size: u32, seed: u64) -> PipelineConfig {
        PipelineConfig {
            repo_source: RepoSource::Manifest("unused".into()),
            commit_range: crate::config::CommitRange::All,
            granularity: crate::config::Granularity::Commit,
            repetitions,
            batch_size,
            rng_seed: seed,
            build_command: String::new(),
            test_command: String::new(),
            energy_backend: EnergyBackendKind::Trace,
            trace_manifest: Some("unused".into()),
            thermal_limit_celsius: 80.0,
            thermal_poll_seconds: 5.0,
            rest_seconds: 0.0,
            stability_warmup_samples: 5,
            stability_probe_samples: 30,
            stability_z_threshold: 3.5,
        }
    }

    #[test]
    fn single_commit_plan_has_all_runs() {
        let plan = plan_batches(&[commit("c1", 1)], &cfg(3, 10, 0));
        assert_eq!(plan.tasks.len(), 3);
        assert!(plan.tasks.iter().all(|(id, _)| id == "c1"));
        let mut runs: Vec<u32> = plan.tasks.iter().map(|(_, r)| *r).collect();
        runs.sort_unstable();
        assert_eq!(runs, [0, 1, 2]);
    }

    #[test]
    fn plan_is_deterministic() {
        let commits = [commit("a", 1), commit("b", 2), commit("c", 3)];
        let p1 = plan_batches(&commits, &cfg(5, 2, 42));
        let p2 = plan_batches(&commits, &cfg(5, 2, 42));
        assert_eq!(p1, p2);
        let p3 = plan_batches(&commits, &cfg(5, 2, 43));
        assert_ne!(p1.tasks, p3.tasks);
        assert_eq!(plan_sha256(&p1), plan_sha256(&p2));
        assert_ne!(plan_sha256(&p1), plan_sha256(&p3));
    }

    #[test]
    fn batches_partition_tasks() {
        let commits = [
            commit("a", 1),
            commit("b", 2),
            commit("c", 3),
            commit("d", 4),
            commit("e", 5),
        ];
        let plan = plan_batches(&commits, &cfg(4, 2, 7));
        assert_eq!(plan.tasks.len(), 20);
        assert_eq!(plan.batch_boundaries, vec![0, 8, 16]);
        // Batch membership respects the partition: first batch only a/b.
        for (id, _) in &plan.tasks[0..8] {
            assert!(id == "a" || id == "b");
        }
        for (id, _) in &plan.tasks[16..20] {
            assert_eq!(id, "e");
        }
        // Coverage: every (commit, run) pair exactly once.
        let unique: HashSet<_> = plan.tasks.iter().collect();
        assert_eq!(unique.len(), 20);
    }

    #[test]
    fn shuffle_matches_independent_reference_generator() {
        // Reference transcription of the pinned PRNG stack: splitmix64
        // seeding, xoshiro256** stream, modulo draws, Fisher-Yates from the
        // top. Kept separate from the production implementation on purpose.
        fn ref_splitmix(state: &mut u64) -> u64 {
            *state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = *state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }
        struct RefXoshiro {
            s: [u64; 4],
        }
        impl RefXoshiro {
            fn new(seed: u64) -> Self {
                let mut sm = seed;
                RefXoshiro {
                    s: [
                        ref_splitmix(&mut sm),
                        ref_splitmix(&mut sm),
                        ref_splitmix(&mut sm),
                        ref_splitmix(&mut sm),
                    ],
                }
            }
            fn next(&mut self) -> u64 {
                let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
                let t = self.s[1] << 17;
                self.s[2] ^= self.s[0];
                self.s[3] ^= self.s[1];
                self.s[1] ^= self.s[2];
                self.s[0] ^= self.s[3];
                self.s[2] ^= t;
                self.s[3] = self.s[3].rotate_left(45);
                result
            }
        }

        let commits = [commit("a", 1), commit("b", 2)];
        let seed = 2024u64;
        let plan = plan_batches(&commits, &cfg(2, 2, seed));

        let mut expected: Vec<(String, u32)> = vec![
            ("a".into(), 0),
            ("a".into(), 1),
            ("b".into(), 0),
            ("b".into(), 1),
        ];
        let mut rng = RefXoshiro::new(seed);
        for i in (1..expected.len()).rev() {
            let j = (rng.next() % (i as u64 + 1)) as usize;
            expected.swap(i, j);
        }
        assert_eq!(plan.tasks, expected);
        // One batch of 4 tasks containing each pair exactly once.
        assert_eq!(plan.batch_boundaries, vec![0]);
        let unique: HashSet<_> = plan.tasks.iter().collect();
        assert_eq!(unique.len(), 4);
    }

    #[test]
    fn build_commit_runs_real_commands() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = cfg(2, 1, 0);
        c.build_command = "true".into();
        build_commit("x", &c, dir.path()).unwrap();
        assert!(dir.path().join(".build-ok").exists());

        let dir2 = tempfile::tempdir().unwrap();
        c.build_command = "false".into();
        let err = build_commit("x", &c, dir2.path()).unwrap_err();
        assert!(matches!(err, Error::BuildFailed { .. }));
        // Cached failure on the second attempt.
        let err = build_commit("x", &c, dir2.path()).unwrap_err();
        assert!(err.to_string().contains("cached"), "{err}");
    }

    #[test]
    fn empty_build_command_is_a_noop() {
        let dir = tempfile::tempdir().unwrap();
        build_commit("x", &cfg(2, 1, 0), dir.path()).unwrap();
        assert!(!dir.path().join(".build-ok").exists());
    }
}
