//! Command-line surface: `stability`, `measure`, `analyze`, `report`, and
//! `run` (the full chain). Data goes to stdout and the output directory;
//! diagnostics go to stderr. Exit codes: 0 success, 1 configuration or
//! backend error, 2 unstable system, 3 no usable data, 4 I/O failure.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analyze::{analyze_samples, write_bundles};
use crate::campaign::{self, rawcsv, CampaignManifest};
use crate::config::{AnalysisConfig, PipelineConfig};
use crate::error::{Error, Result};
use crate::model::{ChangeEvent, StabilityVerdict};
use crate::report::render_report;
use crate::stability::verify_stability;

#[derive(Debug, Parser)]
#[command(
    name = "joulewatch",
    about = "Detect energy regressions across a project's git history",
    version
)]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Pipeline config file.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for raw.csv and the campaign manifest.
    #[arg(long, default_value = "joulewatch-out")]
    pub out: PathBuf,
    /// Resume an interrupted campaign (completed tasks are always skipped;
    /// the flag documents intent).
    #[arg(long)]
    pub resume: bool,
    /// Print the shuffled plan without executing anything.
    #[arg(long)]
    pub dry_run: bool,
    /// Skip the pre-campaign stability gate.
    #[arg(long)]
    pub skip_stability: bool,
    /// Re-verify stability between batches.
    #[arg(long)]
    pub recheck_stability: bool,
    /// Override the config rng_seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the host is in a stable energy state.
    Stability {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the measurement campaign and write raw.csv.
    Measure(MeasureArgs),
    /// Analyze raw.csv into events.json and series.json.
    Analyze {
        /// Analysis config file (defaults apply when omitted).
        #[arg(long)]
        analysis_config: Option<PathBuf>,
        /// Directory holding raw.csv and campaign.json.
        #[arg(long, default_value = "joulewatch-out")]
        out: PathBuf,
        /// Raw CSV path, when not <out>/raw.csv.
        #[arg(long)]
        raw: Option<PathBuf>,
    },
    /// Render index.html and summary.json from the bundles.
    Report {
        /// Directory holding events.json and series.json.
        #[arg(long, default_value = "joulewatch-out")]
        out: PathBuf,
    },
    /// Full pipeline: stability, measure, analyze, report.
    Run {
        #[command(flatten)]
        measure: MeasureArgs,
        #[arg(long)]
        analysis_config: Option<PathBuf>,
    },
}

/// Run a parsed command, returning the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Stability { config } => cmd_stability(&config),
        Command::Measure(args) => cmd_measure(&args),
        Command::Analyze {
            analysis_config,
            out,
            raw,
        } => cmd_analyze(analysis_config.as_deref(), &out, raw.as_deref()),
        Command::Report { out } => cmd_report(&out),
        Command::Run {
            measure,
            analysis_config,
        } => cmd_run(&measure, analysis_config.as_deref()),
    }
}

fn load_pipeline(path: &Path, seed: Option<u64>) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::load(path)?;
    if let Some(seed) = seed {
        cfg.rng_seed = seed;
    }
    Ok(cfg)
}

fn load_analysis(path: Option<&Path>) -> Result<AnalysisConfig> {
    match path {
        Some(p) => AnalysisConfig::load(p),
        None => Ok(AnalysisConfig::default()),
    }
}

fn stability_gate(cfg: &PipelineConfig) -> Result<crate::model::StabilityReport> {
    let backend = campaign::backend::open_backend(cfg)?;
    backend.check_available()?;
    let readings = (cfg.stability_warmup_samples + cfg.stability_probe_samples + 1) as usize;
    let mut probe = backend.stability_probe(readings)?;
    verify_stability(probe.as_mut(), cfg)
}

pub fn cmd_stability(config: &Path) -> Result<i32> {
    let cfg = load_pipeline(config, None)?;
    let report = stability_gate(&cfg)?;
    println!(
        "stability verification ({} warm-up deltas, {} probe samples, threshold {})",
        cfg.stability_warmup_samples, cfg.stability_probe_samples, cfg.stability_z_threshold
    );
    println!("{:<8} {:>14}", "sample", "baseline J");
    for (i, d) in report.baseline_samples.iter().enumerate() {
        println!("{:<8} {:>14.6}", format!("warm-{i}"), d);
    }
    println!("{:<8} {:>14}", "probe", "|z|");
    for (i, z) in report.probe_scores.iter().enumerate() {
        let marker = if z.abs() > cfg.stability_z_threshold {
            "  << violation"
        } else {
            ""
        };
        println!("{:<8} {:>14.4}{marker}", i, z.abs());
    }
    match report.verdict {
        StabilityVerdict::Stable => {
            println!("verdict: stable");
            Ok(0)
        }
        StabilityVerdict::Unstable => {
            println!(
                "verdict: unstable (first violation at probe index {})",
                report.first_violation_index.unwrap_or(0)
            );
            Ok(2)
        }
    }
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<i32> {
    let cfg = load_pipeline(&args.config, args.seed)?;
    if args.dry_run {
        let (commits, plan) = campaign::plan_only(&cfg, &args.out)?;
        println!(
            "plan: {} commits x {} repetitions = {} tasks in {} batches (seed {})",
            commits.len(),
            cfg.repetitions,
            plan.tasks.len(),
            plan.batch_boundaries.len(),
            plan.rng_seed
        );
        for (i, (commit, run)) in plan.tasks.iter().enumerate() {
            let batch = plan
                .batch_boundaries
                .iter()
                .rev()
                .position(|&b| b <= i)
                .map(|p| plan.batch_boundaries.len() - 1 - p)
                .unwrap_or(0);
            println!("{i:>6}  batch {batch:>3}  {commit} run {run}");
        }
        return Ok(0);
    }
    if !args.skip_stability {
        let report = stability_gate(&cfg)?;
        if report.verdict == StabilityVerdict::Unstable {
            return Err(Error::Unstable(report.first_violation_index.unwrap_or(0)));
        }
        log::info!("stability verified");
    }
    let outcome = campaign::run_campaign(&cfg, &args.out, args.recheck_stability)?;
    for failure in &outcome.build_failures {
        log::warn!("build failed: {} ({})", failure.commit_id, failure.reason);
    }
    println!(
        "campaign complete: {} new rows, {} total, raw csv at {}",
        outcome.new_rows,
        outcome.total_rows,
        outcome.csv_path.display()
    );
    if outcome.total_rows == 0 {
        return Err(Error::NoData("campaign produced no samples".into()));
    }
    Ok(0)
}

pub fn cmd_analyze(analysis_config: Option<&Path>, out: &Path, raw: Option<&Path>) -> Result<i32> {
    let cfg = load_analysis(analysis_config)?;
    let manifest = CampaignManifest::load(&out.join("campaign.json"))?;
    let raw_path = raw
        .map(Path::to_path_buf)
        .unwrap_or_else(|| out.join("raw.csv"));
    let samples = rawcsv::read_samples(&raw_path)?;
    let artifacts = analyze_samples(&manifest, &samples, &cfg)?;
    write_bundles(out, &artifacts, &cfg)?;
    print_significant_table(&artifacts.detection.events);
    println!(
        "analysis complete: {} commits, {} events, bundles in {}",
        artifacts.records.len(),
        artifacts.detection.events.len(),
        out.display()
    );
    Ok(0)
}

fn print_significant_table(events: &[ChangeEvent]) {
    let significant: Vec<&ChangeEvent> = events.iter().filter(|e| e.level >= 1).collect();
    if significant.is_empty() {
        println!("no significant changes detected");
        return;
    }
    println!(
        "{:<12} {:<12} {:>5} {:>12} {:>10} {:>10} {:>10} {:>8}",
        "test", "baseline", "level", "direction", "delta %", "delta J", "p", "d"
    );
    for e in significant {
        println!(
            "{:<12} {:<12} {:>5} {:>12} {:>9.2}% {:>10.2} {:>10.2e} {:>8.2}",
            clip(&e.test, 12),
            clip(&e.baseline, 12),
            e.level,
            match e.direction {
                crate::model::Direction::Regression => "regression",
                crate::model::Direction::Improvement => "improvement",
                crate::model::Direction::None => "-",
            },
            e.percent_change * 100.0,
            e.delta_j,
            e.p_value,
            e.cohens_d,
        );
    }
}

fn clip(s: &str, n: usize) -> String {
    s.chars().take(n).collect()
}

pub fn cmd_report(out: &Path) -> Result<i32> {
    let index = render_report(out)?;
    println!("report written to {}", index.display());
    Ok(0)
}

pub fn cmd_run(measure: &MeasureArgs, analysis_config: Option<&Path>) -> Result<i32> {
    // Fail fast before any work when the backend cannot run here.
    let cfg = load_pipeline(&measure.config, measure.seed)?;
    let backend = campaign::backend::open_backend(&cfg)?;
    backend.check_available()?;
    drop(backend);

    let code = cmd_measure(measure)?;
    if code != 0 {
        return Ok(code);
    }
    cmd_analyze(analysis_config, &measure.out, None)?;
    cmd_report(&measure.out)
}
