//! The append-only raw measurement CSV.
//!
//! Fixed 8-column layout, one row per completed task, flushed after every
//! append so a crash loses at most one partial line. Resume re-reads the
//! file, truncates a torn trailing line, and skips completed tasks.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};

use crate::error::{Error, Result};
use crate::model::MeasurementSample;

pub const HEADER: &str = "commit_id,run_index,energy_joules,duration_seconds,exit_status,temp_before_c,temp_after_c,wall_clock_start";

/// Append-only writer. Creates the file with a header when absent.
pub struct RawCsvWriter {
    out: BufWriter<File>,
}

impl RawCsvWriter {
    pub fn append_to(path: &Path) -> Result<Self> {
        let fresh = !path.exists();
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut out = BufWriter::new(file);
        if fresh {
            writeln!(out, "{HEADER}")?;
            out.flush()?;
        }
        Ok(RawCsvWriter { out })
    }

    pub fn write_sample(&mut self, s: &MeasurementSample) -> Result<()> {
        writeln!(self.out, "{}", format_row(s))?;
        self.out.flush()?;
        Ok(())
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(|t| t.to_string()).unwrap_or_default()
}

pub fn format_timestamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn format_row(s: &MeasurementSample) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        s.commit_id,
        s.run_index,
        s.energy_joules,
        s.duration_seconds,
        s.exit_status,
        format_opt(s.temp_before_celsius),
        format_opt(s.temp_after_celsius),
        format_timestamp(s.wall_clock_start),
    )
}

fn parse_row(line: &str) -> Option<MeasurementSample> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 8 {
        return None;
    }
    let opt = |s: &str| -> Option<Option<f64>> {
        if s.is_empty() {
            Some(None)
        } else {
            s.parse::<f64>().ok().map(Some)
        }
    };
    Some(MeasurementSample {
        commit_id: fields[0].to_string(),
        run_index: fields[1].parse().ok()?,
        energy_joules: fields[2].parse().ok()?,
        duration_seconds: fields[3].parse().ok()?,
        exit_status: fields[4].parse().ok()?,
        temp_before_celsius: opt(fields[5])?,
        temp_after_celsius: opt(fields[6])?,
        wall_clock_start: DateTime::parse_from_rfc3339(fields[7])
            .ok()?
            .with_timezone(&Utc),
    })
}

/// Read all well-formed samples; malformed rows are skipped with a warning.
pub fn read_samples(path: &Path) -> Result<Vec<MeasurementSample>> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            if line != HEADER {
                return Err(Error::NoData(format!(
                    "unexpected raw csv header: {line:?}"
                )));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match parse_row(line) {
            Some(s) => samples.push(s),
            None => log::warn!("skipping malformed raw.csv row {}: {line:?}", lineno + 1),
        }
    }
    Ok(samples)
}

/// Completed (commit, run) -> duration map for resuming. A torn trailing
/// line (no newline terminator or unparsable) is truncated away so the
/// writer can append cleanly.
pub fn read_completed(path: &Path) -> Result<HashMap<(String, u32), f64>> {
    let mut file = OpenOptions::new().read(true).write(true).open(path)?;
    let mut text = String::new();
    file.read_to_string(&mut text)?;

    let mut done = HashMap::new();
    let mut valid_bytes = 0usize;
    let mut first = true;
    for line in text.split_inclusive('\n') {
        let terminated = line.ends_with('\n');
        let body = line.trim_end_matches(['\n', '\r']);
        if first {
            first = false;
            if body != HEADER {
                return Err(Error::NoData(format!(
                    "unexpected raw csv header: {body:?}"
                )));
            }
            valid_bytes += line.len();
            continue;
        }
        if body.is_empty() {
            valid_bytes += line.len();
            continue;
        }
        match parse_row(body) {
            Some(s) if terminated => {
                done.insert((s.commit_id, s.run_index), s.duration_seconds);
                valid_bytes += line.len();
            }
            _ => {
                log::warn!("truncating torn raw.csv tail: {body:?}");
                break;
            }
        }
    }
    if valid_bytes < text.len() {
        file.set_len(valid_bytes as u64)?;
        file.seek(SeekFrom::End(0))?;
    }
    Ok(done)
}
