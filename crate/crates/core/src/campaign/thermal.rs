//! Thermal guard: block before each measurement until the CPU has cooled
//! below the configured limit, so thermal throttling never contaminates
//! a sample.

use std::path::PathBuf;

use crate::config::PipelineConfig;
use crate::error::{Error, Result};

pub trait TemperatureSensor {
    fn read_celsius(&mut self) -> Result<f64>;
}

/// Hottest thermal zone under /sys/class/thermal.
pub struct SysfsTempSensor {
    zones: Vec<PathBuf>,
}

impl SysfsTempSensor {
    pub fn discover() -> Result<Self> {
        let mut zones = Vec::new();
        let entries = std::fs::read_dir("/sys/class/thermal")
            .map_err(|e| Error::Backend(format!("no thermal sysfs: {e}")))?;
        for entry in entries.flatten() {
            let path = entry.path();
            if path
                .file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("thermal_zone"))
            {
                zones.push(path.join("temp"));
            }
        }
        if zones.is_empty() {
            return Err(Error::Backend("no thermal zones found".into()));
        }
        zones.sort();
        Ok(SysfsTempSensor { zones })
    }
}

impl TemperatureSensor for SysfsTempSensor {
    fn read_celsius(&mut self) -> Result<f64> {
        let mut max = f64::NEG_INFINITY;
        for zone in &self.zones {
            let text = std::fs::read_to_string(zone)
                .map_err(|e| Error::Backend(format!("cannot read {zone:?}: {e}")))?;
            let millideg: f64 = text
                .trim()
                .parse()
                .map_err(|e| Error::Backend(format!("bad temperature in {zone:?}: {e}")))?;
            max = max.max(millideg / 1000.0);
        }
        Ok(max)
    }
}

pub struct ConstantSensor(pub f64);

impl TemperatureSensor for ConstantSensor {
    fn read_celsius(&mut self) -> Result<f64> {
        Ok(self.0)
    }
}

/// Block until the sensor reads at or below the thermal limit, polling
/// every `thermal_poll_seconds`. Returns the total waited seconds.
///
/// A failing sensor disables the guard: the wait is zero, a warning is
/// logged, and the caller records the sensor as gone.
pub fn thermal_guard_wait(
    cfg: &PipelineConfig,
    sensor: &mut dyn TemperatureSensor,
    sleep: &mut dyn FnMut(f64),
) -> Result<f64> {
    let mut waited = 0.0;
    loop {
        let temp = match sensor.read_celsius() {
            Ok(t) => t,
            Err(e) => {
                log::warn!("temperature sensor unavailable, thermal guard disabled: {e}");
                return Err(e);
            }
        };
        if temp <= cfg.thermal_limit_celsius {
            return Ok(waited);
        }
        log::info!(
            "thermal guard: {temp:.1} C above limit {:.1} C, pausing {:.1} s",
            cfg.thermal_limit_celsius,
            cfg.thermal_poll_seconds
        );
        sleep(cfg.thermal_poll_seconds);
        waited += cfg.thermal_poll_seconds;
    }
}
