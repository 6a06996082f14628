//! Commit-level energy regression detection.
//!
//! Measures a project's test-suite energy consumption across its git
//! history under a noise-controlled protocol (stability verification,
//! seeded batch shuffling, repetition, thermal guard, rest periods),
//! classifies each commit's energy change on a 5-level scale, and renders
//! an analyst-ready HTML report with evolution, CUSUM, change-point, and
//! distribution-comparison views.

pub mod analyze;
pub mod campaign;
pub mod cli;
pub mod config;
pub mod detect;
pub mod error;
pub mod model;
pub mod report;
pub mod rng;
pub mod stability;
pub mod stats;

pub use error::{Error, Result};
