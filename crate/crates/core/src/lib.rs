//! Detection of islanding and fault disturbances in distributed-generation
//! power systems from sampled voltage waveforms.
//!
//! The pipeline decomposes a point-of-common-coupling voltage signal with a
//! discrete wavelet transform, derives standard-deviation and energy
//! performance indices from the level-1 detail band, and classifies the
//! disturbance by comparing the indices against calibrated thresholds.
//! Fourier and short-time-Fourier baselines are included so the wavelet
//! indices can be compared against classical spectral ones, and a parametric
//! synthesizer generates three-phase test waveforms with wind/PV source
//! models and scripted fault or islanding events.
//!
//! # Example
//!
//! ```
//! use gridwave::{detector, synth, wavelet::WaveletName, EventKind};
//!
//! // Synthesize the labeled scenario catalog plus two healthy waveforms.
//! let mut labeled: Vec<_> = synth::catalog()
//!     .iter()
//!     .chain(synth::normal_scenarios(2).iter())
//!     .map(|sc| {
//!         let w = synth::synthesize(sc).unwrap();
//!         let kind = w.labels.as_ref().unwrap().kind;
//!         (w, kind)
//!     })
//!     .collect();
//!
//! // Calibrate thresholds and classify every waveform back.
//! let cfg = detector::calibrate(&labeled, WaveletName::Haar).unwrap();
//! for (w, truth) in labeled.drain(..) {
//!     let verdict = detector::detect(&w, &cfg).unwrap();
//!     assert_eq!(verdict.kind, truth);
//! }
//! # let _ = EventKind::Normal;
//! ```

pub mod detector;
pub mod error;
pub mod indices;
pub mod spectral;
pub mod synth;
pub mod wavelet;

pub use error::Error;

use std::fmt;
use std::str::FromStr;

/// Disturbance class of a waveform, either as ground truth or as a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// Healthy grid-connected operation.
    Normal,
    /// Utility grid disconnected while local DG keeps feeding the loads.
    Islanding,
    /// Short-circuit fault on one or more phases.
    Fault,
}

impl EventKind {
    /// Stable lowercase-insensitive name used in label files and reports.
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Normal => "Normal",
            EventKind::Islanding => "Islanding",
            EventKind::Fault => "Fault",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EventKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "normal" => Ok(EventKind::Normal),
            "islanding" => Ok(EventKind::Islanding),
            "fault" => Ok(EventKind::Fault),
            other => Err(Error::InvalidConfig(format!("unknown event kind `{other}`"))),
        }
    }
}
