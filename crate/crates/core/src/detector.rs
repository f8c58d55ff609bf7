//! Two-stage disturbance classification.
//!
//! A presence gate on the peak magnitude of the level-1 detail band first
//! separates healthy operation from any disturbance; the disturbance is then
//! classified by comparing the d1 energy index against a class threshold —
//! above it the event is islanding, below it a fault. The gate is needed
//! because the energy index alone cannot tell a healthy waveform from a
//! faulted one. Thresholds are calibrated from labeled example waveforms.

use crate::error::Error;
use crate::indices::{population_std, Band, PerformanceIndices};
use crate::synth::Waveform;
use crate::wavelet::{dwt_single_level, filter_bank, WaveletFilter, WaveletName};
use crate::EventKind;
use std::fmt;
use std::str::FromStr;

/// Which channel of a three-phase waveform feeds the detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelPolicy {
    /// The phase whose detail band has the largest peak magnitude.
    WorstPhase,
    /// Always phase a.
    PhaseA,
    /// Sample-wise mean of the three phases.
    Mean,
}

impl ChannelPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelPolicy::WorstPhase => "worst_phase",
            ChannelPolicy::PhaseA => "phase_a",
            ChannelPolicy::Mean => "mean",
        }
    }
}

impl fmt::Display for ChannelPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "worst_phase" | "worst" => Ok(ChannelPolicy::WorstPhase),
            "phase_a" | "a" => Ok(ChannelPolicy::PhaseA),
            "mean" => Ok(ChannelPolicy::Mean),
            other => Err(Error::InvalidConfig(format!(
                "unknown channel policy `{other}`"
            ))),
        }
    }
}

/// Channel a verdict was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelId {
    PhaseA,
    PhaseB,
    PhaseC,
    Mean,
}

impl ChannelId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelId::PhaseA => "a",
            ChannelId::PhaseB => "b",
            ChannelId::PhaseC => "c",
            ChannelId::Mean => "mean",
        }
    }
}

impl fmt::Display for ChannelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Calibrated detector parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    pub filter_name: WaveletName,
    /// Presence gate on `max |d1|`; at or below it the waveform is Normal.
    pub gate_threshold: f64,
    /// Class split on d1 energy; above it the disturbance is islanding.
    pub class_threshold: f64,
    pub channel_policy: ChannelPolicy,
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.gate_threshold >= 0.0 && self.gate_threshold.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "gate_threshold {} must be finite and non-negative",
                self.gate_threshold
            )));
        }
        if !(self.class_threshold > 0.0 && self.class_threshold.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "class_threshold {} must be finite and positive",
                self.class_threshold
            )));
        }
        Ok(())
    }
}

/// Classification outcome for one waveform.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionVerdict {
    pub kind: EventKind,
    pub indices: PerformanceIndices,
    /// Estimated event start in signal coordinates; present exactly when
    /// the verdict is not Normal.
    pub onset_sample: Option<usize>,
    pub channel_used: ChannelId,
}

fn peak_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Maps the first above-gate detail coefficient back to signal coordinates.
///
/// Level-1 coefficients sit at every second sample, so coefficient index `i`
/// reports onset `2 * i`. Returns `None` when the gate is never exceeded.
pub fn locate_event(d1: &[f64], gate_threshold: f64) -> Option<usize> {
    d1.iter()
        .position(|d| d.abs() > gate_threshold)
        .map(|i| 2 * i)
}

struct ChannelAnalysis {
    id: ChannelId,
    d1: Vec<f64>,
    peak: f64,
}

fn analyze_channel(
    signal: &[f64],
    filter: &WaveletFilter,
    id: ChannelId,
) -> Result<ChannelAnalysis, Error> {
    let min = 2 * filter.len();
    if signal.len() < min {
        return Err(Error::SignalTooShort {
            len: signal.len(),
            min,
        });
    }
    let (_, d1) = dwt_single_level(signal, filter)?;
    let peak = peak_abs(&d1);
    Ok(ChannelAnalysis { id, d1, peak })
}

fn select_channel(
    w: &Waveform,
    filter: &WaveletFilter,
    policy: ChannelPolicy,
) -> Result<ChannelAnalysis, Error> {
    match policy {
        ChannelPolicy::PhaseA => analyze_channel(&w.channels[0], filter, ChannelId::PhaseA),
        ChannelPolicy::Mean => analyze_channel(&w.mean_channel(), filter, ChannelId::Mean),
        ChannelPolicy::WorstPhase => {
            let ids = [ChannelId::PhaseA, ChannelId::PhaseB, ChannelId::PhaseC];
            let mut worst: Option<ChannelAnalysis> = None;
            for (ch, id) in ids.into_iter().enumerate() {
                let analysis = analyze_channel(&w.channels[ch], filter, id)?;
                let better = worst.as_ref().map_or(true, |b| analysis.peak > b.peak);
                if better {
                    worst = Some(analysis);
                }
            }
            Ok(worst.expect("three channels analyzed"))
        }
    }
}

/// Classifies a waveform against calibrated thresholds.
pub fn detect(w: &Waveform, cfg: &DetectorConfig) -> Result<DetectionVerdict, Error> {
    cfg.validate()?;
    let filter = filter_bank(cfg.filter_name);
    let analysis = select_channel(w, &filter, cfg.channel_policy)?;

    let energy: f64 = analysis.d1.iter().map(|d| d * d).sum();
    let indices = PerformanceIndices {
        std: population_std(&analysis.d1),
        energy,
        band: Band::Detail(1),
        signal_length: w.len(),
    };

    let kind = if analysis.peak <= cfg.gate_threshold {
        EventKind::Normal
    } else if energy > cfg.class_threshold {
        EventKind::Islanding
    } else {
        EventKind::Fault
    };
    let onset_sample = if kind == EventKind::Normal {
        None
    } else {
        locate_event(&analysis.d1, cfg.gate_threshold)
    };

    Ok(DetectionVerdict {
        kind,
        indices,
        onset_sample,
        channel_used: analysis.id,
    })
}

// ---------------------------------------------------------------------------
// Calibration
// ---------------------------------------------------------------------------

/// Gate rule: three times the largest healthy detail peak.
pub fn gate_from_normal_peaks(peaks: &[f64]) -> Result<f64, Error> {
    if peaks.is_empty() {
        return Err(Error::MissingClass("Normal"));
    }
    Ok(3.0 * peaks.iter().fold(0.0f64, |m, p| m.max(*p)))
}

/// Class-threshold rule: geometric mean of the worst fault energy and the
/// weakest islanding energy. Energies spanning decades make the midpoint in
/// log space the stable choice.
pub fn class_threshold_from_energies(
    fault_energies: &[f64],
    islanding_energies: &[f64],
) -> Result<f64, Error> {
    if fault_energies.is_empty() {
        return Err(Error::MissingClass("Fault"));
    }
    if islanding_energies.is_empty() {
        return Err(Error::MissingClass("Islanding"));
    }
    let max_fault = fault_energies.iter().fold(f64::MIN, |m, e| m.max(*e));
    let min_islanding = islanding_energies.iter().fold(f64::MAX, |m, e| m.min(*e));
    if max_fault >= min_islanding {
        return Err(Error::NotSeparable {
            max_fault_energy: max_fault,
            min_islanding_energy: min_islanding,
        });
    }
    Ok((max_fault * min_islanding).sqrt())
}

/// Derives detector thresholds from labeled waveforms.
///
/// Needs at least one example of each class; the channel policy used for
/// calibration (and recorded in the config) is [`ChannelPolicy::WorstPhase`].
pub fn calibrate(
    labeled: &[(Waveform, EventKind)],
    filter_name: WaveletName,
) -> Result<DetectorConfig, Error> {
    let filter = filter_bank(filter_name);
    let mut normal_peaks = Vec::new();
    let mut fault_energies = Vec::new();
    let mut islanding_energies = Vec::new();

    for (w, kind) in labeled {
        let analysis = select_channel(w, &filter, ChannelPolicy::WorstPhase)?;
        match kind {
            EventKind::Normal => normal_peaks.push(analysis.peak),
            EventKind::Fault => {
                fault_energies.push(analysis.d1.iter().map(|d| d * d).sum());
            }
            EventKind::Islanding => {
                islanding_energies.push(analysis.d1.iter().map(|d| d * d).sum());
            }
        }
    }

    let gate_threshold = gate_from_normal_peaks(&normal_peaks)?;
    let class_threshold = class_threshold_from_energies(&fault_energies, &islanding_energies)?;
    Ok(DetectorConfig {
        filter_name,
        gate_threshold,
        class_threshold,
        channel_policy: ChannelPolicy::WorstPhase,
    })
}
