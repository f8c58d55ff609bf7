//! Fourier and short-time-Fourier baselines for the index comparison.
//!
//! Both baselines reduce a signal to the same std/energy index pair as the
//! wavelet path, but measured on the upper part of the magnitude spectrum
//! instead of the level-1 detail band. The DFT is evaluated directly; at
//! desk scale (a few thousand samples) the O(N^2) cost is irrelevant and it
//! keeps the normalization exactly Parseval-consistent.

use crate::error::Error;
use crate::indices::{population_std, Band, PerformanceIndices};
use crate::wavelet::{filter_bank, WaveletName};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Analysis window applied to each STFT frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowShape {
    Rectangular,
    Hann,
}

/// Framing parameters for [`stft_indices`].
#[derive(Debug, Clone, PartialEq)]
pub struct StftConfig {
    pub window_length: usize,
    pub hop: usize,
    pub window_shape: WindowShape,
}

impl Default for StftConfig {
    fn default() -> Self {
        StftConfig {
            window_length: 64,
            hop: 32,
            window_shape: WindowShape::Hann,
        }
    }
}

impl StftConfig {
    fn validate(&self, signal_len: usize) -> Result<(), Error> {
        if self.window_length == 0 {
            return Err(Error::InvalidConfig("window_length must be positive".into()));
        }
        if self.hop == 0 || self.hop > self.window_length {
            return Err(Error::InvalidConfig(format!(
                "hop {} must be in 1..={}",
                self.hop, self.window_length
            )));
        }
        if self.window_length > signal_len {
            return Err(Error::WindowTooLong {
                window: self.window_length,
                len: signal_len,
            });
        }
        Ok(())
    }

    fn window(&self) -> Vec<f64> {
        let w = self.window_length;
        match self.window_shape {
            WindowShape::Rectangular => vec![1.0; w],
            WindowShape::Hann => (0..w)
                .map(|n| 0.5 * (1.0 - (2.0 * PI * n as f64 / w as f64).cos()))
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Direct DFT
// ---------------------------------------------------------------------------

/// Magnitude spectrum normalized by 1/sqrt(N), so that the squared
/// magnitudes sum exactly to the time-domain energy.
fn normalized_magnitudes(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    let mut cos_t = Vec::with_capacity(n);
    let mut sin_t = Vec::with_capacity(n);
    for j in 0..n {
        let angle = 2.0 * PI * j as f64 / n as f64;
        cos_t.push(angle.cos());
        sin_t.push(angle.sin());
    }
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| {
            let mut re = 0.0;
            let mut im = 0.0;
            // (k * j) mod n tracked incrementally; k < n keeps it in range.
            let mut idx = 0usize;
            for &x in signal {
                re += x * cos_t[idx];
                im -= x * sin_t[idx];
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            re.hypot(im) * scale
        })
        .collect()
}

/// Bin indices whose normalized frequency lies in the top `fraction` of the
/// range `[0, 0.5]`, mirrored onto both spectrum halves.
fn highband_bins(n: usize, fraction: f64) -> impl Iterator<Item = usize> {
    let cutoff = 0.5 * (1.0 - fraction);
    (0..n).filter(move |&k| {
        let folded = k.min(n - k) as f64 / n as f64;
        folded >= cutoff
    })
}

fn check_fraction(fraction: f64) -> Result<(), Error> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "highband_fraction {fraction} outside (0, 1]"
        )));
    }
    Ok(())
}

/// Spectral disturbance indices from the plain DFT magnitude spectrum.
///
/// Energy is the summed squared normalized magnitude over the high band
/// (both spectrum halves); std is the population deviation of those bin
/// magnitudes. With `fraction = 1` the energy equals the time-domain energy.
pub fn dft_indices(signal: &[f64], highband_fraction: f64) -> Result<PerformanceIndices, Error> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    check_fraction(highband_fraction)?;
    let magnitudes = normalized_magnitudes(signal);
    let band: Vec<f64> = highband_bins(signal.len(), highband_fraction)
        .map(|k| magnitudes[k])
        .collect();
    Ok(PerformanceIndices {
        std: population_std(&band),
        energy: band.iter().map(|m| m * m).sum(),
        band: Band::Spectral {
            highband_fraction,
        },
        signal_length: signal.len(),
    })
}

/// Framewise spectral indices: energy is the total high-band energy across
/// frames and std is the deviation of the per-frame high-band energy series,
/// so a temporally localized disturbance raises std even when its total
/// energy is modest.
pub fn stft_indices(
    signal: &[f64],
    cfg: &StftConfig,
    highband_fraction: f64,
) -> Result<PerformanceIndices, Error> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    check_fraction(highband_fraction)?;
    cfg.validate(signal.len())?;

    let w = cfg.window_length;
    let window = cfg.window();
    let bins: Vec<usize> = highband_bins(w, highband_fraction).collect();
    let mut frame = vec![0.0; w];
    let mut per_frame = Vec::new();
    let mut start = 0;
    while start + w <= signal.len() {
        for (i, slot) in frame.iter_mut().enumerate() {
            *slot = signal[start + i] * window[i];
        }
        let magnitudes = normalized_magnitudes(&frame);
        per_frame.push(bins.iter().map(|&k| magnitudes[k] * magnitudes[k]).sum());
        start += cfg.hop;
    }
    Ok(PerformanceIndices {
        std: population_std(&per_frame),
        energy: per_frame.iter().sum(),
        band: Band::Spectral {
            highband_fraction,
        },
        signal_length: signal.len(),
    })
}

// ---------------------------------------------------------------------------
// Transform dispatch for the comparison report
// ---------------------------------------------------------------------------

/// One row of the cross-transform comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Ft,
    Stft,
    Wt(WaveletName),
}

impl TransformKind {
    /// Comparison rows in report order.
    pub const ALL: [TransformKind; 7] = [
        TransformKind::Ft,
        TransformKind::Stft,
        TransformKind::Wt(WaveletName::Db1),
        TransformKind::Wt(WaveletName::Haar),
        TransformKind::Wt(WaveletName::Coif),
        TransformKind::Wt(WaveletName::Dmey),
        TransformKind::Wt(WaveletName::Db4),
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TransformKind::Ft => "FT",
            TransformKind::Stft => "STFT",
            TransformKind::Wt(WaveletName::Db1) => "WT_dB1",
            TransformKind::Wt(WaveletName::Haar) => "WT_Haar",
            TransformKind::Wt(WaveletName::Coif) => "WT_Coif",
            TransformKind::Wt(WaveletName::Dmey) => "WT_Demey",
            TransformKind::Wt(WaveletName::Db4) => "WT_dB4",
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ft" => Ok(TransformKind::Ft),
            "stft" => Ok(TransformKind::Stft),
            "wt_db1" => Ok(TransformKind::Wt(WaveletName::Db1)),
            "wt_haar" => Ok(TransformKind::Wt(WaveletName::Haar)),
            "wt_coif" => Ok(TransformKind::Wt(WaveletName::Coif)),
            "wt_demey" | "wt_dmey" => Ok(TransformKind::Wt(WaveletName::Dmey)),
            "wt_db4" => Ok(TransformKind::Wt(WaveletName::Db4)),
            other => Err(Error::InvalidConfig(format!("unknown transform `{other}`"))),
        }
    }
}

/// Default high band used when comparing transforms: the upper half of the
/// frequency range, the spectral analog of the level-1 detail band.
pub const DEFAULT_HIGHBAND_FRACTION: f64 = 0.5;

/// Computes the index pair for one comparison row with its default settings.
pub fn transform_indices(signal: &[f64], kind: TransformKind) -> Result<PerformanceIndices, Error> {
    match kind {
        TransformKind::Ft => dft_indices(signal, DEFAULT_HIGHBAND_FRACTION),
        TransformKind::Stft => {
            stft_indices(signal, &StftConfig::default(), DEFAULT_HIGHBAND_FRACTION)
        }
        TransformKind::Wt(name) => {
            crate::indices::compute_indices(signal, &filter_bank(name))
        }
    }
}
