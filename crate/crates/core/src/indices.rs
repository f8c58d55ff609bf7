//! Performance indices: signal energy and standard deviation.
//!
//! The disturbance indices are computed from the level-1 detail band of a
//! wavelet decomposition. By Parseval's theorem the summed squared wavelet
//! coefficients of an orthonormal decomposition equal the time-domain energy
//! of the (padded) input, which the tests verify directly.

use crate::error::Error;
use crate::wavelet::{dwt_multi_level, DecompositionResult, WaveletFilter};

/// Where an index pair was measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Band {
    /// Raw time-domain samples.
    Time,
    /// Detail band at the given decomposition level (1 = finest).
    Detail(usize),
    /// Upper spectral band covering the top `highband_fraction` of the
    /// frequency range.
    Spectral { highband_fraction: f64 },
}

/// Standard deviation and energy of a coefficient band.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceIndices {
    /// Population standard deviation of the band.
    pub std: f64,
    /// Sum of squared band values.
    pub energy: f64,
    /// Source the indices were measured on.
    pub band: Band,
    /// Length of the analyzed signal.
    pub signal_length: usize,
}

/// Time-domain energy `sum |V[n]|^2`.
pub fn signal_energy(signal: &[f64]) -> Result<f64, Error> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    Ok(signal.iter().map(|v| v * v).sum())
}

/// Wavelet-domain energy: squared final approximation plus squared details
/// over every level.
pub fn coefficient_energy(result: &DecompositionResult) -> f64 {
    let approx: f64 = result.approx_final.iter().map(|c| c * c).sum();
    let details: f64 = result
        .details
        .iter()
        .map(|band| band.iter().map(|d| d * d).sum::<f64>())
        .sum();
    approx + details
}

/// Population standard deviation (divide by N, not N-1).
pub fn population_std(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    var.sqrt()
}

/// Indices of the detail band at `level`, for experimentation with coarser
/// bands than the default.
pub fn detail_indices(
    signal: &[f64],
    filter: &WaveletFilter,
    level: usize,
) -> Result<PerformanceIndices, Error> {
    let min = 2 * filter.len();
    if signal.len() < min {
        return Err(Error::SignalTooShort {
            len: signal.len(),
            min,
        });
    }
    let decomposition = dwt_multi_level(signal, filter, level)?;
    let band = &decomposition.details[level - 1];
    Ok(PerformanceIndices {
        std: population_std(band),
        energy: band.iter().map(|d| d * d).sum(),
        band: Band::Detail(level),
        signal_length: signal.len(),
    })
}

/// Disturbance indices from the level-1 detail band `d1`.
pub fn compute_indices(
    signal: &[f64],
    filter: &WaveletFilter,
) -> Result<PerformanceIndices, Error> {
    detail_indices(signal, filter, 1)
}
