//! Discrete wavelet transform filter banks.
//!
//! A signal is analyzed by correlating it against a quadrature filter pair
//! (lowpass `H`, highpass `G`) and downsampling by two, producing
//! approximation and detail coefficients:
//!
//! ```text
//! approx[n] = sum_m H(m) x[2n + m]      detail[n] = sum_m G(m) x[2n + m]
//! ```
//!
//! Boundaries are handled by periodic extension; odd-length inputs are first
//! padded by repeating the final sample so every level halves exactly. All
//! supported filters are orthonormal, so the analysis bank conserves energy
//! and the inverse transform is its adjoint.

use crate::error::Error;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

// ---------------------------------------------------------------------------
// Filter coefficient tables
// ---------------------------------------------------------------------------

const HAAR: [f64; 2] = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];

/// 8-tap Daubechies scaling filter with 4 vanishing moments, obtained by
/// spectral factorization of the degree-4 Daubechies polynomial and rounded
/// to double precision.
const DB4: [f64; 8] = [
    0.23037781330889653,
    0.7148465705529156,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909308,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

/// 62-tap FIR approximation of the discrete Meyer scaling filter, sampled
/// from the Meyer frequency response and projected onto the orthonormality
/// constraints so that perfect reconstruction holds at double precision.
const DMEY: [f64; 62] = [
    -3.490098711356308e-9,
    -4.401035752186115e-9,
    8.193369487882352e-8,
    1.8095166500316186e-7,
    -7.60778184183987e-7,
    -2.3886025549512697e-6,
    3.593578688128378e-6,
    1.4513406155731682e-5,
    -9.847273561670945e-6,
    -4.525008211273701e-5,
    2.5154217173038982e-5,
    8.359571946352938e-5,
    -1.0771943978524569e-4,
    -2.235372267085023e-4,
    4.0575366360531926e-4,
    9.411947693231367e-4,
    -1.0749246563812721e-3,
    -2.6422989548972086e-3,
    2.609856681633631e-3,
    5.80135231093618e-3,
    -6.383555964723156e-3,
    -1.0916153494237014e-2,
    1.4874835108648008e-2,
    1.7487372102062994e-2,
    -3.227279239728352e-2,
    -2.432048598229615e-2,
    6.372968121789148e-2,
    3.0584873988129663e-2,
    -1.3265591882259087e-1,
    -3.507318300282851e-2,
    4.441169326952231e-1,
    7.437272181844167e-1,
    4.441208994856816e-1,
    -3.507318300282851e-2,
    -1.3268378070804546e-1,
    3.0584873988129663e-2,
    6.367738966288006e-2,
    -2.432048598229615e-2,
    -3.202141501206777e-2,
    1.7487372102062994e-2,
    1.5393935986946258e-2,
    -1.0916153494237014e-2,
    -6.373554052294603e-3,
    5.80135231093618e-3,
    2.28470079978205e-3,
    -2.6422989548972086e-3,
    -6.252972375375401e-4,
    9.411947693231367e-4,
    2.8812068674208974e-4,
    -2.235372267085023e-4,
    -3.772936125152008e-4,
    8.359571946352938e-5,
    2.1042152462370927e-4,
    -4.525008211273701e-5,
    -5.39332701638888e-5,
    1.4513406155731682e-5,
    6.541185391182467e-6,
    -2.3886025549512697e-6,
    -3.260765568732196e-7,
    1.8095166500316186e-7,
    5.549732914142492e-9,
    -4.401035752186115e-9,
];

/// 6-tap Coiflet-1 scaling filter in its exact closed form.
fn coif1_lowpass() -> Vec<f64> {
    let s7 = 7f64.sqrt();
    let scale = SQRT_2 / 32.0;
    [
        s7 - 3.0,
        1.0 - s7,
        14.0 - 2.0 * s7,
        14.0 + 2.0 * s7,
        5.0 + s7,
        1.0 - s7,
    ]
    .iter()
    .map(|v| v * scale)
    .collect()
}

// ---------------------------------------------------------------------------
// Filter construction
// ---------------------------------------------------------------------------

/// Supported mother-wavelet families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletName {
    /// 2-tap Haar filter.
    Haar,
    /// Daubechies-1; mathematically identical to [`WaveletName::Haar`].
    Db1,
    /// 8-tap Daubechies filter with 4 vanishing moments.
    Db4,
    /// 6-tap Coiflet-1 filter.
    Coif,
    /// 62-tap discrete Meyer approximation.
    Dmey,
}

impl WaveletName {
    /// All supported names, in a stable order.
    pub const ALL: [WaveletName; 5] = [
        WaveletName::Haar,
        WaveletName::Db1,
        WaveletName::Db4,
        WaveletName::Coif,
        WaveletName::Dmey,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            WaveletName::Haar => "haar",
            WaveletName::Db1 => "db1",
            WaveletName::Db4 => "db4",
            WaveletName::Coif => "coif",
            WaveletName::Dmey => "dmey",
        }
    }
}

impl fmt::Display for WaveletName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WaveletName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "haar" => Ok(WaveletName::Haar),
            "db1" => Ok(WaveletName::Db1),
            "db4" => Ok(WaveletName::Db4),
            "coif" | "coif1" => Ok(WaveletName::Coif),
            "dmey" | "demey" => Ok(WaveletName::Dmey),
            other => Err(Error::UnsupportedWavelet(other.to_string())),
        }
    }
}

/// A named quadrature mirror filter pair.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    pub name: WaveletName,
    /// Lowpass (scaling) coefficients `H`; sums to sqrt(2), unit energy.
    pub lowpass: Vec<f64>,
    /// Highpass (wavelet) coefficients `G(k) = (-1)^k H(L-1-k)`.
    pub highpass: Vec<f64>,
    /// Number of polynomial degrees annihilated by the highpass branch.
    pub vanishing_moments: usize,
}

impl WaveletFilter {
    /// Filter length in taps.
    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }
}

/// Quadrature mirror of a lowpass filter: `g[k] = (-1)^k h[L-1-k]`.
fn quadrature_mirror(lowpass: &[f64]) -> Vec<f64> {
    let l = lowpass.len();
    (0..l)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * lowpass[l - 1 - k]
        })
        .collect()
}

/// Builds the analysis filter pair for a named wavelet family.
pub fn filter_bank(name: WaveletName) -> WaveletFilter {
    let (lowpass, vanishing_moments): (Vec<f64>, usize) = match name {
        WaveletName::Haar | WaveletName::Db1 => (HAAR.to_vec(), 1),
        WaveletName::Db4 => (DB4.to_vec(), 4),
        WaveletName::Coif => (coif1_lowpass(), 2),
        // The truncation keeps the Meyer response but only the zeroth
        // highpass moment is pinned exactly.
        WaveletName::Dmey => (DMEY.to_vec(), 1),
    };
    let highpass = quadrature_mirror(&lowpass);
    WaveletFilter {
        name,
        lowpass,
        highpass,
        vanishing_moments,
    }
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// Boundary handling for the analysis bank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Circular indexing, with odd-length inputs padded by repeating the
    /// final sample so each level halves exactly.
    Periodic,
}

/// Coefficients of a multi-level decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    /// Number of analysis levels.
    pub levels: usize,
    /// Approximation at the coarsest level (`A_J`).
    pub approx_final: Vec<f64>,
    /// Detail bands finest first: `details[0]` is `D_1`, the band the
    /// performance indices are computed from.
    pub details: Vec<Vec<f64>>,
    pub boundary_mode: BoundaryMode,
    /// Length of the original (unpadded) input signal.
    pub source_length: usize,
}

/// Returns the input extended to even length by repeating the last sample.
fn pad_to_even(signal: &[f64]) -> Vec<f64> {
    let mut padded = signal.to_vec();
    if padded.len() % 2 == 1 {
        padded.push(*padded.last().expect("non-empty"));
    }
    padded
}

fn analyze(padded: &[f64], filter: &WaveletFilter) -> (Vec<f64>, Vec<f64>) {
    let n = padded.len();
    debug_assert!(n % 2 == 0);
    let half = n / 2;
    let l = filter.len();
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    for out in 0..half {
        let base = 2 * out;
        let mut a = 0.0;
        let mut d = 0.0;
        if base + l <= n {
            for (m, x) in padded[base..base + l].iter().enumerate() {
                a += filter.lowpass[m] * x;
                d += filter.highpass[m] * x;
            }
        } else {
            for m in 0..l {
                let x = padded[(base + m) % n];
                a += filter.lowpass[m] * x;
                d += filter.highpass[m] * x;
            }
        }
        approx[out] = a;
        detail[out] = d;
    }
    (approx, detail)
}

/// Single-level analysis: correlate against the filter pair and keep every
/// second output, under periodic extension.
///
/// Both outputs have length `ceil(signal.len() / 2)`.
pub fn dwt_single_level(
    signal: &[f64],
    filter: &WaveletFilter,
) -> Result<(Vec<f64>, Vec<f64>), Error> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    let padded = pad_to_even(signal);
    Ok(analyze(&padded, filter))
}

/// Multi-level analysis: re-analyzes successive approximations `levels`
/// times. Requires `2^levels <= signal.len()`.
pub fn dwt_multi_level(
    signal: &[f64],
    filter: &WaveletFilter,
    levels: usize,
) -> Result<DecompositionResult, Error> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    if levels == 0 {
        return Err(Error::InvalidConfig("levels must be at least 1".into()));
    }
    if levels >= usize::BITS as usize || (1usize << levels) > signal.len() {
        return Err(Error::DepthExceeded {
            levels,
            len: signal.len(),
        });
    }

    let mut details = Vec::with_capacity(levels);
    let mut current = signal.to_vec();
    for _ in 0..levels {
        let padded = pad_to_even(&current);
        let (approx, detail) = analyze(&padded, filter);
        details.push(detail);
        current = approx;
    }
    Ok(DecompositionResult {
        levels,
        approx_final: current,
        details,
        boundary_mode: BoundaryMode::Periodic,
        source_length: signal.len(),
    })
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

fn synthesize_level(approx: &[f64], detail: &[f64], filter: &WaveletFilter) -> Vec<f64> {
    let half = approx.len();
    let n = 2 * half;
    let l = filter.len();
    let mut out = vec![0.0; n];
    for i in 0..half {
        let base = 2 * i;
        let (a, d) = (approx[i], detail[i]);
        if base + l <= n {
            for (m, slot) in out[base..base + l].iter_mut().enumerate() {
                *slot += filter.lowpass[m] * a + filter.highpass[m] * d;
            }
        } else {
            for m in 0..l {
                out[(base + m) % n] += filter.lowpass[m] * a + filter.highpass[m] * d;
            }
        }
    }
    out
}

fn even_padded_len(n: usize) -> usize {
    n + n % 2
}

/// Inverse transform: rebuilds the signal a [`dwt_multi_level`] call analyzed.
///
/// The coefficient arrays must form a consistent pyramid for the given
/// filter; any length mismatch yields [`Error::MalformedDecomposition`].
pub fn idwt(result: &DecompositionResult, filter: &WaveletFilter) -> Result<Vec<f64>, Error> {
    if result.levels == 0 || result.levels != result.details.len() {
        return Err(Error::MalformedDecomposition(format!(
            "levels field is {} but {} detail bands are present",
            result.levels,
            result.details.len()
        )));
    }
    let coarsest = &result.details[result.levels - 1];
    if result.approx_final.len() != coarsest.len() {
        return Err(Error::MalformedDecomposition(format!(
            "final approximation has {} coefficients, coarsest detail has {}",
            result.approx_final.len(),
            coarsest.len()
        )));
    }
    if result.approx_final.is_empty() {
        return Err(Error::MalformedDecomposition(
            "empty coefficient arrays".into(),
        ));
    }
    // Expected (unpadded) input length at each level, finest first.
    let mut parent_lengths = Vec::with_capacity(result.levels);
    parent_lengths.push(result.source_length);
    for level in 1..result.levels {
        parent_lengths.push(result.details[level - 1].len());
    }
    for (level, detail) in result.details.iter().enumerate() {
        let expected = even_padded_len(parent_lengths[level]) / 2;
        if detail.len() != expected {
            return Err(Error::MalformedDecomposition(format!(
                "detail band {} has {} coefficients, expected {}",
                level + 1,
                detail.len(),
                expected
            )));
        }
    }

    let mut current = result.approx_final.clone();
    for level in (0..result.levels).rev() {
        let mut rebuilt = synthesize_level(&current, &result.details[level], filter);
        rebuilt.truncate(parent_lengths[level]);
        current = rebuilt;
    }
    Ok(current)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_filter_is_the_unique_two_tap_solution() {
        let f = filter_bank(WaveletName::Haar);
        assert_eq!(f.lowpass, vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert_eq!(f.highpass, vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        assert_eq!(f.vanishing_moments, 1);
    }

    #[test]
    fn haar_and_db1_coefficients_are_bit_identical() {
        let haar = filter_bank(WaveletName::Haar);
        let db1 = filter_bank(WaveletName::Db1);
        assert_eq!(haar.lowpass, db1.lowpass);
        assert_eq!(haar.highpass, db1.highpass);
    }

    #[test]
    fn all_filters_satisfy_orthonormality_invariants() {
        for name in WaveletName::ALL {
            let f = filter_bank(name);
            assert_eq!(f.lowpass.len(), f.highpass.len(), "{name}");
            assert_eq!(f.len() % 2, 0, "{name}: filter length must be even");

            let sum: f64 = f.lowpass.iter().sum();
            assert!(
                (sum - SQRT_2).abs() < 1e-12,
                "{name}: sum of lowpass = {sum}"
            );
            let energy: f64 = f.lowpass.iter().map(|c| c * c).sum();
            assert!((energy - 1.0).abs() < 1e-12, "{name}: energy = {energy}");

            // Shifted self-orthogonality makes the periodic bank orthogonal.
            for shift in (2..f.len()).step_by(2) {
                let dot: f64 = f.lowpass[..f.len() - shift]
                    .iter()
                    .zip(&f.lowpass[shift..])
                    .map(|(a, b)| a * b)
                    .sum();
                assert!(dot.abs() < 1e-12, "{name}: shift {shift} dot = {dot}");
            }

            for (k, g) in f.highpass.iter().enumerate() {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(*g, sign * f.lowpass[f.len() - 1 - k], "{name}: QMF at {k}");
            }
        }
    }

    #[test]
    fn db4_moment_conditions_hold() {
        let f = filter_bank(WaveletName::Db4);
        assert_eq!(f.len(), 8);
        assert_eq!(f.vanishing_moments, 4);
        for moment in 0..4 {
            let s: f64 = f
                .highpass
                .iter()
                .enumerate()
                .map(|(k, g)| (k as f64).powi(moment) * g)
                .sum();
            assert!(s.abs() < 1e-10, "moment {moment} = {s:e}");
        }
    }

    #[test]
    fn unknown_name_is_rejected() {
        let err = "sym4".parse::<WaveletName>().unwrap_err();
        assert!(matches!(err, Error::UnsupportedWavelet(ref s) if s == "sym4"));
    }

    #[test]
    fn name_round_trips_through_strings() {
        for name in WaveletName::ALL {
            assert_eq!(name.as_str().parse::<WaveletName>().unwrap(), name);
        }
        assert_eq!("Demey".parse::<WaveletName>().unwrap(), WaveletName::Dmey);
    }

    #[test]
    fn constant_signal_has_zero_detail() {
        let f = filter_bank(WaveletName::Haar);
        let (approx, detail) = dwt_single_level(&[1.0, 1.0, 1.0, 1.0], &f).unwrap();
        assert_eq!(approx, vec![SQRT_2, SQRT_2]);
        assert_eq!(detail, vec![0.0, 0.0]);
    }

    #[test]
    fn alternating_signal_has_zero_approximation() {
        let f = filter_bank(WaveletName::Haar);
        let (approx, detail) = dwt_single_level(&[1.0, -1.0, 1.0, -1.0], &f).unwrap();
        assert_eq!(approx, vec![0.0, 0.0]);
        assert_eq!(detail, vec![SQRT_2, SQRT_2]);
    }

    #[test]
    fn constant_signal_details_vanish_at_depth() {
        for name in WaveletName::ALL {
            let f = filter_bank(name);
            let signal = vec![0.75; 256];
            let result = dwt_multi_level(&signal, &f, 4).unwrap();
            for (level, detail) in result.details.iter().enumerate() {
                let max = detail.iter().fold(0.0f64, |m, d| m.max(d.abs()));
                assert!(max < 1e-12, "{name}: level {} max detail {max}", level + 1);
            }
        }
    }

    #[test]
    fn single_level_matches_depth_one_decomposition() {
        let f = filter_bank(WaveletName::Db4);
        let signal: Vec<f64> = (0..67).map(|i| ((i * i) % 23) as f64 * 0.1 - 1.0).collect();
        let (approx, detail) = dwt_single_level(&signal, &f).unwrap();
        let multi = dwt_multi_level(&signal, &f, 1).unwrap();
        assert_eq!(multi.approx_final, approx);
        assert_eq!(multi.details, vec![detail]);
        assert_eq!(multi.source_length, 67);
    }

    #[test]
    fn odd_lengths_follow_the_ceiling_law() {
        let f = filter_bank(WaveletName::Haar);
        let signal = vec![0.3; 5];
        let (approx, detail) = dwt_single_level(&signal, &f).unwrap();
        assert_eq!(approx.len(), 3);
        assert_eq!(detail.len(), 3);
    }

    #[test]
    fn empty_signal_is_rejected() {
        let f = filter_bank(WaveletName::Haar);
        assert_eq!(dwt_single_level(&[], &f).unwrap_err(), Error::EmptySignal);
        assert_eq!(
            dwt_multi_level(&[], &f, 1).unwrap_err(),
            Error::EmptySignal
        );
    }

    #[test]
    fn excessive_depth_is_rejected() {
        let f = filter_bank(WaveletName::Haar);
        let signal = vec![1.0; 8];
        assert!(dwt_multi_level(&signal, &f, 3).is_ok());
        assert_eq!(
            dwt_multi_level(&signal, &f, 4).unwrap_err(),
            Error::DepthExceeded { levels: 4, len: 8 }
        );
    }

    #[test]
    fn zero_levels_is_invalid() {
        let f = filter_bank(WaveletName::Haar);
        assert!(matches!(
            dwt_multi_level(&[1.0, 2.0], &f, 0),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn idwt_of_zero_coefficients_is_zero() {
        let f = filter_bank(WaveletName::Coif);
        let result = dwt_multi_level(&vec![0.0; 64], &f, 3).unwrap();
        let rebuilt = idwt(&result, &f).unwrap();
        assert_eq!(rebuilt, vec![0.0; 64]);
    }

    #[test]
    fn truncated_detail_band_is_rejected() {
        let f = filter_bank(WaveletName::Haar);
        let signal: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut result = dwt_multi_level(&signal, &f, 2).unwrap();
        result.details[0].pop();
        assert!(matches!(
            idwt(&result, &f),
            Err(Error::MalformedDecomposition(_))
        ));
    }

    #[test]
    fn mismatched_final_approximation_is_rejected() {
        let f = filter_bank(WaveletName::Haar);
        let signal: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).cos()).collect();
        let mut result = dwt_multi_level(&signal, &f, 2).unwrap();
        result.approx_final.push(0.0);
        assert!(matches!(
            idwt(&result, &f),
            Err(Error::MalformedDecomposition(_))
        ));
    }
}
