//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by signal analysis, synthesis and detection operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operation received an empty signal.
    #[error("signal is empty")]
    EmptySignal,

    /// A wavelet name did not match any supported filter family.
    #[error("unsupported wavelet `{0}`")]
    UnsupportedWavelet(String),

    /// A multi-level decomposition was requested deeper than the signal allows.
    #[error("decomposition depth {levels} too deep for signal of length {len}")]
    DepthExceeded { levels: usize, len: usize },

    /// Coefficient arrays handed to the inverse transform are inconsistent.
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    /// The signal is shorter than the operation requires.
    #[error("signal of length {len} is shorter than the required {min} samples")]
    SignalTooShort { len: usize, min: usize },

    /// The analysis window does not fit inside the signal.
    #[error("window of {window} samples exceeds signal length {len}")]
    WindowTooLong { window: usize, len: usize },

    /// A parameter struct violates its documented invariants.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Tip-speed ratio is undefined for non-positive wind speed.
    #[error("tip-speed ratio undefined for non-positive wind speed")]
    DegenerateWind,

    /// The implicit photovoltaic equation did not converge.
    #[error("photovoltaic solver did not converge (residual {residual:e})")]
    SolverDiverged { residual: f64 },

    /// A scenario violates its declared invariants.
    #[error("invalid scenario: {0}")]
    ScenarioInvalid(String),

    /// A calibration set is missing one of the required classes.
    #[error("calibration set has no {0} example")]
    MissingClass(&'static str),

    /// Fault and islanding energies overlap; no threshold separates them.
    #[error(
        "classes not separable: max fault energy {max_fault_energy} >= \
         min islanding energy {min_islanding_energy}"
    )]
    NotSeparable {
        max_fault_energy: f64,
        min_islanding_energy: f64,
    },
}
