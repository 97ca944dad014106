//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by pulse construction, propagation, spectral analysis,
/// the Gaussian noise model, and configuration parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time grid too small: window {window_s:.3e} s is below 20x the pulse FWHM ({required_s:.3e} s)")]
    GridTooSmall { window_s: f64, required_s: f64 },

    #[error("time grid must have a power-of-two sample count >= 256, got {0}")]
    BadGrid(usize),

    #[error("pulse energy must be positive, got {0:.3e} J")]
    NonpositiveEnergy(f64),

    #[error("{name} must be positive, got {value:.3e}")]
    NonpositiveInput { name: &'static str, value: f64 },

    #[error("{name} = {value:.6} outside valid range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("step count {0} below the minimum of {1}")]
    StepCount(usize, usize),

    #[error("field wrapped around the time window ({context}: edge magnitude {edge_ratio:.3e} of peak)")]
    Wraparound { context: &'static str, edge_ratio: f64 },

    #[error("spectra live on different frequency grids")]
    GridMismatch,

    #[error("spectrum has no positive density")]
    EmptySpectrum,

    #[error("invalid pulse: {0}")]
    BadPulse(String),

    #[error("invalid spectrum: {0}")]
    BadSpectrum(String),

    #[error("invalid covariance matrix: {0}")]
    BadCovariance(String),

    #[error("unphysical input: measured variance {v_meas:.6} is below the vacuum floor 1 - eta = {floor:.6}")]
    UnphysicalVariance { v_meas: f64, floor: f64 },

    #[error("signal variance does not exceed the dark noise")]
    SignalBelowDark,

    #[error("QNL reference does not exceed the dark noise")]
    QnlBelowDark,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: wavelengths are not monotone")]
    NonMonotoneWavelength { path: String, line: usize },

    #[error("{path}:{line}: unknown configuration key `{key}`")]
    UnknownKey {
        path: String,
        line: usize,
        key: String,
    },

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
