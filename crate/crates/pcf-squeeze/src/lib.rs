//! Desk-scale simulator of polarization squeezing from a photonic-crystal
//! fiber placed in a Sagnac loop.
//!
//! Two femtosecond pulses counter-propagate along the same axis of a short
//! Kerr fiber, recombine into a circularly polarized bright beam, and the
//! squeezing of the dark S1-S2 Stokes plane is measured against the shot
//! noise of a coherent reference. The crate models each stage:
//!
//! - [`pulse`] / [`ssfm`] — sech pulse construction and split-step
//!   propagation through dispersion, Kerr nonlinearity, and loss;
//! - [`spectrum`] / [`overlap`] — output spectra, spectrometer file I/O,
//!   and the spectral overlap bound on the interference visibility;
//! - [`noise`] — linearized Gaussian covariance model: Kerr shear, excess
//!   phase noise, Sagnac recombination, loss channels, extremal variances,
//!   purity, and lossless inference;
//! - [`stokes`] — HWP-angle-resolved dark-plane variance, quantum-noise-limit
//!   calibration, and electronic dark-noise correction;
//! - [`config`] / [`sweep`] — experiment configuration files and the pulse
//!   energy sweep that drives all of the above, with CSV output.
//!
//! Every capability has a runnable demonstration under `examples/`:
//!
//! ```bash
//! cargo run --release --example soliton_propagation
//! cargo run --release --example spectral_broadening
//! cargo run --release --example spectral_overlap
//! cargo run --release --example kerr_squeezing
//! cargo run --release --example sagnac_dark_mode
//! cargo run --release --example hwp_noise_trace
//! cargo run --release --example loss_inference
//! cargo run --release --example energy_sweep
//! cargo run --release --example gawbs_calibration
//! ```
//!
//! The same functionality is scriptable through the `pcf-squeeze` binary
//! (`sweep`, `overlap`, `infer`, `propagate` subcommands).
//!
//! All values are SI unless a name says otherwise; noise variances are in
//! shot-noise units where vacuum is the identity covariance.

// `!(x > 0.0)` validation reads negated on purpose: unlike `x <= 0.0` it
// also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod grid;
pub mod noise;
pub mod overlap;
pub mod pulse;
pub mod spectrum;
pub mod ssfm;
pub mod stokes;
pub mod sweep;

pub use config::{load_config, ExperimentConfig};
pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use noise::{
    add_phase_noise, apply_loss, combine_sagnac, extremal_variances, gawbs_noise,
    infer_lossless, kerr_covariance, nonlinear_phase, EfficiencyChain, QuadCovariance,
    SqueezingResult,
};
pub use overlap::{common_grid, predicted_visibility, spectral_overlap, OverlapReport};
pub use pulse::{gamma_from_mode_area, make_sech_pulse, FiberParams, PulseEnvelope};
pub use spectrum::{
    load_spectrometer_file, save_spectrometer_file, spectrum, LoadedSpectrum, Spectrum,
};
pub use ssfm::propagate;
pub use stokes::{
    calibrate_qnl, dark_noise_correct, stokes_variance, sweep_hwp, DetectionMetadata,
    NoiseTrace, StokesState,
};
pub use sweep::{run_sweep, write_csv, Calibration, SweepEntry, SweepPlan, SweepRow};
