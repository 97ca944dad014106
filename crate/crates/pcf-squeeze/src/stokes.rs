//! Stokes measurement of the dark plane.
//!
//! After the quarter-wave plate the mean polarization is circular
//! (S3 = S0, S1 = S2 = 0) and the bright field acts as the local
//! oscillator for the orthogonally polarized dark mode. Rotating the
//! half-wave plate by theta rotates the measured Stokes direction by
//! 4 theta in the S1-S2 plane, so the subtracted photocurrent variance is
//!
//!   V(theta) = u^T C u,   u = (cos 4 theta, sin 4 theta),
//!
//! with C the dark-plane covariance. The factor of four (two from the HWP,
//! two from the Stokes-parameter doubling) is stated explicitly to avoid
//! the usual angle ambiguity.

use std::io::Write;

use crate::error::{Error, Result};
use crate::noise::QuadCovariance;

/// Mean Stokes vector plus the dark-plane covariance.
#[derive(Debug, Clone)]
pub struct StokesState {
    mean: [f64; 4],
    dark_cov: QuadCovariance,
}

impl StokesState {
    /// Circularly polarized bright state (S3 = S0) with the given dark-plane
    /// covariance — the configuration produced by the QWP in this setup.
    pub fn circular(s0: f64, dark_cov: QuadCovariance) -> Result<Self> {
        if !(s0 > 0.0) {
            return Err(Error::NonpositiveInput {
                name: "S0",
                value: s0,
            });
        }
        Ok(Self {
            mean: [s0, 0.0, 0.0, s0],
            dark_cov,
        })
    }

    /// (S0, S1, S2, S3) in photon-flux units.
    pub fn mean(&self) -> [f64; 4] {
        self.mean
    }

    pub fn dark_cov(&self) -> &QuadCovariance {
        &self.dark_cov
    }
}

/// Noise variances over a set of HWP angles, with the detection metadata
/// carried along for bookkeeping only.
#[derive(Debug, Clone)]
pub struct NoiseTrace {
    pub angles: Vec<f64>,
    pub variances: Vec<f64>,
    pub metadata: DetectionMetadata,
}

/// Sideband frequency and analyzer bandwidth labels. Informational only;
/// the Gaussian model is frequency flat.
#[derive(Debug, Clone)]
pub struct DetectionMetadata {
    pub detection_frequency_hz: f64,
    pub resolution_bandwidth_hz: f64,
    pub video_bandwidth_hz: f64,
}

impl Default for DetectionMetadata {
    fn default() -> Self {
        // 17 MHz sideband, 300 kHz RBW, 300 Hz VBW
        Self {
            detection_frequency_hz: 17e6,
            resolution_bandwidth_hz: 300e3,
            video_bandwidth_hz: 300.0,
        }
    }
}

impl NoiseTrace {
    /// Serializes as CSV with header `angle_rad,variance_snu`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "angle_rad,variance_snu")?;
        for (angle, variance) in self.angles.iter().zip(&self.variances) {
            writeln!(w, "{angle:.6},{variance:.6}")?;
        }
        Ok(())
    }

    pub fn min_variance(&self) -> f64 {
        self.variances.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_variance(&self) -> f64 {
        self.variances.iter().cloned().fold(0.0, f64::max)
    }
}

/// Shot-noise-normalized variance measured at HWP angle `hwp_angle`.
pub fn stokes_variance(state: &StokesState, hwp_angle: f64) -> f64 {
    state.dark_cov.projected(4.0 * hwp_angle)
}

/// Raw shot-noise reference for a coherent beam: proportional to
/// optical power times detector gain. Serves as the 0 dB denominator.
pub fn calibrate_qnl(reference_power: f64, detector_gain: f64) -> Result<f64> {
    if !(reference_power > 0.0) {
        return Err(Error::NonpositiveInput {
            name: "reference_power",
            value: reference_power,
        });
    }
    if !(detector_gain > 0.0) {
        return Err(Error::NonpositiveInput {
            name: "detector_gain",
            value: detector_gain,
        });
    }
    Ok(reference_power * detector_gain)
}

/// Dark-noise-corrected variance in shot-noise units:
/// (v_raw - v_dark) / (v_qnl_raw - v_dark).
pub fn dark_noise_correct(v_raw: f64, v_dark: f64, v_qnl_raw: f64) -> Result<f64> {
    if v_dark < 0.0 {
        return Err(Error::OutOfRange {
            name: "v_dark",
            value: v_dark,
            range: "[0, inf)",
        });
    }
    if v_qnl_raw <= v_dark {
        return Err(Error::QnlBelowDark);
    }
    if v_raw <= v_dark {
        return Err(Error::SignalBelowDark);
    }
    Ok((v_raw - v_dark) / (v_qnl_raw - v_dark))
}

/// Variance trace over one period of the HWP response,
/// theta uniformly spaced in [0, pi/4).
pub fn sweep_hwp(state: &StokesState, n_angles: usize) -> Result<NoiseTrace> {
    if n_angles < 8 {
        return Err(Error::OutOfRange {
            name: "n_angles",
            value: n_angles as f64,
            range: "[8, inf)",
        });
    }
    let period = std::f64::consts::FRAC_PI_4;
    let angles: Vec<f64> = (0..n_angles)
        .map(|k| period * k as f64 / n_angles as f64)
        .collect();
    let variances = angles
        .iter()
        .map(|&theta| stokes_variance(state, theta))
        .collect();
    Ok(NoiseTrace {
        angles,
        variances,
        metadata: DetectionMetadata::default(),
    })
}
