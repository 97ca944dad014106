//! Pulse construction and fiber parameters.
//!
//! Envelopes are sampled in sqrt-watt units so that |A(t)|^2 is an
//! instantaneous power and sum(|A|^2) dt a pulse energy.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;

/// FWHM of sech^2(t/T0) in units of T0: 2 * ln(1 + sqrt(2)) = 1.7627...
pub fn sech_fwhm_factor() -> f64 {
    2.0 * (1.0 + std::f64::consts::SQRT_2).ln()
}

/// Relative edge magnitude above which a pulse is considered to touch the
/// window boundary.
const EDGE_LIMIT: f64 = 1e-6;

/// Minimum window-to-FWHM ratio accepted at pulse construction.
const MIN_WINDOW_FWHM_RATIO: f64 = 20.0;

/// Complex field envelope A(t_k) of one pulse, in sqrt(W).
#[derive(Debug, Clone)]
pub struct PulseEnvelope {
    grid: TimeGrid,
    samples: Vec<Complex64>,
    center_wavelength: f64,
}

impl PulseEnvelope {
    /// Wraps raw samples, enforcing the no-wraparound edge invariant
    /// (|A| < 1e-6 x peak at both window edges) and positive energy.
    pub fn from_samples(
        grid: TimeGrid,
        samples: Vec<Complex64>,
        center_wavelength: f64,
    ) -> Result<Self> {
        if samples.len() != grid.n_samples() {
            return Err(Error::BadPulse(format!(
                "sample count {} does not match grid ({})",
                samples.len(),
                grid.n_samples()
            )));
        }
        if !(center_wavelength > 0.0) {
            return Err(Error::NonpositiveInput {
                name: "center_wavelength",
                value: center_wavelength,
            });
        }
        let pulse = Self {
            grid,
            samples,
            center_wavelength,
        };
        let energy = pulse.energy();
        if !(energy > 0.0) || !energy.is_finite() {
            return Err(Error::NonpositiveEnergy(energy));
        }
        let ratio = pulse.edge_ratio();
        if ratio >= EDGE_LIMIT {
            return Err(Error::Wraparound {
                context: "input envelope",
                edge_ratio: ratio,
            });
        }
        Ok(pulse)
    }

    /// Used by the propagator, which applies its own (looser) edge check.
    pub(crate) fn from_samples_unchecked(
        grid: TimeGrid,
        samples: Vec<Complex64>,
        center_wavelength: f64,
    ) -> Self {
        Self {
            grid,
            samples,
            center_wavelength,
        }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn center_wavelength(&self) -> f64 {
        self.center_wavelength
    }

    /// Pulse energy sum(|A|^2) dt in joules.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dt()
    }

    /// Peak instantaneous power max |A|^2 in watts.
    pub fn peak_power(&self) -> f64 {
        self.samples
            .iter()
            .map(|a| a.norm_sqr())
            .fold(0.0, f64::max)
    }

    /// Larger of the two window-edge magnitudes relative to the peak magnitude.
    pub fn edge_ratio(&self) -> f64 {
        let peak = self.peak_power().sqrt();
        if peak == 0.0 {
            return 0.0;
        }
        let first = self.samples.first().map_or(0.0, |a| a.norm());
        let last = self.samples.last().map_or(0.0, |a| a.norm());
        first.max(last) / peak
    }

    /// Intensity-weighted RMS duration, sqrt(<t^2> - <t>^2).
    pub fn rms_width(&self) -> f64 {
        let mut w0 = 0.0;
        let mut w1 = 0.0;
        let mut w2 = 0.0;
        for (k, a) in self.samples.iter().enumerate() {
            let p = a.norm_sqr();
            let t = self.grid.time_at(k);
            w0 += p;
            w1 += p * t;
            w2 += p * t * t;
        }
        let mean = w1 / w0;
        (w2 / w0 - mean * mean).max(0.0).sqrt()
    }
}

/// Fiber parameters for scalar propagation.
#[derive(Debug, Clone, Copy)]
pub struct FiberParams {
    /// Fiber length in meters.
    pub length: f64,
    /// Group-velocity dispersion beta2 in s^2/m (negative = anomalous).
    pub beta2: f64,
    /// Third-order dispersion beta3 in s^3/m.
    pub beta3: f64,
    /// Nonlinear coefficient gamma in 1/(W m).
    pub gamma: f64,
    /// Power loss rate alpha in 1/m.
    pub alpha: f64,
}

impl FiberParams {
    pub fn new(length: f64, beta2: f64, beta3: f64, gamma: f64, alpha: f64) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::NonpositiveInput {
                name: "fiber length",
                value: length,
            });
        }
        if gamma < 0.0 {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                range: "[0, inf)",
            });
        }
        if alpha < 0.0 {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                range: "[0, inf)",
            });
        }
        Ok(Self {
            length,
            beta2,
            beta3,
            gamma,
            alpha,
        })
    }

    /// Effective interaction length (1 - e^(-alpha L)) / alpha; L when lossless.
    pub fn effective_length(&self) -> f64 {
        if self.alpha == 0.0 {
            self.length
        } else {
            (1.0 - (-self.alpha * self.length).exp()) / self.alpha
        }
    }
}

/// Transform-limited sech pulse A(t) = sqrt(P0) sech(t/T0) with
/// T0 = fwhm / 1.7627 and P0 = energy / (2 T0).
pub fn make_sech_pulse(
    energy: f64,
    fwhm: f64,
    center_wavelength: f64,
    grid: TimeGrid,
) -> Result<PulseEnvelope> {
    if !(energy > 0.0) {
        return Err(Error::NonpositiveEnergy(energy));
    }
    if !(fwhm > 0.0) {
        return Err(Error::NonpositiveInput {
            name: "fwhm",
            value: fwhm,
        });
    }
    let required = MIN_WINDOW_FWHM_RATIO * fwhm;
    if grid.window() < required {
        return Err(Error::GridTooSmall {
            window_s: grid.window(),
            required_s: required,
        });
    }
    let t0 = fwhm / sech_fwhm_factor();
    let p0 = energy / (2.0 * t0);
    let amp = p0.sqrt();
    let samples = grid
        .times()
        .map(|t| Complex64::new(amp / (t / t0).cosh(), 0.0))
        .collect();
    PulseEnvelope::from_samples(grid, samples, center_wavelength)
}

/// Nonlinear coefficient from the mode geometry:
/// gamma = 2 pi n2 / (lambda A_eff), A_eff = pi (mfd/2)^2.
pub fn gamma_from_mode_area(mfd: f64, wavelength: f64, n2: f64) -> Result<f64> {
    for (name, value) in [("mfd", mfd), ("wavelength", wavelength), ("n2", n2)] {
        if !(value > 0.0) {
            return Err(Error::NonpositiveInput { name, value });
        }
    }
    let a_eff = std::f64::consts::PI * (mfd / 2.0) * (mfd / 2.0);
    Ok(2.0 * std::f64::consts::PI * n2 / (wavelength * a_eff))
}
