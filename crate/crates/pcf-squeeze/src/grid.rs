//! Uniform time grid shared by pulses and their spectra.

use crate::error::{Error, Result};

/// Uniform sampling grid for one pulse window.
///
/// The window is centered on t = 0, so sample `k` sits at
/// `t_k = (k - n/2) * dt`. A power-of-two sample count keeps the FFT fast
/// and the conjugate frequency grid exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    n_samples: usize,
    window: f64,
}

impl TimeGrid {
    /// Grid with `n_samples` points (power of two, >= 256) spanning `window` seconds.
    pub fn new(n_samples: usize, window: f64) -> Result<Self> {
        if n_samples < 256 || !n_samples.is_power_of_two() {
            return Err(Error::BadGrid(n_samples));
        }
        if !(window > 0.0) || !window.is_finite() {
            return Err(Error::NonpositiveInput {
                name: "window",
                value: window,
            });
        }
        Ok(Self { n_samples, window })
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Full time span in seconds.
    pub fn window(&self) -> f64 {
        self.window
    }

    /// Sample spacing in seconds.
    pub fn dt(&self) -> f64 {
        self.window / self.n_samples as f64
    }

    /// Time of sample `k`, centered so t = 0 falls at sample n/2.
    pub fn time_at(&self, k: usize) -> f64 {
        (k as f64 - (self.n_samples / 2) as f64) * self.dt()
    }

    /// Angular-frequency spacing of the conjugate grid, 2*pi / window.
    pub fn domega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.window
    }

    /// Conjugate angular frequencies in FFT (wrapped) order.
    pub fn fft_omega(&self) -> Vec<f64> {
        let n = self.n_samples;
        let dw = self.domega();
        (0..n)
            .map(|k| {
                let k = if k < n / 2 {
                    k as isize
                } else {
                    k as isize - n as isize
                };
                k as f64 * dw
            })
            .collect()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_samples).map(move |k| self.time_at(k))
    }
}
