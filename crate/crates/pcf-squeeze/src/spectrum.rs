//! Spectral densities on uniform angular-frequency grids, plus spectrometer
//! file I/O (wavelength/intensity text files with the lambda^2/2 pi c
//! Jacobian applied on load).

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::pulse::PulseEnvelope;

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Allowed relative deviation from uniform grid spacing.
const GRID_TOLERANCE: f64 = 1e-9;

/// Nonnegative spectral density |E(w)|^2 on a strictly increasing uniform
/// angular-frequency grid.
#[derive(Debug, Clone)]
pub struct Spectrum {
    omega: Vec<f64>,
    density: Vec<f64>,
}

impl Spectrum {
    pub fn new(omega: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if omega.is_empty() || omega.len() != density.len() {
            return Err(Error::BadSpectrum(format!(
                "grid length {} vs density length {}",
                omega.len(),
                density.len()
            )));
        }
        if density.iter().any(|d| *d < 0.0 || !d.is_finite()) {
            return Err(Error::BadSpectrum(
                "density must be finite and nonnegative".into(),
            ));
        }
        if !density.iter().any(|d| *d > 0.0) {
            return Err(Error::EmptySpectrum);
        }
        if omega.len() >= 2 {
            let step = (omega[omega.len() - 1] - omega[0]) / (omega.len() - 1) as f64;
            if !(step > 0.0) {
                return Err(Error::BadSpectrum("grid must be strictly increasing".into()));
            }
            for k in 1..omega.len() {
                let local = omega[k] - omega[k - 1];
                if (local - step).abs() > GRID_TOLERANCE * step.abs() {
                    return Err(Error::BadSpectrum(format!(
                        "grid not uniform at index {k}: step {local:.6e} vs {step:.6e}"
                    )));
                }
            }
        }
        Ok(Self { omega, density })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Grid spacing; zero for a single-bin spectrum.
    pub fn domega(&self) -> f64 {
        if self.omega.len() < 2 {
            0.0
        } else {
            (self.omega[self.omega.len() - 1] - self.omega[0]) / (self.omega.len() - 1) as f64
        }
    }

    /// Integrated density by trapezoidal quadrature.
    pub fn energy(&self) -> f64 {
        trapezoid(&self.density, self.domega())
    }

    /// Density-weighted standard deviation of the frequency axis.
    ///
    /// Two-pass: the second moment is taken about the centroid, which keeps
    /// the result accurate when the width is tiny compared to the carrier.
    pub fn rms_width(&self) -> Result<f64> {
        let n = self.len();
        let weight = |k: usize| -> f64 {
            if n > 1 && (k == 0 || k == n - 1) {
                0.5 * self.density[k]
            } else {
                self.density[k]
            }
        };
        let mut w0 = 0.0;
        let mut w1 = 0.0;
        for k in 0..n {
            w0 += weight(k);
            w1 += weight(k) * self.omega[k];
        }
        if w0 <= 0.0 {
            return Err(Error::EmptySpectrum);
        }
        let mean = w1 / w0;
        let mut var = 0.0;
        for k in 0..n {
            let d = self.omega[k] - mean;
            var += weight(k) * d * d;
        }
        Ok((var / w0).max(0.0).sqrt())
    }

    /// Linear interpolation onto `omega`; zero outside the original support.
    pub fn resampled(&self, omega: &[f64]) -> Result<Spectrum> {
        let density = omega
            .iter()
            .map(|&w| self.interpolate(w))
            .collect::<Vec<_>>();
        Spectrum::new(omega.to_vec(), density)
    }

    fn interpolate(&self, w: f64) -> f64 {
        let n = self.omega.len();
        if n == 1 {
            return if w == self.omega[0] { self.density[0] } else { 0.0 };
        }
        if w < self.omega[0] || w > self.omega[n - 1] {
            return 0.0;
        }
        let step = self.domega();
        let idx = ((w - self.omega[0]) / step).floor() as usize;
        let idx = idx.min(n - 2);
        let frac = (w - self.omega[idx]) / step;
        self.density[idx] * (1.0 - frac) + self.density[idx + 1] * frac
    }

    /// Shrinks to the contiguous bin range where density exceeds
    /// `rel_threshold` times the peak. Keeps at least one bin.
    pub fn trimmed(&self, rel_threshold: f64) -> Spectrum {
        let peak = self.density.iter().cloned().fold(0.0, f64::max);
        let cut = peak * rel_threshold;
        let first = self.density.iter().position(|d| *d > cut).unwrap_or(0);
        let last = self
            .density
            .iter()
            .rposition(|d| *d > cut)
            .unwrap_or(self.density.len() - 1);
        Spectrum {
            omega: self.omega[first..=last].to_vec(),
            density: self.density[first..=last].to_vec(),
        }
    }

    /// True when both grids agree pointwise to the grid tolerance.
    pub fn same_grid(&self, other: &Spectrum) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let scale = self.omega[self.len() - 1].abs().max(1.0);
        self.omega
            .iter()
            .zip(other.omega.iter())
            .all(|(a, b)| (a - b).abs() <= GRID_TOLERANCE * scale)
    }
}

pub(crate) fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => step * (values.iter().sum::<f64>() - 0.5 * (values[0] + values[n - 1])),
    }
}

/// Discrete Fourier transform of the pulse, as a spectral density
/// |A~(w)|^2 with A~(w_k) = dt * sum_j A_j e^{-i w_k t_j}, centered on the
/// pulse carrier frequency 2 pi c / lambda0. The density satisfies
/// sum |A~|^2 dw / (2 pi) = pulse energy.
pub fn spectrum(pulse: &PulseEnvelope) -> Result<Spectrum> {
    let grid = pulse.grid();
    let n = grid.n_samples();
    let dt = grid.dt();
    let mut field: Vec<Complex64> = pulse.samples().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut field);

    let omega0 = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / pulse.center_wavelength();
    let dw = grid.domega();
    let half = n / 2;
    let mut omega = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    // unwrap FFT order to an ascending axis: bins n/2.. hold negative offsets
    for k in 0..n {
        let src = (k + half) % n;
        let offset = k as f64 - half as f64;
        omega.push(omega0 + offset * dw);
        density.push((field[src] * dt).norm_sqr());
    }
    Spectrum::new(omega, density)
}

/// A spectrometer file parsed into a spectrum, plus the number of negative
/// intensity rows clamped to zero.
#[derive(Debug)]
pub struct LoadedSpectrum {
    pub spectrum: Spectrum,
    pub clamped_rows: usize,
}

/// Reads a two-column `wavelength_nm intensity` text file ('#' comments),
/// converts to an angular-frequency density with the lambda^2/(2 pi c)
/// Jacobian, and resamples onto a uniform grid by linear interpolation.
pub fn load_spectrometer_file<P: AsRef<Path>>(path: P) -> Result<LoadedSpectrum> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_spectrometer_text(&text, &path.display().to_string())
}

pub(crate) fn parse_spectrometer_text(text: &str, path: &str) -> Result<LoadedSpectrum> {
    let mut rows: Vec<(f64, f64)> = Vec::new();
    let mut clamped = 0usize;
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("expected `wavelength_nm intensity`, found {} fields", fields.len()),
            });
        }
        let lambda_nm: f64 = fields[0].parse().map_err(|_| Error::Parse {
            path: path.into(),
            line: line_no,
            message: format!("invalid wavelength `{}`", fields[0]),
        })?;
        let mut intensity: f64 = fields[1].parse().map_err(|_| Error::Parse {
            path: path.into(),
            line: line_no,
            message: format!("invalid intensity `{}`", fields[1]),
        })?;
        if !(lambda_nm > 0.0) {
            return Err(Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("wavelength must be positive, got {lambda_nm}"),
            });
        }
        if intensity < 0.0 {
            intensity = 0.0;
            clamped += 1;
        }
        if let Some(&(prev, _)) = rows.last() {
            // direction is set by the first two rows; later rows must follow it
            let ok = if rows.len() < 2 {
                lambda_nm != prev
            } else if rows[1].0 > rows[0].0 {
                lambda_nm > prev
            } else {
                lambda_nm < prev
            };
            if !ok {
                return Err(Error::NonMonotoneWavelength {
                    path: path.into(),
                    line: line_no,
                });
            }
        }
        rows.push((lambda_nm, intensity));
        last_line = line_no;
    }
    if rows.len() < 2 {
        return Err(Error::Parse {
            path: path.into(),
            line: last_line,
            message: format!("need at least 2 data rows, found {}", rows.len()),
        });
    }
    if rows[1].0 < rows[0].0 {
        rows.reverse();
    }

    // lambda -> omega flips the axis; densities pick up |dlambda/domega|
    let two_pi_c = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT;
    let mut points: Vec<(f64, f64)> = rows
        .iter()
        .map(|&(lambda_nm, intensity)| {
            let lambda = lambda_nm * 1e-9;
            (two_pi_c / lambda, intensity * lambda * lambda / two_pi_c)
        })
        .collect();
    points.reverse(); // ascending omega

    let n = points.len();
    let lo = points[0].0;
    let hi = points[n - 1].0;
    let mut omega = Vec::with_capacity(n);
    let mut density = Vec::with_capacity(n);
    for k in 0..n {
        let w = lo + (hi - lo) * k as f64 / (n - 1) as f64;
        omega.push(w);
        density.push(interp_sorted(&points, w));
    }
    let spectrum = Spectrum::new(omega, density).map_err(|e| match e {
        Error::EmptySpectrum => Error::EmptySpectrum,
        other => other,
    })?;
    Ok(LoadedSpectrum {
        spectrum,
        clamped_rows: clamped,
    })
}

fn interp_sorted(points: &[(f64, f64)], w: f64) -> f64 {
    let n = points.len();
    if w <= points[0].0 {
        return points[0].1;
    }
    if w >= points[n - 1].0 {
        return points[n - 1].1;
    }
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if points[mid].0 <= w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (w0, d0) = points[lo];
    let (w1, d1) = points[hi];
    let frac = (w - w0) / (w1 - w0);
    d0 * (1.0 - frac) + d1 * frac
}

/// Writes the spectrum in the spectrometer file format (positive-frequency
/// bins only), inverting the load-time Jacobian so that a save/load round
/// trip reproduces the density.
pub fn save_spectrometer_file<P: AsRef<Path>>(spectrum: &Spectrum, path: P) -> Result<()> {
    let two_pi_c = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT;
    let mut rows: Vec<(f64, f64)> = spectrum
        .omega()
        .iter()
        .zip(spectrum.density())
        .filter(|(w, _)| **w > 0.0)
        .map(|(&w, &d)| (1e9 * two_pi_c / w, d * w * w / two_pi_c))
        .collect();
    if rows.is_empty() {
        return Err(Error::BadSpectrum(
            "no positive-frequency bins to write".into(),
        ));
    }
    rows.reverse(); // ascending wavelength
    let mut out = fs::File::create(path)?;
    writeln!(out, "# wavelength_nm intensity")?;
    for (lambda_nm, intensity) in rows {
        writeln!(out, "{lambda_nm:.12e} {intensity:.12e}")?;
    }
    Ok(())
}
