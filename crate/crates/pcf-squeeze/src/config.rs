//! Experiment configuration: `key = value` text files with fail-closed
//! parsing (unknown keys are errors), plus the documented default template.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::pulse::{gamma_from_mode_area, FiberParams};

/// Complete parameter set for a sweep run.
///
/// Defaults follow the hardware of the experiment where published (1 m
/// fiber, 810 nm, 120 fs pulses, 1.8 um mode field diameter, eta_prop =
/// eta_det = 0.95). Dispersion and the excess-noise strength are not
/// published for this fiber; their defaults are calibrated so the default
/// sweep reproduces the measured trends, and both are overridable.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub length_m: f64,
    pub beta2_s2_per_m: f64,
    pub beta3_s3_per_m: f64,
    pub alpha_per_m: f64,
    pub mfd_m: f64,
    pub n2_m2_per_w: f64,
    /// Direct nonlinear-coefficient override; derived from mfd and n2
    /// when absent.
    pub gamma_per_w_m: Option<f64>,
    pub fwhm_s: f64,
    pub center_wavelength_m: f64,
    pub energies_pj: Vec<f64>,
    /// Coupling asymmetry: arm a receives E(1 + eps/2), arm b E(1 - eps/2).
    pub epsilon: f64,
    /// Power-independent spatial-mismatch factor on the visibility.
    pub kappa_spatial: f64,
    /// Excess-phase-noise strength in 1/(J m).
    pub kappa_g_per_j_m: f64,
    pub eta_prop: f64,
    pub eta_det: f64,
    pub phi_rel_rad: f64,
    pub n_samples: usize,
    pub window_s: f64,
    pub n_steps: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            length_m: 1.0,
            beta2_s2_per_m: -4.0e-26,
            beta3_s3_per_m: 0.0,
            alpha_per_m: 0.0,
            mfd_m: 1.8e-6,
            n2_m2_per_w: 2.6e-20,
            gamma_per_w_m: None,
            fwhm_s: 120e-15,
            center_wavelength_m: 810e-9,
            energies_pj: vec![7.3, 14.6, 21.9],
            epsilon: 0.05,
            kappa_spatial: 0.93,
            kappa_g_per_j_m: 1.1e13,
            eta_prop: 0.95,
            eta_det: 0.95,
            phi_rel_rad: 0.0,
            n_samples: 8192,
            window_s: 10e-12,
            n_steps: 1000,
        }
    }
}

impl ExperimentConfig {
    /// Nonlinear coefficient: the explicit override, or derived from the
    /// mode geometry.
    pub fn gamma(&self) -> Result<f64> {
        match self.gamma_per_w_m {
            Some(g) => {
                if g < 0.0 {
                    Err(Error::OutOfRange {
                        name: "gamma_per_w_m",
                        value: g,
                        range: "[0, inf)",
                    })
                } else {
                    Ok(g)
                }
            }
            None => gamma_from_mode_area(self.mfd_m, self.center_wavelength_m, self.n2_m2_per_w),
        }
    }

    pub fn fiber(&self) -> Result<FiberParams> {
        FiberParams::new(
            self.length_m,
            self.beta2_s2_per_m,
            self.beta3_s3_per_m,
            self.gamma()?,
            self.alpha_per_m,
        )
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.n_samples, self.window_s)
    }

    /// Checks the cross-field invariants not covered by the constructors.
    pub fn validate(&self) -> Result<()> {
        self.fiber()?;
        self.grid()?;
        if self.energies_pj.is_empty() {
            return Err(Error::OutOfRange {
                name: "energies_pj",
                value: 0.0,
                range: "nonempty list of positive energies",
            });
        }
        for &e in &self.energies_pj {
            if !(e > 0.0) {
                return Err(Error::OutOfRange {
                    name: "energies_pj",
                    value: e,
                    range: "(0, inf)",
                });
            }
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: self.epsilon,
                range: "[0, 1)",
            });
        }
        for (name, value) in [
            ("kappa_spatial", self.kappa_spatial),
            ("eta_prop", self.eta_prop),
            ("eta_det", self.eta_det),
        ] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    range: "(0, 1]",
                });
            }
        }
        if self.kappa_g_per_j_m < 0.0 {
            return Err(Error::OutOfRange {
                name: "kappa_g_per_j_m",
                value: self.kappa_g_per_j_m,
                range: "[0, inf)",
            });
        }
        if !(self.fwhm_s > 0.0) {
            return Err(Error::NonpositiveInput {
                name: "fwhm_s",
                value: self.fwhm_s,
            });
        }
        if self.window_s < 20.0 * self.fwhm_s {
            return Err(Error::GridTooSmall {
                window_s: self.window_s,
                required_s: 20.0 * self.fwhm_s,
            });
        }
        if self.n_steps < crate::ssfm::MIN_STEPS {
            return Err(Error::StepCount(self.n_steps, crate::ssfm::MIN_STEPS));
        }
        Ok(())
    }

    /// Default configuration rendered as a commented `key = value` template.
    pub fn template() -> String {
        let d = ExperimentConfig::default();
        format!(
            "\
# Sagnac-loop polarization squeezing simulation parameters.
# Lines are `key = value`; '#' starts a comment; unknown keys are errors.

# --- fiber ---
length_m = {length}
# group-velocity dispersion at the carrier (anomalous when negative);
# not published for this fiber, calibrated to reproduce the measured
# overlap trend
beta2_s2_per_m = {beta2:e}
beta3_s3_per_m = {beta3}
alpha_per_m = {alpha}
# effective mode field diameter and nonlinear index; gamma is derived as
# 2 pi n2 / (lambda A_eff) unless gamma_per_w_m is set
mfd_m = {mfd:e}
n2_m2_per_w = {n2:e}
# gamma_per_w_m = 0.0793

# --- pump pulses ---
fwhm_s = {fwhm:e}
center_wavelength_m = {lambda0:e}

# --- sweep ---
energies_pj = {energies}
# coupling asymmetry: arm a gets E(1 + eps/2), arm b gets E(1 - eps/2)
epsilon = {epsilon}

# --- interference and noise ---
# power-independent spatial mismatch multiplying the spectral overlap
kappa_spatial = {kappa_spatial}
# excess phase noise (GAWBS and related) per joule of pulse energy and
# meter of fiber; calibrated so the default sweep squeezes to about -3.9 dB
kappa_g_per_j_m = {kappa_g:e}
eta_prop = {eta_prop}
eta_det = {eta_det}
phi_rel_rad = {phi_rel}

# --- solver ---
n_samples = {n_samples}
window_s = {window:e}
n_steps = {n_steps}
",
            length = d.length_m,
            beta2 = d.beta2_s2_per_m,
            beta3 = d.beta3_s3_per_m,
            alpha = d.alpha_per_m,
            mfd = d.mfd_m,
            n2 = d.n2_m2_per_w,
            fwhm = d.fwhm_s,
            lambda0 = d.center_wavelength_m,
            energies = d
                .energies_pj
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            epsilon = d.epsilon,
            kappa_spatial = d.kappa_spatial,
            kappa_g = d.kappa_g_per_j_m,
            eta_prop = d.eta_prop,
            eta_det = d.eta_det,
            phi_rel = d.phi_rel_rad,
            n_samples = d.n_samples,
            window = d.window_s,
            n_steps = d.n_steps,
        )
    }
}

/// Reads a configuration file; missing keys keep their defaults, unknown
/// keys fail.
pub fn load_config<P: AsRef<Path>>(path: P) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_config(&text, &path.display().to_string())
}

pub(crate) fn parse_config(text: &str, path: &str) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.into(),
            line: line_no,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = |value: &str| -> Result<f64> {
            value.parse().map_err(|_| Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("invalid number `{value}` for key `{key}`"),
            })
        };
        let parse_usize = |value: &str| -> Result<usize> {
            value.parse().map_err(|_| Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("invalid integer `{value}` for key `{key}`"),
            })
        };
        match key {
            "length_m" => config.length_m = parse_f64(value)?,
            "beta2_s2_per_m" => config.beta2_s2_per_m = parse_f64(value)?,
            "beta3_s3_per_m" => config.beta3_s3_per_m = parse_f64(value)?,
            "alpha_per_m" => config.alpha_per_m = parse_f64(value)?,
            "mfd_m" => config.mfd_m = parse_f64(value)?,
            "n2_m2_per_w" => config.n2_m2_per_w = parse_f64(value)?,
            "gamma_per_w_m" => config.gamma_per_w_m = Some(parse_f64(value)?),
            "fwhm_s" => config.fwhm_s = parse_f64(value)?,
            "center_wavelength_m" => config.center_wavelength_m = parse_f64(value)?,
            "energies_pj" => {
                let mut energies = Vec::new();
                for item in value.split(',') {
                    energies.push(parse_f64(item.trim())?);
                }
                config.energies_pj = energies;
            }
            "epsilon" => config.epsilon = parse_f64(value)?,
            "kappa_spatial" => config.kappa_spatial = parse_f64(value)?,
            "kappa_g_per_j_m" => config.kappa_g_per_j_m = parse_f64(value)?,
            "eta_prop" => config.eta_prop = parse_f64(value)?,
            "eta_det" => config.eta_det = parse_f64(value)?,
            "phi_rel_rad" => config.phi_rel_rad = parse_f64(value)?,
            "n_samples" => config.n_samples = parse_usize(value)?,
            "window_s" => config.window_s = parse_f64(value)?,
            "n_steps" => config.n_steps = parse_usize(value)?,
            unknown => {
                return Err(Error::UnknownKey {
                    path: path.into(),
                    line: line_no,
                    key: unknown.into(),
                })
            }
        }
    }
    config.validate()?;
    Ok(config)
}
