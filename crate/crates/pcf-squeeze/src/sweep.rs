//! Energy sweeps tying the pipeline together: per pulse energy, propagate
//! both Sagnac arms, bound the interference visibility from their output
//! spectra, build the dark-mode covariance through the Kerr + excess-noise
//! model, apply the loss chain, and report the extremal variances.
//!
//! The classical-field stage (propagation and spectra) is independent of
//! the noise parameters, so a prepared [`SweepPlan`] caches it; varying
//! `kappa_g` afterwards — as the calibration root-find does — costs only
//! 2x2 matrix algebra per row.

use std::io::Write;

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::noise::{
    add_phase_noise, apply_loss, combine_sagnac, extremal_variances, gawbs_noise,
    kerr_covariance, nonlinear_phase, EfficiencyChain,
};
use crate::overlap::{predicted_visibility, spectral_overlap};
use crate::pulse::make_sech_pulse;
use crate::spectrum::spectrum;
use crate::ssfm::propagate;

/// One line of the sweep output.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub energy_pj: f64,
    pub v_max: f64,
    pub visibility: f64,
    pub eta_vis: f64,
    pub r_a: f64,
    pub r_b: f64,
    pub sqz_db: f64,
    pub antisqz_db: f64,
    pub purity: f64,
}

/// Sweep outcome for one energy: a row, or the error that stopped it.
#[derive(Debug, Clone)]
pub enum SweepEntry {
    Row(SweepRow),
    Failed { energy_pj: f64, message: String },
}

/// Classical-field results for one energy, sufficient to finish the row
/// for any noise/efficiency parameters.
#[derive(Debug, Clone, Copy)]
pub struct PropagationSummary {
    pub energy_pj: f64,
    pub v_max: f64,
    pub r_a: f64,
    pub r_b: f64,
    /// Arm energies in joules (E(1 +/- eps/2)).
    pub energy_a_j: f64,
    pub energy_b_j: f64,
}

/// Result of the excess-noise calibration.
#[derive(Debug, Clone, Copy)]
pub struct Calibration {
    pub kappa_g_per_j_m: f64,
    pub best_energy_pj: f64,
    pub best_sqz_db: f64,
}

/// A sweep with its expensive propagation stage done.
pub struct SweepPlan {
    config: ExperimentConfig,
    summaries: Vec<std::result::Result<PropagationSummary, (f64, Error)>>,
}

impl SweepPlan {
    /// Propagates both arms at every configured energy.
    pub fn prepare(config: &ExperimentConfig) -> Result<SweepPlan> {
        config.validate()?;
        let fiber = config.fiber()?;
        let grid = config.grid()?;
        let mut summaries = Vec::with_capacity(config.energies_pj.len());
        for &energy_pj in &config.energies_pj {
            let energy = energy_pj * 1e-12;
            let energy_a = energy * (1.0 + config.epsilon / 2.0);
            let energy_b = energy * (1.0 - config.epsilon / 2.0);
            let outcome = (|| {
                let pulse_a = make_sech_pulse(energy_a, config.fwhm_s, config.center_wavelength_m, grid)?;
                let r_a = nonlinear_phase(&pulse_a, &fiber);
                let out_a = propagate(&pulse_a, &fiber, config.n_steps)?;
                let spec_a = spectrum(&out_a)?;
                // identical arm energies evolve identically; skip the second pass
                let (r_b, spec_b) = if energy_b == energy_a {
                    (r_a, None)
                } else {
                    let pulse_b =
                        make_sech_pulse(energy_b, config.fwhm_s, config.center_wavelength_m, grid)?;
                    let r_b = nonlinear_phase(&pulse_b, &fiber);
                    let out_b = propagate(&pulse_b, &fiber, config.n_steps)?;
                    (r_b, Some(spectrum(&out_b)?))
                };
                let v_max = match &spec_b {
                    Some(spec_b) => spectral_overlap(&spec_a, spec_b)?.v_max,
                    None => spectral_overlap(&spec_a, &spec_a)?.v_max,
                };
                Ok(PropagationSummary {
                    energy_pj,
                    v_max,
                    r_a,
                    r_b,
                    energy_a_j: energy_a,
                    energy_b_j: energy_b,
                })
            })();
            summaries.push(outcome.map_err(|e| (energy_pj, e)));
        }
        Ok(SweepPlan {
            config: config.clone(),
            summaries,
        })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn summaries(
        &self,
    ) -> &[std::result::Result<PropagationSummary, (f64, Error)>] {
        &self.summaries
    }

    /// Completes every row with the configured noise parameters.
    pub fn rows(&self) -> Vec<SweepEntry> {
        self.rows_with_kappa_g(self.config.kappa_g_per_j_m)
    }

    /// Completes every row with an alternate excess-noise strength.
    pub fn rows_with_kappa_g(&self, kappa_g: f64) -> Vec<SweepEntry> {
        self.summaries
            .iter()
            .map(|outcome| match outcome {
                Ok(summary) => match complete_row(&self.config, summary, kappa_g) {
                    Ok(row) => SweepEntry::Row(row),
                    Err(error) => SweepEntry::Failed {
                        energy_pj: summary.energy_pj,
                        message: error.to_string(),
                    },
                },
                Err((energy_pj, error)) => SweepEntry::Failed {
                    energy_pj: *energy_pj,
                    message: error.to_string(),
                },
            })
            .collect()
    }

    /// Root-finds `kappa_g` so the best squeezing across the sweep equals
    /// `target_db`. The excess noise only weakens squeezing, so the best
    /// squeezing is monotone in `kappa_g` and bisection converges.
    pub fn calibrate_kappa_g(&self, target_db: f64) -> Result<Calibration> {
        if self.summaries.iter().any(|s| s.is_err()) {
            return Err(Error::Calibration(
                "cannot calibrate: some sweep rows failed to propagate".into(),
            ));
        }
        let best = |kappa_g: f64| -> Result<(f64, f64)> {
            let mut best_db = f64::INFINITY;
            let mut best_energy = f64::NAN;
            for summary in self.summaries.iter().flatten() {
                let row = complete_row(&self.config, summary, kappa_g)?;
                if row.sqz_db < best_db {
                    best_db = row.sqz_db;
                    best_energy = row.energy_pj;
                }
            }
            Ok((best_db, best_energy))
        };

        let (noiseless, _) = best(0.0)?;
        if noiseless > target_db {
            return Err(Error::Calibration(format!(
                "target {target_db:.2} dB unreachable: best squeezing without excess noise is {noiseless:.2} dB"
            )));
        }
        let mut lo = 0.0f64;
        let mut hi = 1e12f64;
        let mut hi_best = best(hi)?.0;
        for _ in 0..60 {
            if hi_best >= target_db {
                break;
            }
            hi *= 4.0;
            hi_best = best(hi)?.0;
        }
        if hi_best < target_db {
            return Err(Error::Calibration(format!(
                "target {target_db:.2} dB unreachable even at kappa_g = {hi:.3e}"
            )));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if best(mid)?.0 < target_db {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.max(1.0) {
                break;
            }
        }
        let kappa_g = 0.5 * (lo + hi);
        let (best_sqz_db, best_energy_pj) = best(kappa_g)?;
        Ok(Calibration {
            kappa_g_per_j_m: kappa_g,
            best_energy_pj,
            best_sqz_db,
        })
    }
}

/// Finishes one row: visibility bound, efficiency chain, Kerr + excess
/// noise covariances, Sagnac recombination, losses, extremal variances.
fn complete_row(
    config: &ExperimentConfig,
    summary: &PropagationSummary,
    kappa_g: f64,
) -> Result<SweepRow> {
    let fiber = config.fiber()?;
    let visibility = predicted_visibility(summary.v_max, config.kappa_spatial)?;
    let chain = EfficiencyChain::from_visibility(config.eta_prop, config.eta_det, visibility)?;

    let ca = add_phase_noise(
        &kerr_covariance(summary.r_a)?,
        gawbs_noise(summary.energy_a_j, &fiber, kappa_g)?,
    )?;
    let cb = add_phase_noise(
        &kerr_covariance(summary.r_b)?,
        gawbs_noise(summary.energy_b_j, &fiber, kappa_g)?,
    )?;

    let dark = combine_sagnac(&ca, &cb, config.phi_rel_rad)?;
    let lossy = apply_loss(
        &apply_loss(&apply_loss(&dark, chain.eta_vis)?, chain.eta_prop)?,
        chain.eta_det,
    )?;
    let result = extremal_variances(&lossy);

    Ok(SweepRow {
        energy_pj: summary.energy_pj,
        v_max: summary.v_max,
        visibility,
        eta_vis: chain.eta_vis,
        r_a: summary.r_a,
        r_b: summary.r_b,
        sqz_db: result.sqz_db,
        antisqz_db: result.antisqz_db,
        purity: result.purity,
    })
}

/// Runs the whole sweep with the configured parameters.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepEntry>> {
    Ok(SweepPlan::prepare(config)?.rows())
}

/// CSV header for sweep output.
pub const CSV_HEADER: &str = "energy_pJ,v_max,visibility,eta_vis,r_a,r_b,sqz_db,antisqz_db,purity";

/// Writes successful rows as CSV, ordered as produced (by energy).
/// Failed rows are skipped; report them separately.
pub fn write_csv<W: Write>(entries: &[SweepEntry], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for entry in entries {
        if let SweepEntry::Row(row) = entry {
            writeln!(
                w,
                "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                row.energy_pj,
                row.v_max,
                row.visibility,
                row.eta_vis,
                row.r_a,
                row.r_b,
                row.sqz_db,
                row.antisqz_db,
                row.purity
            )?;
        }
    }
    Ok(())
}
