//! Overlap bound between the two counter-propagating outputs when the
//! incoupling is slightly asymmetric, plus the Gaussian closed-form check.

use pcf_squeeze::config::ExperimentConfig;
use pcf_squeeze::overlap::{predicted_visibility, spectral_overlap};
use pcf_squeeze::pulse::make_sech_pulse;
use pcf_squeeze::spectrum::{spectrum, Spectrum};
use pcf_squeeze::ssfm::propagate;

fn main() -> pcf_squeeze::Result<()> {
    let config = ExperimentConfig::default();
    let fiber = config.fiber()?;
    let grid = config.grid()?;

    println!("counter-propagating arms at 5% power asymmetry:");
    for energy_pj in [7.3, 14.6, 21.9] {
        let energy = energy_pj * 1e-12;
        let mut spectra = Vec::new();
        for arm_energy in [
            energy * (1.0 + config.epsilon / 2.0),
            energy * (1.0 - config.epsilon / 2.0),
        ] {
            let pulse =
                make_sech_pulse(arm_energy, config.fwhm_s, config.center_wavelength_m, grid)?;
            spectra.push(spectrum(&propagate(&pulse, &fiber, config.n_steps)?)?);
        }
        let report = spectral_overlap(&spectra[0], &spectra[1])?;
        let visibility = predicted_visibility(report.v_max, config.kappa_spatial)?;
        println!(
            "  {energy_pj:5.1} pJ: v_max = {:.4}, predicted visibility = {:.4}, eta_vis = {:.4}",
            report.v_max,
            visibility,
            visibility * visibility
        );
    }

    // closed form: equal-width Gaussians offset by 2 sigma overlap at e^(-1/2)
    let sigma = 1.0e12;
    let delta = 2.0 * sigma;
    let n = 4001;
    let omega: Vec<f64> = (0..n)
        .map(|k| -12.0 * sigma + (delta + 24.0 * sigma) * k as f64 / (n - 1) as f64)
        .collect();
    let g = |center: f64| -> Vec<f64> {
        omega
            .iter()
            .map(|w| (-((w - center) / sigma).powi(2) / 2.0).exp())
            .collect()
    };
    let (d1, d2) = (g(0.0), g(delta));
    let s1 = Spectrum::new(omega.clone(), d1)?;
    let s2 = Spectrum::new(omega, d2)?;
    println!(
        "Gaussian pair offset by 2 sigma: v_max = {:.6} (exp(-1/2) = {:.6})",
        spectral_overlap(&s1, &s2)?.v_max,
        (-0.5f64).exp()
    );
    Ok(())
}
